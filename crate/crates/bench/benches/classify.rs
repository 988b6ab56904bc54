use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fodef::definability::{classify, classify_by_orbits, oracle_classify};
use fodef::hardness::{build_cycle_gadget, build_instance, GadgetVariant, TuringMachine};
use fodef::monoid::{generate_transition_monoid, DEFAULT_CAP};
use fodef_bench::{random_dfas, TOY_TM};

fn random_corpus(c: &mut Criterion) {
    let corpus = random_dfas(50, 6, 3, 7);
    let mut group = c.benchmark_group("random_6x3");
    group.bench_function("criteria", |b| {
        b.iter(|| {
            corpus.iter().map(|d| classify(d, DEFAULT_CAP).unwrap().lowest_logic()).filter(Option::is_some).count()
        })
    });
    group.bench_function("oracle", |b| {
        b.iter(|| {
            corpus
                .iter()
                .map(|d| oracle_classify(d, DEFAULT_CAP).unwrap().lowest_logic())
                .filter(Option::is_some)
                .count()
        })
    });
    group.bench_function("orbit", |b| {
        b.iter(|| {
            corpus
                .iter()
                .map(|d| classify_by_orbits(d, DEFAULT_CAP).unwrap().lowest_logic())
                .filter(Option::is_some)
                .count()
        })
    });
    group.finish();
}

fn gadgets(c: &mut Criterion) {
    let mut group = c.benchmark_group("mod_gadget");
    for p in [7, 13, 17] {
        let d = build_cycle_gadget(p, GadgetVariant::Mod).unwrap();
        group.bench_with_input(BenchmarkId::new("monoid", p), &d, |b, d| {
            b.iter(|| generate_transition_monoid(black_box(d), DEFAULT_CAP).unwrap().len())
        });
        group.bench_with_input(BenchmarkId::new("classify", p), &d, |b, d| {
            b.iter(|| classify(black_box(d), DEFAULT_CAP).unwrap())
        });
    }
    group.finish();
}

fn composites(c: &mut Criterion) {
    let tm = TuringMachine::parse(TOY_TM).unwrap();
    let mut group = c.benchmark_group("toy_reduction_orbit");
    group.sample_size(10);
    for input in ["1", "0"] {
        let x = tm.parse_input(input).unwrap();
        let inst = build_instance(&tm, &x, 3).unwrap();
        group.bench_with_input(BenchmarkId::new("A_mod", input), &inst.modp, |b, d| {
            b.iter(|| classify_by_orbits(black_box(d), DEFAULT_CAP).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, random_corpus, gadgets, composites);
criterion_main!(benches);
