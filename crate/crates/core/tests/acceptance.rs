//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines appear in plain `cargo test` output.

mod common;

use std::time::{Duration, Instant};

use fodef::automata::{intersect_nonempty, intersection_size, LanguageSize};
use fodef::definability::{classify, oracle_classify, CircuitLabel, ClassificationReport, Logic, Witness};
use fodef::hardness::{build_cycle_gadget, build_instance, verify_gadget_lemmas, GadgetVariant, TuringMachine};
use fodef::monoid::DEFAULT_CAP;
use fodef::two_nfa::{behavior_of_word, compose, determinize, BehaviorQuad};
use fodef::{Dfa, TwoNfa, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOY_TM: &str = "\
states: q0 qacc
tape: b 0 1
blank: b
initial: q0
accept: qacc
rule: q0 1 -> qacc b S
rule: q0 0 -> q0 0 S
";

/// The accepting computation on input `1` with three cells, written out by
/// hand: the initial configuration, one step, then the end marker.
const TOY_RUN: &str = "♯ (q0,1) b b ♯ (qacc,b) b b ♭";

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lowest(r: &ClassificationReport) -> String {
    r.lowest_logic().map_or("none".to_owned(), |l| l.to_string())
}

fn gadget_trichotomy(reports: &mut Vec<ClassificationReport>) -> Check {
    let mut summary = Vec::new();
    for variant in GadgetVariant::ALL {
        let d = build_cycle_gadget(7, variant).map_err(|e| e.to_string())?;
        let r = classify(&d, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let ok = match variant {
            GadgetVariant::Lt => !r.definable(Logic::FoLt) && r.definable(Logic::FoLtEq),
            GadgetVariant::Eq => !r.definable(Logic::FoLtEq) && r.definable(Logic::FoLtMod),
            GadgetVariant::Mod => !r.definable(Logic::FoLtMod) && r.circuit_label() == CircuitLabel::Nc1Hard,
        };
        ensure(ok, || format!("B_{variant}: lowest logic {}", lowest(&r)))?;
        summary.push(format!("B_{variant}: {}", r.circuit_label()));
        reports.push(r);
    }
    Ok(summary.join(", "))
}

fn mod_gadget_group(_: &mut Vec<ClassificationReport>) -> Check {
    let report = verify_gadget_lemmas(7).map_err(|e| e.to_string())?;
    // independent enumeration of the same closure
    let d = build_cycle_gadget(7, GadgetVariant::Mod).map_err(|e| e.to_string())?;
    let by_hand = common::brute_monoid(&d).len();
    ensure(by_hand == 168, || format!("reference closure has {by_hand} elements"))?;
    ensure(d.state_count() == 8, || format!("gadget has {} states", d.state_count()))?;
    ensure(report.closure_order == 168, || format!("closure order {}", report.closure_order))?;
    ensure(report.generator_orders == (2, 7, 3), || format!("orders {:?}", report.generator_orders))?;
    ensure(!report.derived_series_solvable, || "derived series reports solvable".into())?;
    ensure(report.kaplan_levy.is_some(), || "no Kaplan-Levy triple".into())?;
    ensure(report.passed(), || report.failures.join("; "))?;
    Ok(format!(
        "|G| = 168, orders (2, 7, 3), unsolvable; {} pairs, {} proper pair subgroups all solvable",
        report.pairs_checked, report.proper_pair_subgroups
    ))
}

fn replay(r: &ClassificationReport, minimal: &Dfa) -> Result<(), String> {
    for l in Logic::ALL {
        let v = r.verdict(l);
        match (&v.witness, v.definable) {
            (Some(w), false) => w.validate(minimal).map_err(|e| format!("{l} witness: {e}"))?,
            (None, true) => {}
            _ => return Err(format!("{l}: verdict and witness disagree")),
        }
    }
    Ok(())
}

fn two_path_equivalence(reports: &mut Vec<ClassificationReport>) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut witnesses = 0;
    let mut counts = [0usize; 3];
    for i in 0..500 {
        let d = common::random_dfa(&mut rng, 6, 3);
        let r = classify(&d, DEFAULT_CAP).map_err(|e| format!("DFA {i}: {e}"))?;
        let o = oracle_classify(&d, DEFAULT_CAP).map_err(|e| format!("DFA {i}: {e}"))?;
        ensure(r.agrees_with(&o), || format!("DFA {i}: criteria\n{r}\noracle\n{o}"))?;
        let reference = common::brute_verdicts(&d);
        let verdicts = Logic::ALL.map(|l| r.definable(l));
        ensure(verdicts == reference, || format!("DFA {i}: criteria {verdicts:?}, reference {reference:?}"))?;
        let minimal = d.minimize();
        replay(&r, &minimal).map_err(|e| format!("DFA {i}: {e}"))?;
        witnesses += r.verdicts.iter().filter(|v| v.witness.is_some()).count();
        for (l, c) in Logic::ALL.into_iter().zip(&mut counts) {
            *c += usize::from(!r.definable(l));
        }
        reports.push(r);
        reports.push(o);
    }
    Ok(format!(
        "500/500 agree with the oracle and the reference code; undefinable in FO(<) {}, FO(<,≡) {}, FO(<,MOD) {}; {witnesses} witnesses replayed",
        counts[0], counts[1], counts[2]
    ))
}

fn two_nfa_corpus() -> Vec<TwoNfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    (0..200).map(|_| common::random_two_nfa(&mut rng, 4, 2, 2)).collect()
}

fn determinization(_: &mut Vec<ClassificationReport>) -> Check {
    let words = common::all_words(2, 8);
    let mut accepted = 0;
    for (i, a) in two_nfa_corpus().iter().enumerate() {
        let d = determinize(a, DEFAULT_CAP).map_err(|e| format!("2NFA {i}: {e}"))?;
        for w in &words {
            let two_way = a.run(w).map_err(|e| e.to_string())?;
            let one_way = d.run(w).map_err(|e| e.to_string())?;
            let reference = common::simulate_two_nfa(a, w);
            ensure(two_way == one_way && two_way == reference, || {
                format!("2NFA {i} on {w:?}: run {two_way}, determinized {one_way}, reference {reference}")
            })?;
            accepted += usize::from(two_way);
        }
    }
    Ok(format!("200 automata x {} words agree ({accepted} accepted)", words.len()))
}

/// `b(w)` straight from the definition: search over positions `-1..=|w|`
/// with both borders absorbing.
fn direct_behavior(a: &TwoNfa, w: &Word) -> [Vec<(usize, usize)>; 4] {
    let len = w.len() as isize;
    let n = a.state_count();
    let exits = |q: usize, start: isize, target: isize| -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(q, start)];
        let mut out = Vec::new();
        while let Some((p, i)) = stack.pop() {
            if !seen.insert((p, i)) {
                continue;
            }
            if i == target {
                out.push(p);
            }
            if i < 0 || i == len {
                continue;
            }
            for &(t, d) in a.moves(p, w.0[i as usize]) {
                stack.push((t, i + d.offset()));
            }
        }
        out
    };
    let rel = |start: isize, target: isize| -> Vec<(usize, usize)> {
        let mut r: Vec<(usize, usize)> =
            (0..n).flat_map(|q| exits(q, start, target).into_iter().map(move |t| (q, t))).collect();
        r.sort_unstable();
        r
    };
    [rel(0, len), rel(len - 1, -1), rel(len - 1, len), rel(0, -1)]
}

fn pairs(b: &BehaviorQuad) -> [Vec<(usize, usize)>; 4] {
    [&b.lr, &b.rl, &b.rr, &b.ll].map(|r| r.pairs().collect())
}

fn behavior_homomorphism(_: &mut Vec<ClassificationReport>) -> Check {
    let short = common::all_words(2, 4);
    let mut checked = 0;
    for (i, a) in two_nfa_corpus().iter().enumerate() {
        let quads: Vec<BehaviorQuad> =
            short.iter().map(|w| behavior_of_word(a, w)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for (u, bu) in short.iter().zip(&quads) {
            for (v, bv) in short.iter().zip(&quads) {
                let product = compose(bu, bv);
                let uv = u.concat(v);
                if uv.is_empty() {
                    ensure(product.is_empty_word(), || "b(ε)·b(ε) is not neutral".into())?;
                    continue;
                }
                let expected = direct_behavior(a, &uv);
                ensure(pairs(&product) == expected, || format!("2NFA {i}: u = {u:?}, v = {v:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} products match the direct behaviour"))
}

fn cho_huynh(reports: &mut Vec<ClassificationReport>) -> Check {
    let tm = TuringMachine::parse(TOY_TM).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for (input, accepts) in [("1", true), ("0", false)] {
        let x = tm.parse_input(input).map_err(|e| e.to_string())?;
        let inst = build_instance(&tm, &x, 3).map_err(|e| e.to_string())?;
        ensure(inst.params.p == 7, || format!("p = {}", inst.params.p))?;
        let size = intersection_size(&inst.checkers).map_err(|e| e.to_string())?;
        let first = intersect_nonempty(&inst.checkers).map_err(|e| e.to_string())?;
        if accepts {
            let expected = inst.sigma.parse_word(TOY_RUN).map_err(|e| e.to_string())?;
            ensure(size == LanguageSize::Finite(1), || format!("intersection size {size:?}"))?;
            ensure(first.as_ref() == Some(&expected), || {
                format!("intersection word {:?}", first.as_ref().map(|w| inst.sigma.render(w)))
            })?;
        } else {
            ensure(size == LanguageSize::Finite(0) && first.is_none(), || format!("intersection size {size:?}"))?;
        }
        for (variant, logic) in
            [(GadgetVariant::Lt, Logic::FoLt), (GadgetVariant::Eq, Logic::FoLtEq), (GadgetVariant::Mod, Logic::FoLtMod)]
        {
            let r = classify(inst.composite(variant), DEFAULT_CAP).map_err(|e| e.to_string())?;
            ensure(r.definable(logic) != accepts, || {
                format!("input {input}: A_{variant} in {logic}: {}", r.definable(logic))
            })?;
            reports.push(r);
        }
        lines.push(format!("input {input}: {size:?}"));
    }
    Ok(format!("{}; composites undefinable exactly when accepting", lines.join(", ")))
}

fn checker_properties(reports: &mut Vec<ClassificationReport>) -> Check {
    let tm = TuringMachine::parse(TOY_TM).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for input in ["1", "0", "01"] {
        let x = tm.parse_input(input).map_err(|e| e.to_string())?;
        let inst = build_instance(&tm, &x, 3).map_err(|e| e.to_string())?;
        for (i, a) in inst.checkers.iter().enumerate() {
            let m = a.minimize().state_count();
            ensure(m == a.state_count(), || {
                format!("A_{i} for input {input}: {} states, minimal {m}", a.state_count())
            })?;
            let r = classify(a, DEFAULT_CAP).map_err(|e| e.to_string())?;
            ensure(r.definable(Logic::FoLt), || format!("A_{i} for input {input} is not FO(<)-definable"))?;
            reports.push(r);
        }
        if input == "1" {
            sizes = inst.checkers.iter().map(Dfa::state_count).collect();
        }
    }
    Ok(format!("checker sizes {sizes:?}, all minimal and FO(<)-definable"))
}

fn monotonicity(reports: &[ClassificationReport]) -> Check {
    let bad = reports.iter().filter(|r| !r.is_monotone()).count();
    ensure(bad == 0, || format!("{bad} of {} reports violate the chain", reports.len()))?;
    let with_witness =
        reports.iter().flat_map(|r| r.verdicts.iter()).filter(|v| matches!(v.witness, Some(Witness::III(_)))).count();
    Ok(format!("{} reports monotone ({with_witness} carry an FO(<,MOD) witness)", reports.len()))
}

type Criterion = (&'static str, Duration, fn(&mut Vec<ClassificationReport>) -> Check);

fn main() {
    let criteria: [Criterion; 7] = [
        ("gadget trichotomy", Duration::from_secs(5), gadget_trichotomy),
        ("MOD gadget group for p = 7", Duration::from_secs(30), mod_gadget_group),
        ("criteria vs oracle on 500 random DFAs", Duration::from_secs(120), two_path_equivalence),
        ("2NFA determinization on 200 random 2NFAs", Duration::from_secs(120), determinization),
        ("behaviour homomorphism", Duration::from_secs(120), behavior_homomorphism),
        ("Turing machine reduction end to end", Duration::from_secs(120), cho_huynh),
        ("checkers minimal and FO(<)-definable", Duration::from_secs(120), checker_properties),
    ];
    let mut reports = Vec::new();
    let mut failed = 0;
    let mut report_line = |n: usize, name: &str, limit: Option<Duration>, start: Instant, outcome: Check| {
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|s| match limit {
            Some(l) if elapsed > l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
            _ => Ok(s),
        });
        match outcome {
            Ok(detail) => println!("criterion {n} PASS {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} FAIL {name} ({elapsed:.2?}): {detail}");
            }
        }
    };
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut reports);
        report_line(i + 1, name, Some(limit), start, outcome);
    }
    let start = Instant::now();
    let outcome = monotonicity(&reports);
    report_line(8, "chain monotonicity on every report", None, start, outcome);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
