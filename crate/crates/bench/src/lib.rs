//! Inputs shared by the benchmarks under `benches/`.

use fodef::{Alphabet, Dfa, Dir, TwoNfa};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LETTERS: [&str; 3] = ["a", "b", "c"];

/// `count` DFAs with exactly `states` states over `letters` letters, from a
/// fixed seed.
pub fn random_dfas(count: usize, states: usize, letters: usize, seed: u64) -> Vec<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::new(LETTERS[..letters].iter().copied()).unwrap();
    (0..count)
        .map(|_| {
            let delta = (0..states).map(|_| (0..letters).map(|_| rng.random_range(0..states)).collect()).collect();
            let finals: Vec<usize> = (0..states).filter(|_| rng.random_bool(0.5)).collect();
            Dfa::new(alphabet.clone(), delta, 0, finals).unwrap()
        })
        .collect()
}

pub fn random_two_nfas(count: usize, states: usize, seed: u64) -> Vec<TwoNfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    (0..count)
        .map(|_| {
            let mut edges = Vec::new();
            for q in 0..states {
                for c in 0..2 {
                    for _ in 0..rng.random_range(0..=2) {
                        let d = [Dir::Left, Dir::Stay, Dir::Right][rng.random_range(0..3)];
                        edges.push((q, c, rng.random_range(0..states), d));
                    }
                }
            }
            let finals: Vec<usize> = (0..states).filter(|_| rng.random_bool(0.5)).collect();
            TwoNfa::new(alphabet.clone(), states, edges, [0], finals).unwrap()
        })
        .collect()
}

pub const TOY_TM: &str = "\
states: q0 qacc
tape: b 0 1
blank: b
initial: q0
accept: qacc
rule: q0 1 -> qacc b S
rule: q0 0 -> q0 0 S
";
