use fodef::automata::{intersect_nonempty, intersection_size, LanguageSize};
use fodef::definability::{classify, Logic};
use fodef::hardness::{
    build_checker_dfas, build_cycle_gadget, find_prime, substitute, GadgetVariant, HardnessParams, TuringMachine,
};
use fodef::monoid::DEFAULT_CAP;
use fodef::Error;

/// Marks cell 1, erases the rest of the input moving right, walks back to
/// the mark and accepts on it. Inputs must start with `1`; an input filling
/// every cell pushes the head off the tape.
const ERASER: &str = "\
states: q0 q1 q2 qacc
tape: b 0 1 e
blank: b
initial: q0
accept: qacc
rule: q0 1 -> q1 e R
rule: q1 0 -> q1 b R
rule: q1 1 -> q1 b R
rule: q1 b -> q2 b L
rule: q2 b -> q2 b L
rule: q2 e -> qacc b S
";

fn eraser() -> TuringMachine {
    TuringMachine::parse(ERASER).unwrap()
}

#[test]
fn intersection_is_the_accepting_run() {
    let tm = eraser();
    let n = 4;
    let params = HardnessParams::new(n).unwrap();
    assert_eq!(params.p, 7);
    let mut accepted = 0;
    for input in ["1", "10", "101", "111", "0", "01", "1111"] {
        let x = tm.parse_input(input).unwrap();
        let checkers = build_checker_dfas(&tm, &x, params).unwrap();
        assert_eq!(checkers.len(), params.p + 1);
        let run = tm.accepting_run(&x, n, 100).unwrap();
        let size = intersection_size(&checkers).unwrap();
        let found = intersect_nonempty(&checkers).unwrap();
        match &run {
            Some(w) => {
                accepted += 1;
                assert_eq!(size, LanguageSize::Finite(1), "input {input}");
                assert_eq!(found.as_ref(), Some(w), "input {input}");
            }
            None => {
                assert_eq!(size, LanguageSize::Finite(0), "input {input}");
                assert_eq!(found, None);
            }
        }
    }
    assert_eq!(accepted, 4);
}

#[test]
fn accepting_run_by_hand() {
    let tm = eraser();
    let x = tm.parse_input("10").unwrap();
    let run = tm.accepting_run(&x, 3, 100).unwrap().unwrap();
    let sigma = tm.sigma().unwrap();
    let expected = "♯ (q0,1) 0 b ♯ e (q1,0) b ♯ e b (q1,b) ♯ e (q2,b) b ♯ (q2,e) b b ♯ (qacc,b) b b ♭";
    assert_eq!(run, sigma.parse_word(expected).unwrap());
}

#[test]
fn checkers_are_minimal_and_star_free() {
    let tm = eraser();
    for (input, n) in [("1", 3), ("101", 4), ("0", 5)] {
        let x = tm.parse_input(input).unwrap();
        let params = HardnessParams::new(n).unwrap();
        for (i, a) in build_checker_dfas(&tm, &x, params).unwrap().iter().enumerate() {
            assert!(a.is_minimal(), "A_{i} for {input}, n = {n}");
            let r = classify(a, DEFAULT_CAP).unwrap();
            assert!(r.definable(Logic::FoLt), "A_{i} for {input}, n = {n}");
        }
    }
}

#[test]
fn trailing_checkers_want_one_flat_at_the_end() {
    let tm = eraser();
    let x = tm.parse_input("1").unwrap();
    let params = HardnessParams::new(3).unwrap();
    let checkers = build_checker_dfas(&tm, &x, params).unwrap();
    let sigma = tm.sigma().unwrap();
    let word = |s: &str| sigma.parse_word(s).unwrap();
    for a in &checkers[params.n + 1..] {
        assert!(a.run(&word("♭")).unwrap());
        assert!(a.run(&word("♯ 0 ♭")).unwrap());
        assert!(!a.run(&word("♭ ♭")).unwrap());
        assert!(!a.run(&word("♭ ♯")).unwrap());
        assert!(!a.run(&word("ε")).unwrap());
    }
}

#[test]
fn substitution_checks_the_checker_count() {
    let tm = eraser();
    let x = tm.parse_input("1").unwrap();
    let params = HardnessParams::new(3).unwrap();
    let checkers = build_checker_dfas(&tm, &x, params).unwrap();
    let gadget = build_cycle_gadget(params.p, GadgetVariant::Lt).unwrap();
    assert!(substitute(&gadget, &checkers[..params.p]).is_ok());
    assert!(matches!(substitute(&gadget, &checkers), Err(Error::IndexMismatch { edges: 7, checkers: 8 })));
}

#[test]
fn prime_search() {
    assert_eq!([1, 3, 4, 5, 6, 10, 15, 20].map(find_prime), [7, 7, 7, 7, 13, 13, 17, 23]);
    for v in GadgetVariant::ALL {
        assert_eq!(build_cycle_gadget(11, v), Err(Error::InvalidPrime(11)));
        assert_eq!(build_cycle_gadget(6, v), Err(Error::InvalidPrime(6)));
    }
}

#[test]
fn machine_format_errors() {
    let missing = ERASER.replace("blank: b\n", "");
    assert!(matches!(TuringMachine::parse(&missing), Err(Error::Machine(_))));
    let bad_move = ERASER.replace("q2 e -> qacc b S", "q2 e -> qacc b X");
    assert!(matches!(TuringMachine::parse(&bad_move), Err(Error::Syntax { line: 11, .. })));
    let duplicate = format!("{ERASER}rule: q0 1 -> q1 b R\n");
    assert!(matches!(TuringMachine::parse(&duplicate), Err(Error::Machine(_))));
    let accept_rule = format!("{ERASER}rule: qacc b -> q0 b S\n");
    assert!(matches!(TuringMachine::parse(&accept_rule), Err(Error::Machine(_))));
}
