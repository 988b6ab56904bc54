//! Instances of the reduction from space-bounded acceptance to
//! definability: checker automata for the runs of a machine, the three
//! cycle gadgets, and the composites obtained by substitution.

mod checkers;
mod gadgets;
mod machine;
mod verify;

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};

pub use gadgets::{build_cycle_gadget, find_prime, is_gadget_prime, substitute, GadgetVariant};
pub use machine::{Cell, Move, Rule, TuringMachine, A1, A2, FLAT, NATURAL, SHARP};
pub use verify::{verify_gadget_lemmas, GadgetReport};

/// Space bound `n` and the gadget prime derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HardnessParams {
    pub n: usize,
    pub p: usize,
}

impl HardnessParams {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Machine("space bound must be positive".into()));
        }
        Ok(HardnessParams { n, p: find_prime(n) })
    }
}

/// `A_0 … A_p`: `A_0` checks the first and last configurations, `A_i` for
/// `1 ≤ i ≤ n` checks cell `i` of every step, and the rest accept the words
/// ending in their only `♭`. All are minimal and total over `Σ`.
pub fn build_checker_dfas(tm: &TuringMachine, input: &[usize], params: HardnessParams) -> Result<Vec<Dfa>> {
    let HardnessParams { n, p } = params;
    let sigma = tm.sigma()?;
    let mut out = Vec::with_capacity(p + 1);
    out.push(checkers::boundary_checker(tm, input, n)?);
    for i in 1..=n {
        out.push(checkers::cell_checker(tm, i, n)?);
    }
    let tail = checkers::single_flat_checker(&sigma, tm.flat())?;
    out.resize(p + 1, tail);
    Ok(out)
}

/// Everything generated for one machine, input and space bound.
#[derive(Debug, Clone)]
pub struct HardnessInstance {
    pub params: HardnessParams,
    pub sigma: Alphabet,
    pub checkers: Vec<Dfa>,
    pub lt: Dfa,
    pub eq: Dfa,
    pub modp: Dfa,
}

impl HardnessInstance {
    pub fn composite(&self, variant: GadgetVariant) -> &Dfa {
        match variant {
            GadgetVariant::Lt => &self.lt,
            GadgetVariant::Eq => &self.eq,
            GadgetVariant::Mod => &self.modp,
        }
    }
}

pub fn build_instance(tm: &TuringMachine, input: &[usize], n: usize) -> Result<HardnessInstance> {
    let params = HardnessParams::new(n)?;
    let checkers = build_checker_dfas(tm, input, params)?;
    let p = params.p;
    let lt = substitute(&build_cycle_gadget(p, GadgetVariant::Lt)?, &checkers[..p])?;
    let eq = substitute(&build_cycle_gadget(p, GadgetVariant::Eq)?, &checkers[..p])?;
    let modp = substitute(&build_cycle_gadget(p, GadgetVariant::Mod)?, &checkers)?;
    Ok(HardnessInstance { params, sigma: tm.sigma()?, checkers, lt, eq, modp })
}
