//! Definability of regular languages in FO(<) ⊂ FO(<,≡) ⊂ FO(<,MOD).
//!
//! Two independent routes produce the same three verdicts: witness searches
//! over the syntactic monoid ([`classify`]), and the algebraic tests
//! (aperiodic, quasi-aperiodic, solvable groups) in [`oracle_classify`].

mod criteria;
mod orbits;
mod witness;

use std::fmt;

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::monoid::{
    all_monoid_groups_solvable, image_orbit, is_aperiodic, schutzenberger_groups, set_contains_nontrivial_group,
};

pub use criteria::{search_fo_lt, search_fo_lt_eq, search_fo_lt_mod, Syntactic};
pub use witness::{Witness, WitnessI, WitnessII, WitnessIII};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Logic {
    FoLt,
    FoLtEq,
    FoLtMod,
}

impl Logic {
    pub const ALL: [Logic; 3] = [Logic::FoLt, Logic::FoLtEq, Logic::FoLtMod];

    /// Key used in machine-readable reports.
    pub fn key(self) -> &'static str {
        match self {
            Logic::FoLt => "fo_lt",
            Logic::FoLtEq => "fo_lt_eq",
            Logic::FoLtMod => "fo_lt_mod",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::FoLt => "FO(<)",
            Logic::FoLtEq => "FO(<,≡)",
            Logic::FoLtMod => "FO(<,MOD)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitLabel {
    Ac0,
    Acc0,
    Nc1Hard,
}

impl fmt::Display for CircuitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircuitLabel::Ac0 => "in AC0",
            CircuitLabel::Acc0 => "in ACC0",
            CircuitLabel::Nc1Hard => "NC1-hard",
        })
    }
}

/// Caveat attached to every report.
pub const NC1_NOTE: &str = "NC1-hard languages lie outside ACC0 only under the assumption ACC0 ≠ NC1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Localized criteria, with witnesses.
    Criteria,
    /// Aperiodicity, quasi-aperiodicity and group solvability.
    Oracle,
    /// The same criteria run on the groups of the image orbit; used when the
    /// monoid exceeds the element cap.
    Orbit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub definable: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidStats {
    /// `None` when the monoid was not listed.
    pub size: Option<usize>,
    pub aperiodic: bool,
    pub quasi_aperiodic: bool,
    pub groups_solvable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub method: Method,
    pub alphabet: Alphabet,
    /// States of the minimal DFA; witness states refer to it.
    pub state_count: usize,
    pub stats: MonoidStats,
    pub verdicts: [Verdict; 3],
}

impl ClassificationReport {
    pub fn verdict(&self, logic: Logic) -> &Verdict {
        &self.verdicts[logic as usize]
    }

    pub fn definable(&self, logic: Logic) -> bool {
        self.verdict(logic).definable
    }

    /// The weakest logic of the chain defining the language; `None` means
    /// only beyond FO(<,MOD).
    pub fn lowest_logic(&self) -> Option<Logic> {
        Logic::ALL.into_iter().find(|&l| self.definable(l))
    }

    pub fn circuit_label(&self) -> CircuitLabel {
        if self.definable(Logic::FoLtEq) {
            CircuitLabel::Ac0
        } else if self.definable(Logic::FoLtMod) {
            CircuitLabel::Acc0
        } else {
            CircuitLabel::Nc1Hard
        }
    }

    /// Definability in a logic implies definability in every larger one.
    pub fn is_monotone(&self) -> bool {
        Logic::ALL.windows(2).all(|w| !self.definable(w[0]) || self.definable(w[1]))
    }

    /// Same verdicts, ignoring witnesses and method.
    pub fn agrees_with(&self, other: &ClassificationReport) -> bool {
        Logic::ALL.into_iter().all(|l| self.definable(l) == other.definable(l))
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "minimal DFA states: {}", self.state_count)?;
        match self.stats.size {
            Some(n) => writeln!(f, "syntactic monoid size: {n}")?,
            None => writeln!(f, "syntactic monoid size: over the cap (image orbit used)")?,
        }
        for l in Logic::ALL {
            let v = self.verdict(l);
            write!(f, "{l}: definable: {}", if v.definable { "yes" } else { "no" })?;
            if let Some(w) = &v.witness {
                write!(f, "; witness {}", w.display(&self.alphabet))?;
            }
            writeln!(f)?;
        }
        match self.lowest_logic() {
            Some(l) => writeln!(f, "lowest logic: {l}")?,
            None => writeln!(f, "lowest logic: none in the chain")?,
        }
        writeln!(f, "circuit: {}", self.circuit_label())?;
        write!(f, "note: {NC1_NOTE}")
    }
}

fn undefinable(w: Witness) -> Verdict {
    Verdict { definable: false, witness: Some(w) }
}

const DEFINABLE: Verdict = Verdict { definable: true, witness: None };

/// Verdicts from the three witness searches. Every witness is replayed on
/// the minimal DFA before it is returned. Falls back to
/// [`classify_by_orbits`] when the monoid has more than `cap` elements.
pub fn classify(a: &Dfa, cap: usize) -> Result<ClassificationReport> {
    match Syntactic::new(a, cap) {
        Ok(ctx) => classify_syntactic(&ctx),
        Err(Error::SizeLimit { .. }) => classify_by_orbits(a, cap),
        Err(e) => Err(e),
    }
}

/// The witness searches run on the groups carried by the image orbit of the
/// minimal DFA; the monoid is never listed. `cap` bounds the orbit and each
/// group closure.
pub fn classify_by_orbits(a: &Dfa, cap: usize) -> Result<ClassificationReport> {
    let minimal = a.minimize();
    let orbit = image_orbit(&minimal, cap)?;
    let groups = schutzenberger_groups(&minimal, &orbit);
    let check = |w: Witness| -> Result<Verdict> {
        w.validate(&minimal).map_err(|e| Error::Internal(format!("{} witness failed replay: {e}", w.logic())))?;
        Ok(undefinable(w))
    };
    let v1 = match orbits::orbit_fo_lt(&groups) {
        Some(w) => check(Witness::I(w))?,
        None => return Ok(report(Method::Orbit, &minimal, None, [DEFINABLE; 3])),
    };
    let v2 = match orbits::orbit_fo_lt_eq(&groups, cap)? {
        Some(w) => check(Witness::II(w))?,
        None => DEFINABLE,
    };
    let v3 = match orbits::orbit_fo_lt_mod(&groups, minimal.state_count(), cap)? {
        Some(w) => check(Witness::III(w))?,
        None => DEFINABLE,
    };
    Ok(report(Method::Orbit, &minimal, None, [v1, v2, v3]))
}

pub fn classify_syntactic(ctx: &Syntactic) -> Result<ClassificationReport> {
    let minimal = ctx.minimal();
    let check = |w: Witness| -> Result<Verdict> {
        w.validate(minimal).map_err(|e| Error::Internal(format!("{} witness failed replay: {e}", w.logic())))?;
        Ok(undefinable(w))
    };
    let v1 = match search_fo_lt(ctx) {
        Some(w) => check(Witness::I(w))?,
        // no group at all, so the other two searches cannot succeed
        None => return Ok(report(Method::Criteria, minimal, Some(ctx.monoid().len()), [DEFINABLE; 3])),
    };
    let v2 = match search_fo_lt_eq(ctx)? {
        Some(w) => check(Witness::II(w))?,
        None => DEFINABLE,
    };
    let v3 = match search_fo_lt_mod(ctx)? {
        Some(w) => check(Witness::III(w))?,
        None => DEFINABLE,
    };
    Ok(report(Method::Criteria, minimal, Some(ctx.monoid().len()), [v1, v2, v3]))
}

fn report(method: Method, minimal: &Dfa, size: Option<usize>, verdicts: [Verdict; 3]) -> ClassificationReport {
    let stats = MonoidStats {
        size,
        aperiodic: verdicts[0].definable,
        quasi_aperiodic: verdicts[1].definable,
        groups_solvable: verdicts[2].definable,
    };
    ClassificationReport {
        method,
        alphabet: minimal.alphabet().clone(),
        state_count: minimal.state_count(),
        stats,
        verdicts,
    }
}

/// Verdicts from the algebraic characterizations alone.
pub fn oracle_classify(a: &Dfa, cap: usize) -> Result<ClassificationReport> {
    let ctx = Syntactic::new(a, cap)?;
    oracle_classify_syntactic(&ctx)
}

pub fn oracle_classify_syntactic(ctx: &Syntactic) -> Result<ClassificationReport> {
    let m = ctx.monoid();
    let aperiodic = is_aperiodic(m);
    let quasi_aperiodic = ctx.levels()?.distinct().iter().all(|t| set_contains_nontrivial_group(m, t).is_none());
    let groups_solvable = all_monoid_groups_solvable(m)?.solvable;
    let v = |definable| Verdict { definable, witness: None };
    Ok(ClassificationReport {
        method: Method::Oracle,
        alphabet: ctx.minimal().alphabet().clone(),
        state_count: ctx.minimal().state_count(),
        stats: MonoidStats { size: Some(m.len()), aperiodic, quasi_aperiodic, groups_solvable },
        verdicts: [v(aperiodic), v(quasi_aperiodic), v(groups_solvable)],
    })
}

/// Runs both routes and fails with [`Error::Disagreement`] if any verdict
/// differs. Returns the witness-carrying report.
pub fn classify_checked(a: &Dfa, cap: usize) -> Result<ClassificationReport> {
    let ctx = Syntactic::new(a, cap)?;
    let report = classify_syntactic(&ctx)?;
    let oracle = oracle_classify_syntactic(&ctx)?;
    if !report.agrees_with(&oracle) {
        let differing: Vec<String> = Logic::ALL
            .into_iter()
            .filter(|&l| report.definable(l) != oracle.definable(l))
            .map(|l| format!("{l}: criteria say {}, oracle says {}", report.definable(l), oracle.definable(l)))
            .collect();
        return Err(Error::Disagreement(differing.join("; ")));
    }
    Ok(report)
}
