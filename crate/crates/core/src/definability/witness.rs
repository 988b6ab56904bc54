use std::collections::BTreeSet;
use std::fmt;

use crate::automata::{Alphabet, Dfa, State, Word};
use crate::monoid::{is_prime, transformation_of_word, Transformation};

use super::Logic;

/// A word whose transformation moves `q` around a cycle of length `k ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessI {
    pub u: Word,
    pub q: State,
    pub k: usize,
}

/// Equal-length words `u`, `v`: `u` moves `q` around a cycle of length
/// `k`, and `v` fixes every point of that cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessII {
    pub u: Word,
    pub v: Word,
    pub q: State,
    pub k: usize,
}

/// Words `u`, `v` moving `q` (as does `uv`) such that `u²`, `v^k` and
/// `(uv)^l` fix every state reachable from `q` under `{u, v}*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessIII {
    pub u: Word,
    pub v: Word,
    pub q: State,
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    I(WitnessI),
    II(WitnessII),
    III(WitnessIII),
}

fn delta(a: &Dfa, w: &Word) -> Result<Transformation, String> {
    transformation_of_word(a, w).map_err(|e| e.to_string())
}

fn power_fixes(t: &Transformation, times: usize, q: State) -> bool {
    (0..times).fold(q, |s, _| t.apply(s)) == q
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl WitnessI {
    /// Replays the witness on a minimal DFA, where state equivalence is
    /// equality.
    pub fn validate(&self, minimal: &Dfa) -> Result<(), String> {
        let n = minimal.state_count();
        ensure(self.q < n, || format!("q = {} out of range", self.q))?;
        ensure((2..=n).contains(&self.k), || format!("k = {} not in 2..={n}", self.k))?;
        let u = delta(minimal, &self.u)?;
        ensure(u.apply(self.q) != self.q, || "u fixes q".into())?;
        ensure(power_fixes(&u, self.k, self.q), || format!("u^{} does not return to q", self.k))
    }
}

impl WitnessII {
    pub fn validate(&self, minimal: &Dfa) -> Result<(), String> {
        let n = minimal.state_count();
        ensure(self.u.len() == self.v.len(), || "|u| != |v|".into())?;
        ensure(self.q < n, || format!("q = {} out of range", self.q))?;
        ensure((2..=n).contains(&self.k), || format!("k = {} not in 2..={n}", self.k))?;
        let u = delta(minimal, &self.u)?;
        let v = delta(minimal, &self.v)?;
        ensure(u.apply(self.q) != self.q, || "u fixes q".into())?;
        ensure(power_fixes(&u, self.k, self.q), || format!("u^{} does not return to q", self.k))?;
        let mut p = self.q;
        for i in 0..self.k {
            ensure(v.apply(p) == p, || format!("δ(u^{i}) and δ(u^{i} v) differ on q"))?;
            p = u.apply(p);
        }
        Ok(())
    }
}

impl WitnessIII {
    /// Checks the order conditions, the three moved-point conditions and
    /// the fixing conditions over every `δ_x(q)` with `x ∈ {u, v}*`.
    pub fn validate(&self, minimal: &Dfa) -> Result<(), String> {
        let n = minimal.state_count();
        ensure(self.q < n, || format!("q = {} out of range", self.q))?;
        ensure(self.k % 2 == 1 && is_prime(self.k), || format!("k = {} is not an odd prime", self.k))?;
        ensure(self.k <= n, || format!("k = {} exceeds |Q| = {n}", self.k))?;
        ensure(self.l > 1 && gcd(self.l, 2) == 1 && gcd(self.l, self.k) == 1, || {
            format!("l = {} is not > 1 and coprime to 2 and {}", self.l, self.k)
        })?;
        let u = delta(minimal, &self.u)?;
        let v = delta(minimal, &self.v)?;
        let uv = u.then(&v);
        ensure(u.apply(self.q) != self.q, || "u fixes q".into())?;
        ensure(v.apply(self.q) != self.q, || "v fixes q".into())?;
        ensure(uv.apply(self.q) != self.q, || "uv fixes q".into())?;

        let mut orbit: BTreeSet<State> = BTreeSet::from([self.q]);
        let mut stack = vec![self.q];
        while let Some(r) = stack.pop() {
            for t in [&u, &v] {
                if orbit.insert(t.apply(r)) {
                    stack.push(t.apply(r));
                }
            }
        }
        for &r in &orbit {
            ensure(power_fixes(&u, 2, r), || format!("u² moves reachable state {r}"))?;
            ensure(power_fixes(&v, self.k, r), || format!("v^{} moves reachable state {r}", self.k))?;
            ensure(power_fixes(&uv, self.l, r), || format!("(uv)^{} moves reachable state {r}", self.l))?;
        }
        Ok(())
    }
}

impl Witness {
    pub fn logic(&self) -> Logic {
        match self {
            Witness::I(_) => Logic::FoLt,
            Witness::II(_) => Logic::FoLtEq,
            Witness::III(_) => Logic::FoLtMod,
        }
    }

    pub fn validate(&self, minimal: &Dfa) -> Result<(), String> {
        match self {
            Witness::I(w) => w.validate(minimal),
            Witness::II(w) => w.validate(minimal),
            Witness::III(w) => w.validate(minimal),
        }
    }

    /// `(name, value)` fields in a fixed order, words rendered over the
    /// given alphabet.
    pub fn fields(&self, alphabet: &Alphabet) -> Vec<(&'static str, String)> {
        let w = |x: &Word| alphabet.render(x);
        match self {
            Witness::I(x) => vec![("u", w(&x.u)), ("q", x.q.to_string()), ("k", x.k.to_string())],
            Witness::II(x) => {
                vec![("u", w(&x.u)), ("v", w(&x.v)), ("q", x.q.to_string()), ("k", x.k.to_string())]
            }
            Witness::III(x) => vec![
                ("u", w(&x.u)),
                ("v", w(&x.v)),
                ("q", x.q.to_string()),
                ("k", x.k.to_string()),
                ("l", x.l.to_string()),
            ],
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Witness, &'a Alphabet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.fields(self.1).into_iter().map(|(k, v)| format!("{k}={v}")).collect();
                f.write_str(&parts.join(" "))
            }
        }
        D(self, alphabet)
    }
}
