use std::fmt::Write as _;
use std::path::PathBuf;

use fodef::definability::{CircuitLabel, ClassificationReport, Logic, Method, Witness, NC1_NOTE};
use fodef::hardness::GadgetReport;
use fodef::Alphabet;
use serde_json::{json, Map, Value};

pub struct Classified {
    pub path: PathBuf,
    pub report: ClassificationReport,
}

fn circuit_name(c: CircuitLabel) -> &'static str {
    match c {
        CircuitLabel::Ac0 => "AC0",
        CircuitLabel::Acc0 => "ACC0",
        CircuitLabel::Nc1Hard => "NC1-hard",
    }
}

fn witness_json(w: &Witness, alphabet: &Alphabet) -> Value {
    let mut obj = Map::new();
    for (name, value) in w.fields(alphabet) {
        let v = match name {
            "u" | "v" => Value::String(value),
            _ => value.parse::<u64>().map_or(Value::String(value), Value::from),
        };
        obj.insert(name.to_owned(), v);
    }
    Value::Object(obj)
}

impl Classified {
    pub fn to_json(&self, logics: &[Logic]) -> Value {
        let r = &self.report;
        let mut by_logic = Map::new();
        for &l in logics {
            let v = r.verdict(l);
            let mut entry = Map::new();
            entry.insert("definable".into(), Value::Bool(v.definable));
            if let Some(w) = &v.witness {
                entry.insert("witness".into(), witness_json(w, &r.alphabet));
            }
            by_logic.insert(l.key().into(), Value::Object(entry));
        }
        let circuit = circuit_name(r.circuit_label());
        json!({
            "language_file": self.path.display().to_string(),
            "state_count": r.state_count,
            "monoid_size": r.stats.size,
            "method": match r.method {
                Method::Criteria => "criteria",
                Method::Oracle => "oracle",
                Method::Orbit => "orbit",
            },
            "logics": by_logic,
            "lowest_logic": r.lowest_logic().map(|l| l.key()),
            "circuit_label": circuit,
            "circuit": circuit,
            "note": NC1_NOTE,
        })
    }

    pub fn text(&self, logics: &[Logic]) -> String {
        let r = &self.report;
        if logics.len() == Logic::ALL.len() {
            return format!("{r}\n");
        }
        let mut out = String::new();
        for &l in logics {
            let v = r.verdict(l);
            let _ = write!(out, "{l}: definable: {}", if v.definable { "yes" } else { "no" });
            if let Some(w) = &v.witness {
                let _ = write!(out, "; witness {}", w.display(&r.alphabet));
            }
            out.push('\n');
        }
        out
    }
}

pub fn gadget_text(r: &GadgetReport) -> String {
    let (a, b, c) = r.generator_orders;
    let mut out = String::new();
    let _ = writeln!(out, "p = {}", r.p);
    let _ = writeln!(out, "orders of ♮, a, ♮a: {a}, {b}, {c}");
    let _ = writeln!(out, "group order: {}", r.closure_order);
    let _ = writeln!(out, "derived series: {}", if r.derived_series_solvable { "solvable" } else { "unsolvable" });
    match &r.kaplan_levy {
        Some(t) => {
            let (x, y, z) = t.orders;
            let _ = writeln!(out, "Kaplan-Levy triple: orders {x}, {y}, {z}");
        }
        None => {
            let _ = writeln!(out, "Kaplan-Levy triple: none");
        }
    }
    let _ = writeln!(
        out,
        "pairs checked: {} ({} generate proper subgroups, all solvable: {})",
        r.pairs_checked,
        r.proper_pair_subgroups,
        if r.failures.iter().any(|f| f.contains("pair")) { "no" } else { "yes" }
    );
    let _ = writeln!(out, "M(B_lt), M(B_eq) orders: {}, {}", r.lt_monoid_order, r.eq_monoid_order);
    for f in &r.failures {
        let _ = writeln!(out, "failure: {f}");
    }
    let _ = writeln!(out, "result: {}", if r.passed() { "pass" } else { "fail" });
    out
}

pub fn gadget_json(r: &GadgetReport) -> Value {
    json!({
        "p": r.p,
        "generator_orders": [r.generator_orders.0, r.generator_orders.1, r.generator_orders.2],
        "group_order": r.closure_order,
        "derived_series_solvable": r.derived_series_solvable,
        "kaplan_levy_orders": r.kaplan_levy.as_ref().map(|t| [t.orders.0, t.orders.1, t.orders.2]),
        "pairs_checked": r.pairs_checked,
        "proper_pair_subgroups": r.proper_pair_subgroups,
        "lt_monoid_order": r.lt_monoid_order,
        "eq_monoid_order": r.eq_monoid_order,
        "failures": r.failures,
        "passed": r.passed(),
    })
}
