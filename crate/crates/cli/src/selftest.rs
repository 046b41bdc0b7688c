//! Reproduction checks against the published reference values.

use std::collections::BTreeSet;

use berezin::coeff::q_coeff;
use berezin::det::{det_minus_identity, det_oracle};
use berezin::enumerate::{enum_class, enum_plain_stable, enum_pointed_stable, GraphClass};
use berezin::rational::format;
use berezin::reference::{
    bt_forms, inverse_terms, low_order_forms, weight3_c, weight3_graphs, weight3_q, weight4_nonzero, weight4_zero,
    GRAPH_COUNTS,
};
use berezin::starprod::{
    assoc_check, berezin_series, invert_series, loi_recursion_check, orbit_check, star_coefficient, LoiVerdict,
};
use berezin::tensor::{invariant_form, to_invariant_basis, Operator};
use berezin::{Error, Rational};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// Summary on success, mismatch details on failure.
    pub detail: Value,
}

fn result(name: &str, mismatches: Vec<Value>, summary: Value) -> CheckResult {
    let pass = mismatches.is_empty();
    CheckResult { name: name.to_string(), pass, detail: if pass { summary } else { Value::Array(mismatches) } }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

pub fn graph_counts() -> Result<CheckResult, Error> {
    let mut mismatches = Vec::new();
    for k in 0..=5 {
        let all = enum_pointed_stable(k)?;
        let got = [
            all.len(),
            all.iter().filter(|g| GraphClass::Connected.contains(g)).count(),
            all.iter().filter(|g| GraphClass::StronglyConnected.contains(g)).count(),
            all.iter().filter(|g| GraphClass::Lambda.contains(g)).count(),
        ];
        let expected: Vec<usize> = GRAPH_COUNTS.iter().map(|row| row[k]).collect();
        if got[..] != expected[..] {
            mismatches.push(json!({ "weight": k, "expected": expected, "got": got }));
        }
    }
    Ok(result("graph-counts", mismatches, json!(GRAPH_COUNTS)))
}

fn weight4() -> Result<CheckResult, Error> {
    let mut mismatches = Vec::new();
    let nonzero = weight4_nonzero();
    for (g, q) in &nonzero {
        let got = q_coeff(g)?;
        if &got != q {
            mismatches.push(json!({ "graph": g.encode(), "expected": format(q), "got": format(&got) }));
        }
    }
    for g in weight4_zero() {
        let got = q_coeff(&g)?;
        if !got.is_zero() {
            mismatches.push(json!({ "graph": g.encode(), "expected": "0", "got": format(&got) }));
        }
    }
    let lambda: BTreeSet<_> = enum_class(4, GraphClass::Lambda)?.into_iter().collect();
    let listed: BTreeSet<_> = nonzero.into_iter().map(|(g, _)| g).collect();
    if lambda != listed {
        mismatches.push(json!({ "error": "listed nonzero graphs differ from the enumerated class" }));
    }
    Ok(result("weight-4-coefficients", mismatches, json!({ "nonzero": 36, "zero": 25 })))
}

fn weight3() -> Result<Vec<CheckResult>, Error> {
    let c3 = star_coefficient(3)?;
    let q: Vec<Rational> = weight3_graphs().iter().map(|g| c3.get(g)).collect();
    let mut out = Vec::new();
    let mism = |got: &[Rational], expected: &[Rational]| {
        if got == expected {
            vec![]
        } else {
            vec![json!({ "expected": strings(expected), "got": strings(got) })]
        }
    };
    out.push(result("weight-3-q-values", mism(&q, &weight3_q()), json!(strings(&q))));
    let c = to_invariant_basis(&c3, 3)?;
    out.push(result("weight-3-c-values", mism(&c, &weight3_c()), json!(strings(&c))));
    let mut forms = Vec::new();
    for (name, k, v) in low_order_forms() {
        let op: Operator = name.parse()?;
        let form = invariant_form(op, k)?;
        if form.coefficients() != v {
            forms.push(json!({ "operator": format!("{op}{k}"), "expected": strings(&v), "got": form.text() }));
        }
    }
    out.push(result("low-order-forms", forms, json!(["Q1", "Q2", "R1", "R2"])));
    Ok(out)
}

fn inverse_and_bt() -> Result<CheckResult, Error> {
    let inv = invert_series(&berezin_series(3)?)?;
    let mut mismatches = Vec::new();
    for (k, e) in inverse_terms().iter().enumerate() {
        let diff = inv.term(k) - e;
        if !diff.is_zero() {
            mismatches.push(json!({ "inverse-order": k, "difference": diff.to_json() }));
        }
    }
    for (k, v) in bt_forms().into_iter().enumerate() {
        let form = invariant_form(Operator::CBT, k)?;
        if form.coefficients() != v {
            mismatches.push(json!({ "bt-order": k, "expected": strings(&v), "got": form.text() }));
        }
    }
    Ok(result("inverse-and-bt", mismatches, json!({ "inverse-orders": 3, "bt-orders": 3 })))
}

fn assoc() -> Result<CheckResult, Error> {
    let mut mismatches = Vec::new();
    for k in 0..=4 {
        let r = assoc_check(k)?;
        if !r.pass {
            mismatches.push(serde_json::to_value(r).expect("serializable"));
        }
    }
    Ok(result("associativity", mismatches, json!({ "orders": "0..=4" })))
}

/// Compares elimination with the linear-subgraph oracle on every minor matrix at weight `k`.
pub fn det_oracle_check(k: usize) -> Result<CheckResult, Error> {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for g in enum_pointed_stable(k)?.into_iter().chain(enum_plain_stable(k)?) {
        let a = g.ordinary_matrix();
        let (d, o) = (det_minus_identity(&a)?, det_oracle(&a)?);
        if d != o {
            mismatches.push(json!({ "graph": g.encode(), "det": d.to_string(), "oracle": o.to_string() }));
        }
        checked += 1;
    }
    Ok(result("det-oracle", mismatches, json!({ "weight": k, "checked": checked })))
}

fn oracles() -> Result<Vec<CheckResult>, Error> {
    let mut det = Vec::new();
    let mut orbit = Vec::new();
    let mut loi = Vec::new();
    for k in 0..=4 {
        let r = det_oracle_check(k)?;
        if !r.pass {
            det.push(r.detail);
        }
        let r = orbit_check(k)?;
        if !r.pass() {
            orbit.push(serde_json::to_value(r).expect("serializable"));
        }
    }
    for k in 0..=3 {
        let r = loi_recursion_check(k)?;
        if r.verdict != LoiVerdict::Pass {
            loi.push(serde_json::to_value(r).expect("serializable"));
        }
    }
    Ok(vec![
        result("det-oracle", det, json!({ "weights": "0..=4" })),
        result("orbit-property", orbit, json!({ "weights": "0..=4" })),
        result("loi-recursion", loi, json!({ "weights": "0..=3" })),
    ])
}

pub fn full() -> Result<Vec<CheckResult>, Error> {
    let mut out = vec![graph_counts()?, weight4()?];
    out.extend(weight3()?);
    out.push(inverse_and_bt()?);
    out.push(assoc()?);
    out.extend(oracles()?);
    Ok(out)
}
