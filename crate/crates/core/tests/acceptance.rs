//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use berezin::coeff::{q_coeff, q_prime, r_coeff, z_prime};
use berezin::det::{det_minus_identity, det_oracle};
use berezin::enumerate::{enum_class, enum_plain_stable, enum_pointed_stable, GraphClass};
use berezin::rational::{int, Rational};
use berezin::starprod::{
    assoc_check, berezin_series, invert_series, loi_recursion_check, orbit_check, star_coefficient, LoiVerdict,
};
use berezin::tensor::{invariant_form, to_invariant_basis, Operator};
use berezin::{Error, PointedMultiDigraph};
use num_traits::Zero;

use berezin::reference::{
    bt_forms, inverse_terms, low_order_forms, weight3_c, weight3_graphs, weight3_q, weight4_nonzero, weight4_zero,
    GRAPH_COUNTS,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn set(graphs: impl IntoIterator<Item = PointedMultiDigraph>) -> BTreeSet<PointedMultiDigraph> {
    graphs.into_iter().collect()
}

fn sign(n: usize) -> Rational {
    int(if n % 2 == 0 { 1 } else { -1 })
}

fn graph_counts() -> Outcome {
    let mut timings = Vec::new();
    for k in 0..=5 {
        let start = Instant::now();
        let all = lib(enum_pointed_stable(k))?;
        let counts = [
            all.len(),
            all.iter().filter(|g| GraphClass::Connected.contains(g)).count(),
            all.iter().filter(|g| GraphClass::StronglyConnected.contains(g)).count(),
            all.iter().filter(|g| GraphClass::Lambda.contains(g)).count(),
        ];
        let elapsed = start.elapsed();
        for (row, &n) in GRAPH_COUNTS.iter().zip(&counts) {
            ensure(row[k] == n, || format!("k={k}: counts {counts:?}"))?;
        }
        let budget = if k <= 4 { 60 } else { 1800 };
        ensure(elapsed.as_secs() < budget, || format!("k={k} took {}", secs(elapsed)))?;
        timings.push(format!("k={k} {}", secs(elapsed)));
    }
    Ok(timings.join(", "))
}

fn nonzero_weight4() -> Outcome {
    let rows = weight4_nonzero();
    let lambda = set(lib(enum_class(4, GraphClass::Lambda))?);
    ensure(set(rows.iter().map(|(g, _)| g.clone())) == lambda, || "printed graphs differ from the class".into())?;
    for (i, (g, q)) in rows.iter().enumerate() {
        let got = lib(q_coeff(g))?;
        ensure(&got == q, || format!("row {}: expected {q}, got {got}", i + 1))?;
    }
    Ok(format!("{} graphs", rows.len()))
}

fn zero_weight4() -> Outcome {
    let zeros = weight4_zero();
    for (i, g) in zeros.iter().enumerate() {
        ensure(lib(q_coeff(g))?.is_zero(), || format!("row {} is nonzero", i + 1))?;
    }
    let mut union = set(zeros.iter().cloned());
    union.extend(weight4_nonzero().into_iter().map(|(g, _)| g));
    let scon = set(lib(enum_class(4, GraphClass::StronglyConnected))?);
    ensure(union == scon && union.len() == 61, || format!("union has {} graphs", union.len()))?;
    Ok(format!("{} graphs", zeros.len()))
}

fn q_values() -> Outcome {
    let c3 = lib(star_coefficient(3))?;
    let expected = weight3_q();
    let graphs = weight3_graphs();
    let got: Vec<_> = graphs.iter().map(|t| c3.get(t)).collect();
    ensure(got == expected, || format!("got {got:?}"))?;
    let mut rest = c3.clone();
    for (t, q) in graphs.iter().zip(&expected) {
        rest.add_term(t, -q.clone());
    }
    ensure(rest.is_zero(), || "weight-3 coefficient has support outside the nine graphs".into())?;
    Ok("9 values".into())
}

fn c_values() -> Outcome {
    let c = lib(to_invariant_basis(&lib(star_coefficient(3))?, 3))?;
    ensure(c == weight3_c(), || format!("got {c:?}"))?;
    for (name, k, v) in low_order_forms() {
        let op: Operator = lib(name.parse())?;
        let form = lib(invariant_form(op, k))?;
        ensure(form.coefficients() == v, || format!("{op}{k} = {}", form.text()))?;
    }
    Ok("c1..c9, Q1, Q2, R1, R2".into())
}

fn inverse_and_bt() -> Outcome {
    let inv = lib(invert_series(&lib(berezin_series(3))?))?;
    for (k, e) in inverse_terms().iter().enumerate() {
        ensure(inv.term(k) == e, || format!("inverse differs at order {k}"))?;
    }
    for (k, v) in bt_forms().into_iter().enumerate() {
        let form = lib(invariant_form(Operator::CBT, k))?;
        ensure(form.coefficients() == v, || format!("CBT{k} = {}", form.text()))?;
    }
    Ok("inverse through order 3, CBT0..CBT3".into())
}

fn associativity() -> Outcome {
    let mut timings = Vec::new();
    for k in 0..=4 {
        let start = Instant::now();
        let report = lib(assoc_check(k))?;
        let elapsed = start.elapsed();
        ensure(report.pass, || format!("k={k}: {} differing terms", report.difference.len()))?;
        ensure(elapsed.as_secs() < 600, || format!("k={k} took {}", secs(elapsed)))?;
        timings.push(format!("k={k} {}", secs(elapsed)));
    }
    Ok(timings.join(", "))
}

fn det_oracle_agreement() -> Outcome {
    let mut checked = 0;
    for k in 0..=4 {
        let graphs = lib(enum_pointed_stable(k))?.into_iter().chain(lib(enum_plain_stable(k))?);
        for g in graphs {
            let a = g.ordinary_matrix();
            let (d, o) = (lib(det_minus_identity(&a))?, lib(det_oracle(&a))?);
            ensure(d == o, || format!("{}: det {d}, oracle {o}", g.encode()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} matrices"))
}

fn orbit_property() -> Outcome {
    let mut checked = 0;
    for k in 0..=4 {
        let report = lib(orbit_check(k))?;
        ensure(report.pass(), || format!("k={k}: {} violations", report.violations.len()))?;
        checked += report.checked;
    }
    Ok(format!("{checked} substitutions"))
}

fn symmetry() -> Outcome {
    for k in 0..=4 {
        for g in lib(enum_pointed_stable(k))? {
            let t = g.transpose().canonical();
            ensure(lib(q_coeff(&g))? == lib(q_coeff(&t))?, || format!("q differs on {}", g.encode()))?;
            ensure(lib(r_coeff(&g))? == lib(r_coeff(&t))?, || format!("r differs on {}", g.encode()))?;
        }
        let c = lib(star_coefficient(k))?;
        ensure(c.transpose() == c, || format!("C_{k} is not transpose invariant"))?;
    }
    for k in 1..=5 {
        let c = lib(star_coefficient(k))?;
        for (g, _) in c.iter() {
            let (i, o) = lib(g.degrees(0))?;
            ensure(i >= 1 && o >= 1, || format!("k={k}: f has degrees ({i}, {o}) in {}", g.encode()))?;
        }
    }
    Ok("k<=4 transpose, k=1..5 degrees".into())
}

fn fefferman() -> Outcome {
    let mut checked = 0;
    for k in 0..=4 {
        for g in lib(enum_class(k, GraphClass::StronglyConnected))? {
            let v = lib(q_prime(&g))? * int(g.aut_order() as i64);
            ensure(v == sign(g.n_ordinary()), || format!("Q' on {}", g.encode()))?;
            checked += 1;
        }
        for g in lib(enum_plain_stable(k))? {
            let z = lib(z_prime(&g))?;
            let comps = g.weak_components();
            let all_strong = comps.iter().all(|c| g.induced(0, c).is_strongly_connected());
            if !all_strong {
                ensure(z.is_zero(), || format!("z' nonzero on {}", g.encode()))?;
            } else {
                let v = z * int(g.aut_order() as i64);
                ensure(v == sign(g.n_ordinary() + comps.len()), || format!("z' on {}", g.encode()))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} graphs"))
}

fn loi() -> Outcome {
    let mut notes = Vec::new();
    for k in 0..=3 {
        let report = lib(loi_recursion_check(k))?;
        match report.verdict {
            LoiVerdict::Pass => {}
            LoiVerdict::Inconclusive => notes.push(format!("k={k} inconclusive {:?}", report.calibration)),
            LoiVerdict::Fail => return Err(format!("k={k}: {} mismatches", report.mismatches.len())),
        }
        if k == 3 {
            notes.push(format!("orientation {:?}", report.orientation));
        }
    }
    Ok(notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("graph counts", graph_counts),
        ("nonzero weight-4 coefficients", nonzero_weight4),
        ("vanishing weight-4 coefficients", zero_weight4),
        ("weight-3 q-values", q_values),
        ("weight-3 c-values and low-order forms", c_values),
        ("inverse series and Berezin-Toeplitz coefficients", inverse_and_bt),
        ("associativity", associativity),
        ("determinant oracle", det_oracle_agreement),
        ("orbit property", orbit_property),
        ("symmetry", symmetry),
        ("Fefferman coefficients", fefferman),
        ("Loi recursion", loi),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = secs(start.elapsed());
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({elapsed})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
