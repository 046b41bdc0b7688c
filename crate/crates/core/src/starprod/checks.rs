//! Graph-level verification: associativity, the orbit property of
//! substitution, and the recursion for the Bergman kernel coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::series::{berezin_near, star_coefficient};
use super::split::{partition_split, split_sum, SplitOrder};
use super::substitute::{substitute_graph, substitute_slot, Attach};
use crate::coeff::{r_coeff, z_coeff};
use crate::enumerate::{enum_plain_stable, enum_pointed_stable, enum_semistable};
use crate::error::Error;
use crate::graph::PointedMultiDigraph;
use crate::graphsum::{GraphSum, TermJson};
use crate::rational::Rational;

pub const ASSOC_CAP: usize = 4;
pub const LOI_CAP: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `C(f1, C(f2, f3))`: the inner product fills the second slot.
    Right,
    /// `C(C(f1, f2), f3)`: the inner product fills the first slot.
    Left,
}

/// Splits both one-pointed sums and glues the inner split into the slot
/// given by `side`; the result is three-pointed in `(f1, f2, f3)`.
pub fn compose_bilinear(outer: &GraphSum, inner: &GraphSum, side: Side) -> Result<GraphSum, Error> {
    if outer.is_empty() || inner.is_empty() {
        return Ok(GraphSum::new());
    }
    let o = split_sum(outer, SplitOrder::InFirst)?;
    let i = split_sum(inner, SplitOrder::InFirst)?;
    let slot = match side {
        Side::Right => 1,
        Side::Left => 0,
    };
    substitute_slot(&o, slot, &i, Attach::VERTICES)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocReport {
    pub order: usize,
    pub pass: bool,
    pub terms: usize,
    pub difference: Vec<TermJson>,
}

fn assoc_sides(k: usize) -> Result<(GraphSum, GraphSum), Error> {
    let mut lhs = GraphSum::new();
    let mut rhs = GraphSum::new();
    for j in 0..=k {
        // C_j(f1, C_{k-j}(f2, f3)): the inner product only takes holomorphic derivatives
        let inner = berezin_near(k - j, 0, j)?;
        lhs.add_sum(&compose_bilinear(&star_coefficient(j)?, &inner, Side::Right)?, &Rational::one());
        // C_{k-j}(C_j(f1, f2), f3): the inner product only takes antiholomorphic ones
        let inner = berezin_near(j, k - j, 0)?;
        rhs.add_sum(&compose_bilinear(&star_coefficient(k - j)?, &inner, Side::Left)?, &Rational::one());
    }
    Ok((lhs, rhs))
}

/// Compares `Σ_j C_j(f1, C_{k-j}(f2, f3))` with `Σ_j C_{k-j}(C_j(f1, f2), f3)`.
pub fn assoc_check(k: usize) -> Result<AssocReport, Error> {
    if k > ASSOC_CAP {
        return Err(Error::WeightCap { weight: k, cap: ASSOC_CAP });
    }
    let (lhs, rhs) = assoc_sides(k)?;
    let diff = &lhs - &rhs;
    Ok(AssocReport { order: k, pass: diff.is_zero(), terms: lhs.len(), difference: diff.to_json() })
}

/// One violation of `mult(G) |Aut G| = |Aut Γ| |Aut H1| |Aut H2|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitViolation {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
    pub multiplicity: i64,
    pub aut_result: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub weight: usize,
    pub checked: usize,
    pub violations: Vec<OrbitViolation>,
}

impl OrbitReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `D_Γ(H1, H2)` for a one-pointed `Γ`: `H1` takes the in-edges of `f`,
/// `H2` the out-edges; vertex targets only, stable results only.
pub fn d_gamma(
    gamma: &PointedMultiDigraph,
    h1: &PointedMultiDigraph,
    h2: &PointedMultiDigraph,
) -> Result<Vec<(PointedMultiDigraph, i64)>, Error> {
    let split = partition_split(gamma)?;
    let mut acc: std::collections::BTreeMap<PointedMultiDigraph, i64> = Default::default();
    for (mid, m1) in substitute_graph(&split, 0, h1, Attach::VERTICES)? {
        let slot = h1.n_distinguished();
        for (g, m2) in substitute_graph(&mid, slot, h2, Attach::VERTICES)? {
            *acc.entry(g).or_insert(0) += m1 * m2;
        }
    }
    Ok(acc.into_iter().filter(|(_, m)| *m != 0).collect())
}

fn check_orbits(
    gamma: &PointedMultiDigraph,
    h1: &PointedMultiDigraph,
    h2: &PointedMultiDigraph,
    report: &mut OrbitReport,
) -> Result<(), Error> {
    let expected = gamma.aut_order() * h1.aut_order() * h2.aut_order();
    for (g, m) in d_gamma(gamma, h1, h2)? {
        report.checked += 1;
        let aut = g.aut_order();
        if m < 0 || m as u64 * aut != expected {
            report.violations.push(OrbitViolation {
                outer: gamma.encode(),
                inner: vec![h1.encode(), h2.encode()],
                result: g.encode(),
                multiplicity: m,
                aut_result: aut,
                expected,
            });
        }
    }
    Ok(())
}

fn check_single(
    outer: &PointedMultiDigraph,
    slot: usize,
    inner: &PointedMultiDigraph,
    report: &mut OrbitReport,
) -> Result<(), Error> {
    let expected = outer.aut_order() * inner.aut_order();
    for (g, m) in substitute_graph(outer, slot, inner, Attach::VERTICES)? {
        report.checked += 1;
        let aut = g.aut_order();
        if m < 0 || m as u64 * aut != expected {
            report.violations.push(OrbitViolation {
                outer: outer.encode(),
                inner: vec![inner.encode()],
                result: g.encode(),
                multiplicity: m,
                aut_result: aut,
                expected,
            });
        }
    }
    Ok(())
}

/// Orbit property over every substitution in the associativity check and in
/// the `C_b(Q_c f1, Q_d f2)` layer of the Berezin–Toeplitz coefficients, at
/// total weight `k`.
pub fn orbit_check(k: usize) -> Result<OrbitReport, Error> {
    if k > ASSOC_CAP {
        return Err(Error::WeightCap { weight: k, cap: ASSOC_CAP });
    }
    let mut report = OrbitReport { weight: k, checked: 0, violations: Vec::new() };
    for j in 0..=k {
        let split = |s: GraphSum| -> Result<Vec<PointedMultiDigraph>, Error> {
            Ok(split_sum(&s, SplitOrder::InFirst)?.graphs().cloned().collect())
        };
        let outers = split(star_coefficient(j)?)?;
        for h in split(berezin_near(k - j, 0, j)?)? {
            for g in &outers {
                check_single(g, 1, &h, &mut report)?;
            }
        }
        let outers = split(star_coefficient(k - j)?)?;
        for h in split(berezin_near(j, k - j, 0)?)? {
            for g in &outers {
                check_single(g, 0, &h, &mut report)?;
            }
        }
    }
    for b in 0..=k {
        let outers: Vec<_> = star_coefficient(b)?.graphs().cloned().collect();
        for c in 0..=k - b {
            let d = k - b - c;
            let lefts = strongly_connected(enum_semistable(1, c, b, 0)?);
            let rights = strongly_connected(enum_semistable(1, d, 0, b)?);
            for g in &outers {
                for h1 in &lefts {
                    for h2 in &rights {
                        check_orbits(g, h1, h2, &mut report)?;
                    }
                }
            }
        }
    }
    Ok(report)
}

fn strongly_connected(v: Vec<PointedMultiDigraph>) -> Vec<PointedMultiDigraph> {
    v.into_iter().filter(|g| g.is_strongly_connected()).collect()
}

/// A single-slot composition `D_Γ(H)` where the orbit property fails:
/// `Γ = H = f` with one loop gives `f` with two loops once, while
/// `|Aut| = 2`. Returns `(G, multiplicity, |Aut G|, |Aut Γ| |Aut H|)`.
pub fn single_slot_orbit_example() -> Result<(PointedMultiDigraph, i64, u64, u64), Error> {
    let l = PointedMultiDigraph::point_with_loops(1);
    let two = PointedMultiDigraph::point_with_loops(2);
    let m = substitute_graph(&l, 0, &l, Attach::VERTICES)?
        .into_iter()
        .find(|(g, _)| g == &two)
        .map(|(_, m)| m)
        .unwrap_or(0);
    Ok((two.clone(), m, two.aut_order(), l.aut_order() * l.aut_order()))
}

/// Which recursion factor receives the in-edges of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoiOrientation {
    /// In-edges of `f` land on the sink `B(x, y)`, out-edges on the source `B(y, x)`.
    SinkTakesIn,
    SourceTakesIn,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoiVerdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoiReport {
    pub weight: usize,
    pub verdict: LoiVerdict,
    pub orientation: Option<LoiOrientation>,
    /// Calibration outcome per orientation on weights up to 2.
    pub calibration: Vec<(LoiOrientation, bool)>,
    pub mismatches: Vec<TermJson>,
}

/// `Σ z(G) G` over 0-pointed semistable graphs of weight `k` with the given deficiency bounds.
fn kernel_near(k: usize, max_def_in: usize, max_def_out: usize) -> Result<GraphSum, Error> {
    let mut s = GraphSum::new();
    for g in enum_semistable(0, k, max_def_in, max_def_out)? {
        s.add_canonical(g.clone(), z_coeff(&g)?);
    }
    Ok(s)
}

/// `B_k` at the centre from the recursion, over stable graphs.
fn loi_recursion(k: usize, orientation: LoiOrientation) -> Result<GraphSum, Error> {
    let mut out = GraphSum::new();
    for i in 1..k {
        let bi = kernel_near(i, 0, 0)?;
        let bj = kernel_near(k - i, 0, 0)?;
        for (g1, c1) in bi.iter() {
            for (g2, c2) in bj.iter() {
                out.add_canonical(g1.disjoint_union(g2), -(c1 * c2));
            }
        }
    }
    for l in 1..=k {
        let gammas = enum_pointed_stable(l)?;
        for i in 0..=k - l {
            let j = k - l - i;
            // sink B_i(x, y), source B_j(y, x)
            let (in_side, out_side) = match orientation {
                LoiOrientation::SinkTakesIn => ((i, l, 0), (j, 0, l)),
                LoiOrientation::SourceTakesIn => ((j, l, 0), (i, 0, l)),
            };
            let takes_in = kernel_near(in_side.0, in_side.1, in_side.2)?;
            let takes_out = kernel_near(out_side.0, out_side.1, out_side.2)?;
            for gamma in &gammas {
                let r = r_coeff(gamma)?;
                if r.is_zero() {
                    continue;
                }
                for (h1, c1) in takes_in.iter() {
                    for (h2, c2) in takes_out.iter() {
                        let scale = -(&r * c1 * c2);
                        for (g, m) in d_gamma(gamma, h1, h2)? {
                            out.add_canonical(g, &scale * Rational::from_integer(BigInt::from(m)));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn loi_agrees(k: usize, orientation: LoiOrientation) -> Result<(bool, Vec<TermJson>), Error> {
    let rec = loi_recursion(k, orientation)?;
    let mut closed = GraphSum::new();
    for g in enum_plain_stable(k)? {
        closed.add_canonical(g.clone(), z_coeff(&g)?);
    }
    let diff = &rec - &closed;
    Ok((diff.is_zero(), diff.to_json()))
}

/// Recomputes every `z(G)`, `G` stable of weight `k`, from the recursion and
/// compares with the closed form, after calibrating the orientation on
/// weights 1 and 2.
pub fn loi_recursion_check(k: usize) -> Result<LoiReport, Error> {
    if k > LOI_CAP {
        return Err(Error::WeightCap { weight: k, cap: LOI_CAP });
    }
    let mut calibration = Vec::new();
    for o in [LoiOrientation::SinkTakesIn, LoiOrientation::SourceTakesIn] {
        let mut ok = true;
        for w in 1..=2 {
            ok &= loi_agrees(w, o)?.0;
        }
        calibration.push((o, ok));
    }
    let chosen = calibration.iter().find(|(_, ok)| *ok).map(|(o, _)| *o);
    let Some(orientation) = chosen else {
        return Ok(LoiReport {
            weight: k,
            verdict: LoiVerdict::Inconclusive,
            orientation: None,
            calibration,
            mismatches: Vec::new(),
        });
    };
    if k == 0 {
        return Ok(LoiReport {
            weight: 0,
            verdict: LoiVerdict::Pass,
            orientation: chosen,
            calibration,
            mismatches: Vec::new(),
        });
    }
    let (ok, mismatches) = loi_agrees(k, orientation)?;
    Ok(LoiReport {
        weight: k,
        verdict: if ok { LoiVerdict::Pass } else { LoiVerdict::Fail },
        orientation: Some(orientation),
        calibration,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn assoc_low_orders() {
        for k in 0..=2 {
            let r = assoc_check(k).unwrap();
            assert!(r.pass, "k={k}: {:?}", r.difference);
        }
    }

    #[test]
    fn unit_composition_is_split() {
        let c2 = star_coefficient(2).unwrap();
        let r = compose_bilinear(&GraphSum::identity(), &c2, Side::Right).unwrap();
        assert_eq!(r.len(), c2.len());
        for (g, c) in c2.iter() {
            let s = partition_split(g).unwrap();
            let three = PointedMultiDigraph::empty(1, 0).disjoint_union(&s);
            assert_eq!(&r.get(&three), c);
        }
    }

    #[test]
    fn first_order_leibniz() {
        // C1(f1, f2 f3) + C0(f1, C1(f2, f3)) has three terms
        let r = assoc_check(1).unwrap();
        assert_eq!(r.terms, 3);
    }

    #[test]
    fn single_slot_counterexample() {
        let (_, m, aut, expected) = single_slot_orbit_example().unwrap();
        assert_eq!((m, aut, expected), (1, 2, 1));
    }

    #[test]
    fn orbit_property_low_weight() {
        let r = orbit_check(2).unwrap();
        assert!(r.pass(), "{:?}", r.violations);
        assert!(r.checked > 0);
    }

    #[test]
    fn loi_first_weight() {
        let rec = loi_recursion(1, LoiOrientation::SinkTakesIn).unwrap();
        let v2 = PointedMultiDigraph::from_edges(0, 1, &[(0, 0, 2)]).unwrap();
        assert_eq!(rec.get(&v2), -int(1) / int(2));
    }
}
