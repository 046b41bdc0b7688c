//! Operator series in the formal parameter: star-product coefficients, the
//! Berezin transform, its inverse and the Berezin–Toeplitz coefficients.

use num_traits::One;

use super::split::{fuse_sum, split_sum, SplitOrder};
use super::substitute::{substitute_slot, Attach};
use crate::coeff::q_coeff;
use crate::enumerate::{enum_class, enum_semistable, GraphClass};
use crate::error::Error;
use crate::graphsum::GraphSum;
use crate::rational::Rational;

pub const STAR_CAP: usize = 5;
pub const BT_CAP: usize = 4;

/// `terms[k]` is the coefficient of `h^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSeries {
    terms: Vec<GraphSum>,
}

impl OperatorSeries {
    pub fn new(terms: Vec<GraphSum>) -> Self {
        Self { terms }
    }

    pub fn identity(order: usize) -> Self {
        let mut terms = vec![GraphSum::identity()];
        terms.resize(order + 1, GraphSum::new());
        Self { terms }
    }

    /// Truncation order `K`; terms `0..=K` are stored.
    pub fn order(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn term(&self, k: usize) -> &GraphSum {
        &self.terms[k]
    }

    pub fn terms(&self) -> &[GraphSum] {
        &self.terms
    }

    /// Drops every term with a non-stable ordinary vertex.
    pub fn at_center(&self) -> Self {
        Self { terms: self.terms.iter().map(|t| t.filtered(|g| g.is_stable())).collect() }
    }
}

/// `C_k = Σ Q_Γ Γ` over strongly connected pointed stable graphs of weight `k`.
pub fn star_coefficient(k: usize) -> Result<GraphSum, Error> {
    if k > STAR_CAP {
        return Err(Error::WeightCap { weight: k, cap: STAR_CAP });
    }
    let mut s = GraphSum::new();
    for g in enum_class(k, GraphClass::StronglyConnected)? {
        s.add_canonical(g.clone(), q_coeff(&g)?);
    }
    Ok(s)
}

/// `Σ Q_Γ Γ` over pointed semistable graphs of weight `k` whose deficiency is
/// at most the given bounds: the weight-`k` term of the Berezin transform
/// near the centre, as far as later derivatives can still make it stable.
pub fn berezin_near(k: usize, max_def_in: usize, max_def_out: usize) -> Result<GraphSum, Error> {
    let mut s = GraphSum::new();
    for g in enum_semistable(1, k, max_def_in, max_def_out)? {
        if g.is_strongly_connected() {
            s.add_canonical(g.clone(), q_coeff(&g)?);
        }
    }
    Ok(s)
}

/// Berezin transform through order `K`, each term carrying every semistable
/// graph that a stable operator of the remaining weight can still stabilise.
pub fn berezin_series(order: usize) -> Result<OperatorSeries, Error> {
    let terms = (0..=order)
        .map(|k| {
            let room = order - k;
            berezin_near(k, room, room)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OperatorSeries::new(terms))
}

/// `(P ∘ S)_k = Σ_{a+b=k} P_a(S_b f)` at the centre; the stable part of `P`
/// acts on `S` with derivatives landing on vertices and edges.
pub fn compose_term(p: &OperatorSeries, s: &OperatorSeries, k: usize) -> Result<GraphSum, Error> {
    let mut out = GraphSum::new();
    for a in 0..=k.min(p.order()) {
        let b = k - a;
        if b > s.order() || s.term(b).is_empty() {
            continue;
        }
        let outer = p.term(a).filtered(|g| g.is_stable());
        if outer.is_empty() {
            continue;
        }
        out.add_sum(&substitute_slot(&outer, 0, s.term(b), Attach::CENTER)?, &Rational::one());
    }
    Ok(out)
}

pub fn compose(p: &OperatorSeries, s: &OperatorSeries) -> Result<OperatorSeries, Error> {
    let order = p.order().min(s.order());
    Ok(OperatorSeries::new((0..=order).map(|k| compose_term(p, s, k)).collect::<Result<_, _>>()?))
}

/// The series `P` with `P ∘ S = 1`, solved order by order:
/// `P_k = -Σ_{a<k} P_a ∘ S_{k-a}`.
pub fn invert_series(s: &OperatorSeries) -> Result<OperatorSeries, Error> {
    let s0 = s.term(0);
    if s0 != &GraphSum::identity() {
        return Err(Error::NotUnipotent);
    }
    let mut p = OperatorSeries::identity(0);
    for k in 1..=s.order() {
        let mut next = GraphSum::new();
        for a in 0..k {
            let outer = p.term(a);
            if outer.is_empty() || s.term(k - a).is_empty() {
                continue;
            }
            next.add_sum(&substitute_slot(outer, 0, s.term(k - a), Attach::CENTER)?, &-Rational::one());
        }
        p.terms.push(next);
    }
    Ok(p)
}

/// Result of [`bt_coefficients`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BtCoefficient {
    /// The two-pointed sum is the split (out-slot first) of this one-pointed sum.
    Fused(GraphSum),
    TwoPointed(GraphSum),
}

impl BtCoefficient {
    pub fn two_pointed(&self) -> GraphSum {
        match self {
            BtCoefficient::Fused(s) => split_sum(s, SplitOrder::OutFirst).expect("one-pointed"),
            BtCoefficient::TwoPointed(s) => s.clone(),
        }
    }
}

/// `C^BT_k = Σ_{a+b+c+d=k} P_a ∘ C_b(Q_c f1, Q_d f2)` where `P = I⁻¹`.
///
/// The result has `f1` carrying the holomorphic and `f2` the
/// antiholomorphic derivatives; it is fused back to a one-pointed sum
/// whenever every term allows it.
pub fn bt_two_pointed(k: usize) -> Result<GraphSum, Error> {
    if k > BT_CAP {
        return Err(Error::WeightCap { weight: k, cap: BT_CAP });
    }
    let inverse = invert_series(&berezin_series(k)?)?;
    let mut total = GraphSum::new();
    for a in 0..=k {
        let p_a = inverse.term(a);
        if p_a.is_empty() {
            continue;
        }
        for b in 0..=k - a {
            let outer = split_sum(&berezin_near(b, a, a)?, SplitOrder::InFirst)?;
            if outer.is_empty() {
                continue;
            }
            for c in 0..=k - a - b {
                let d = k - a - b - c;
                let q_c = berezin_near(c, b + 2 * a, a)?;
                let q_d = berezin_near(d, a, b + 2 * a)?;
                let left = substitute_slot(&outer, 0, &q_c, Attach::near(a, a))?;
                if left.is_empty() {
                    continue;
                }
                let both = substitute_slot(&left, 1, &q_d, Attach::near(a, a))?;
                if both.is_empty() {
                    continue;
                }
                total.add_sum(&substitute_slot(p_a, 0, &both, Attach::CENTER)?, &Rational::one());
            }
        }
    }
    Ok(total)
}

pub fn bt_coefficients(k: usize) -> Result<BtCoefficient, Error> {
    let two = bt_two_pointed(k)?;
    Ok(match fuse_sum(&two, SplitOrder::OutFirst) {
        Some(one) => BtCoefficient::Fused(one),
        None => BtCoefficient::TwoPointed(two),
    })
}

/// Checks `P ∘ S = 1` through the truncation order.
pub fn is_left_inverse(p: &OperatorSeries, s: &OperatorSeries) -> Result<bool, Error> {
    let c = compose(p, s)?;
    Ok(c.terms().iter().enumerate().all(|(k, t)| if k == 0 { t == &GraphSum::identity() } else { t.is_zero() }))
}
