//! Invariant bases and the conversion of graph sums into them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use super::expand::expand_combination;
use super::linalg::solve;
use super::term::{parse_combination, render_linear, TensorTerm};
use super::TENSOR_CAP;
use crate::coeff::{table, Kind};
use crate::error::Error;
use crate::graphsum::GraphSum;
use crate::rational::Rational;
use crate::starprod::{bt_coefficients, split_sum, star_coefficient, SplitOrder};

/// A named linear combination of contraction patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub latex: String,
    pub text: String,
    pub terms: Vec<(Rational, TensorTerm)>,
}

impl BasisElement {
    /// An element displayed as its own contraction.
    pub fn literal(expr: &str) -> Result<Self, Error> {
        let terms = parse_combination(expr)?;
        let latex = render_terms(&terms, true);
        let text = render_terms(&terms, false);
        Ok(Self { latex, text, terms })
    }

    pub fn named(latex: &str, text: &str, expr: &str) -> Result<Self, Error> {
        Ok(Self { latex: latex.into(), text: text.into(), terms: parse_combination(expr)? })
    }

    pub fn expand(&self) -> Result<GraphSum, Error> {
        expand_combination(&self.terms)
    }
}

fn render_terms(terms: &[(Rational, TensorTerm)], latex: bool) -> String {
    let rendered: Vec<_> = terms.iter().map(|(c, t)| (c.clone(), if latex { t.latex() } else { t.text() })).collect();
    let s = render_linear(&rendered, latex);
    if terms.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub weight: usize,
    pub elements: Vec<BasisElement>,
}

impl Basis {
    fn build(weight: usize, items: &[(&str, &str, &str)]) -> Result<Self, Error> {
        let elements =
            items
                .iter()
                .map(|(latex, text, expr)| {
                    if latex.is_empty() {
                        BasisElement::literal(expr)
                    } else {
                        BasisElement::named(latex, text, expr)
                    }
                })
                .collect::<Result<_, _>>()?;
        Ok(Self { weight, elements })
    }

    pub fn expansions(&self) -> Result<Vec<GraphSum>, Error> {
        self.elements.iter().map(BasisElement::expand).collect()
    }

    /// Coefficients of `s` in this basis.
    pub fn coordinates(&self, s: &GraphSum) -> Result<Vec<Rational>, Error> {
        solve(&self.expansions()?, s)
    }
}

/// Scalar-operator basis applied to `f`: `{f}`, `{Δf, ρf}`, the eight
/// weight-2 invariants, and `σ1..σ9` at weight 3.
pub fn sigma_basis(k: usize) -> Result<Basis, Error> {
    let items: &[(&str, &str, &str)] = match k {
        0 => &[("", "", "f")],
        1 => &[("\\Delta f", "Δf", "f_{;i\\bar i}"), ("\\rho f", "ρf", "\\rho f")],
        2 => &[
            ("\\Delta^2 f", "Δ²f", "f_{;i\\bar i j\\bar j}"),
            ("L_{Ric} f", "L_Ric f", "R_{i\\bar j} f_{;j\\bar i}"),
            ("\\rho \\Delta f", "ρΔf", "\\rho f_{;i\\bar i}"),
            ("", "", "\\rho_{;\\bar k} f_{;k} + \\rho_{;k} f_{;\\bar k}"),
            ("\\Delta\\rho f", "Δρ f", "\\rho_{;k\\bar k} f"),
            ("|R|^2 f", "|R|² f", "R_{i\\bar j k\\bar l} R_{j\\bar i l\\bar k} f"),
            ("|Ric|^2 f", "|Ric|² f", "R_{i\\bar j} R_{j\\bar i} f"),
            ("\\rho^2 f", "ρ² f", "\\rho \\rho f"),
        ],
        3 => &[
            ("\\Delta^3 f", "Δ³f", "f_{;i\\bar i j\\bar j k\\bar k}"),
            ("", "", "R_{i\\bar j} f_{;k\\bar k j\\bar i}"),
            ("", "", "R_{i\\bar j k\\bar l} f_{;j\\bar i l\\bar k}"),
            ("", "", "R_{i\\bar j;\\bar k} f_{;j\\bar i k}"),
            ("", "", "R_{i\\bar j;k} f_{;j\\bar i\\bar k}"),
            ("", "", "R_{i\\bar j k\\bar l} R_{j\\bar i m\\bar k} f_{;l\\bar m}"),
            ("", "", "R_{i\\bar j k\\bar l} R_{j\\bar i} f_{;l\\bar k}"),
            ("", "", "\\rho_{;i\\bar j} f_{;j\\bar i}"),
            ("", "", "R_{i\\bar j} R_{k\\bar i} f_{;j\\bar k}"),
        ],
        _ => return Err(Error::WeightCap { weight: k, cap: TENSOR_CAP }),
    };
    Basis::build(k, items)
}

/// Coefficients of a one-pointed weight-`k` sum over [`sigma_basis`].
pub fn to_invariant_basis(s: &GraphSum, k: usize) -> Result<Vec<Rational>, Error> {
    sigma_basis(k)?.coordinates(s)
}

/// Bilinear basis for `C_k` (`f1` takes antiholomorphic derivatives) or,
/// with `holo_first`, for `C^BT_k`.
pub fn bilinear_basis(k: usize, holo_first: bool) -> Result<Basis, Error> {
    let items: &[&str] = match (k, holo_first) {
        (0, _) => &["f1 f2"],
        (1, false) => &["f1_{;\\bar i} f2_{;i}"],
        (2, false) => &["f1_{;\\bar i\\bar j} f2_{;ij}"],
        (3, false) => &[
            "f1_{;\\bar i\\bar j\\bar k} f2_{;ijk}",
            "R_{i\\bar j k\\bar l} f1_{;\\bar i\\bar k} f2_{;jl}",
            "R_{i\\bar j k\\bar l} R_{j\\bar i m\\bar k} f1_{;\\bar m} f2_{;l}",
            "R_{i\\bar j k\\bar l} R_{j\\bar i} f1_{;\\bar k} f2_{;l}",
            "\\rho_{;i\\bar j} f1_{;\\bar i} f2_{;j}",
        ],
        (1, true) => &["f1_{;i} f2_{;\\bar i}"],
        (2, true) => &["f1_{;ij} f2_{;\\bar i\\bar j}", "R_{i\\bar j} f1_{;j} f2_{;\\bar i}"],
        (3, true) => &[
            "f1_{;ijk} f2_{;\\bar i\\bar j\\bar k}",
            "R_{i\\bar j} f1_{;jk} f2_{;\\bar i\\bar k}",
            "R_{i\\bar j k\\bar l} f1_{;jl} f2_{;\\bar i\\bar k}",
            "R_{i\\bar j;\\bar k} f1_{;jk} f2_{;\\bar i}",
            "R_{i\\bar j;k} f1_{;j} f2_{;\\bar i\\bar k}",
            "R_{i\\bar j} R_{k\\bar i} f1_{;j} f2_{;\\bar k}",
        ],
        _ => return Err(Error::WeightCap { weight: k, cap: TENSOR_CAP }),
    };
    let items: Vec<_> = items.iter().map(|e| ("", "", *e)).collect();
    Basis::build(k, &items)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Operator {
    Q,
    R,
    C,
    CBT,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Q => "Q",
            Operator::R => "R",
            Operator::C => "C",
            Operator::CBT => "CBT",
        })
    }
}

impl FromStr for Operator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "Q" => Ok(Operator::Q),
            "R" => Ok(Operator::R),
            "C" => Ok(Operator::C),
            "CBT" => Ok(Operator::CBT),
            _ => Err(Error::Parse(format!("unknown operator {s:?}"))),
        }
    }
}

impl Operator {
    /// The graph sum at weight `k`; bilinear operators are two-pointed.
    pub fn graph_sum(self, k: usize) -> Result<GraphSum, Error> {
        match self {
            Operator::Q => star_coefficient(k),
            Operator::R => Ok(table(k, Kind::R)?.to_sum()),
            Operator::C => split_sum(&star_coefficient(k)?, SplitOrder::InFirst),
            Operator::CBT => Ok(bt_coefficients(k)?.two_pointed()),
        }
    }

    pub fn basis(self, k: usize) -> Result<Basis, Error> {
        match self {
            Operator::R if k > 2 => Err(Error::Unsupported(format!("invariant form of R_{k}"))),
            Operator::Q | Operator::R => sigma_basis(k),
            Operator::C => bilinear_basis(k, false),
            Operator::CBT => bilinear_basis(k, true),
        }
    }
}

/// `Σ c_i e_i` for an operator at one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantForm {
    pub operator: Operator,
    pub order: usize,
    pub terms: Vec<(Rational, BasisElement)>,
}

impl InvariantForm {
    pub fn latex(&self) -> String {
        self.render(true)
    }

    pub fn text(&self) -> String {
        self.render(false)
    }

    fn render(&self, latex: bool) -> String {
        let items: Vec<_> = self
            .terms
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, e)| (c.clone(), if latex { e.latex.clone() } else { e.text.clone() }))
            .collect();
        render_linear(&items, latex)
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms.iter().map(|(c, _)| c.clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

pub fn invariant_form(op: Operator, k: usize) -> Result<InvariantForm, Error> {
    if k > TENSOR_CAP {
        return Err(Error::WeightCap { weight: k, cap: TENSOR_CAP });
    }
    let basis = op.basis(k)?;
    let coefficients = basis.coordinates(&op.graph_sum(k)?)?;
    Ok(InvariantForm { operator: op, order: k, terms: coefficients.into_iter().zip(basis.elements).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PointedMultiDigraph;
    use crate::rational::{int, ratio};

    #[test]
    fn low_order_forms() {
        assert_eq!(invariant_form(Operator::Q, 1).unwrap().text(), "Δf");
        assert_eq!(invariant_form(Operator::R, 1).unwrap().latex(), "\\Delta f - \\frac{1}{2} \\rho f");
        let q2 = invariant_form(Operator::Q, 2).unwrap().coefficients();
        assert_eq!(q2[..2], [ratio(1, 2), ratio(-1, 2)]);
        assert!(q2[2..].iter().all(Zero::is_zero));
        assert_eq!(invariant_form(Operator::C, 1).unwrap().latex(), "f1_{;\\bar i} f2_{;i}");
        assert_eq!(invariant_form(Operator::CBT, 1).unwrap().latex(), "-f1_{;i} f2_{;\\bar i}");
        assert_eq!(invariant_form(Operator::CBT, 1).unwrap().text(), "−f1_{;i} f2_{;i\u{304}}");
        assert!(invariant_form(Operator::R, 3).is_err());
        assert!(invariant_form(Operator::Q, 4).is_err());
    }

    #[test]
    fn basis_round_trip() {
        for k in 0..=3 {
            let b = sigma_basis(k).unwrap();
            for (i, e) in b.expansions().unwrap().iter().enumerate() {
                let v = b.coordinates(e).unwrap();
                let unit: Vec<_> = (0..v.len()).map(|j| int((i == j) as i64)).collect();
                assert_eq!(v, unit);
            }
        }
    }

    #[test]
    fn laplacian_coordinates() {
        let s = GraphSum::single(&PointedMultiDigraph::point_with_loops(1), int(1));
        assert_eq!(to_invariant_basis(&s, 1).unwrap(), vec![int(1), int(0)]);
        let lone = GraphSum::single(&PointedMultiDigraph::point_with_loops(3), int(1));
        assert_eq!(to_invariant_basis(&lone, 1), Err(Error::OutsideSpan));
    }
}
