//! Closed-form coefficients attached to graphs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::det::det_minus_identity;
use crate::enumerate::{enum_plain_stable, enum_pointed_stable};
use crate::error::Error;
use crate::graph::PointedMultiDigraph;
use crate::graphsum::{GraphSum, TermJson};
use crate::rational::{sign, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Q,
    R,
    Z,
    ScalarR,
    QPrime,
    RPrime,
    ZPrime,
    ScalarRPrime,
}

impl Kind {
    pub const ALL: [Kind; 8] =
        [Kind::Q, Kind::R, Kind::Z, Kind::ScalarR, Kind::QPrime, Kind::RPrime, Kind::ZPrime, Kind::ScalarRPrime];

    /// Distinguished-vertex count of the graphs this kind is defined on.
    pub fn pointedness(self) -> usize {
        match self {
            Kind::Q | Kind::R | Kind::QPrime | Kind::RPrime => 1,
            _ => 0,
        }
    }

    fn rule(self) -> Rule {
        use Factor::*;
        use Gate::*;
        match self {
            Kind::Q => Rule { factor: Det, gate: Strong, component_sign: false },
            Kind::R => Rule { factor: Det, gate: Always, component_sign: false },
            Kind::Z => Rule { factor: Det, gate: AllComponentsStrong, component_sign: true },
            Kind::ScalarR => Rule { factor: Det, gate: Always, component_sign: false },
            Kind::QPrime => Rule { factor: VertexSign, gate: Strong, component_sign: false },
            Kind::RPrime => Rule { factor: VertexSign, gate: Always, component_sign: false },
            Kind::ZPrime => Rule { factor: VertexSign, gate: AllComponentsStrong, component_sign: true },
            Kind::ScalarRPrime => Rule { factor: VertexSign, gate: Always, component_sign: false },
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Q => "Q",
            Kind::R => "R",
            Kind::Z => "z",
            Kind::ScalarR => "r",
            Kind::QPrime => "Qf",
            Kind::RPrime => "Rf",
            Kind::ZPrime => "zf",
            Kind::ScalarRPrime => "rf",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Kind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown coefficient kind {s:?}")))
    }
}

#[derive(Clone, Copy)]
enum Factor {
    /// `det(A - I)` over the ordinary vertices.
    Det,
    /// `(-1)^{|V|}` over the ordinary vertices.
    VertexSign,
}

#[derive(Clone, Copy)]
enum Gate {
    Always,
    Strong,
    AllComponentsStrong,
}

#[derive(Clone, Copy)]
struct Rule {
    factor: Factor,
    gate: Gate,
    /// Multiply by `(-1)^{#components}`.
    component_sign: bool,
}

fn evaluate(g: &PointedMultiDigraph, rule: Rule) -> Rational {
    let components = match rule.gate {
        Gate::Always => 0,
        Gate::Strong => {
            if !g.is_strongly_connected() {
                return Rational::zero();
            }
            0
        }
        Gate::AllComponentsStrong => {
            let comps = g.weak_components();
            for c in &comps {
                if !g.induced(0, c).is_strongly_connected() {
                    return Rational::zero();
                }
            }
            comps.len()
        }
    };
    let numerator = match rule.factor {
        Factor::Det => det_minus_identity(&g.ordinary_matrix()).expect("square matrix"),
        Factor::VertexSign => {
            if g.n_ordinary() % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        }
    };
    let mut value = Rational::new(numerator, BigInt::from(g.aut_order()));
    if rule.component_sign {
        value *= sign(components);
    }
    value
}

fn require(g: &PointedMultiDigraph, d: usize) -> Result<(), Error> {
    if g.n_distinguished() != d {
        return Err(Error::Pointedness { expected: d, found: g.n_distinguished() });
    }
    Ok(())
}

/// Coefficient of the given kind; checks pointedness.
pub fn coefficient(kind: Kind, g: &PointedMultiDigraph) -> Result<Rational, Error> {
    require(g, kind.pointedness())?;
    Ok(evaluate(g, kind.rule()))
}

/// `Q_Γ = det(A(Γ₋) - I) / |Aut Γ|` for strongly connected `Γ`, else 0.
pub fn q_coeff(g: &PointedMultiDigraph) -> Result<Rational, Error> {
    coefficient(Kind::Q, g)
}

/// `R_Γ = det(A(Γ₋) - I) / |Aut Γ|`.
pub fn r_coeff(g: &PointedMultiDigraph) -> Result<Rational, Error> {
    coefficient(Kind::R, g)
}

/// `(-1)^n det(A - I) / |Aut G|` when all `n` components are strongly connected, else 0.
pub fn z_coeff(g: &PointedMultiDigraph) -> Result<Rational, Error> {
    coefficient(Kind::Z, g)
}

pub fn q_prime(g: &PointedMultiDigraph) -> Result<Rational, Error> {
    coefficient(Kind::QPrime, g)
}

pub fn r_prime(g: &PointedMultiDigraph) -> Result<Rational, Error> {
    coefficient(Kind::RPrime, g)
}

pub fn z_prime(g: &PointedMultiDigraph) -> Result<Rational, Error> {
    coefficient(Kind::ZPrime, g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub weight: usize,
    pub kind: Kind,
    pub rows: Vec<(PointedMultiDigraph, Rational)>,
}

impl CoefficientTable {
    pub fn to_sum(&self) -> GraphSum {
        self.rows.iter().map(|(g, c)| (g.clone(), c.clone())).collect()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.rows.iter().map(|(g, c)| TermJson { graph: g.to_json(), value: crate::rational::format(c) }).collect()
    }
}

/// Coefficients of `kind` on every stable graph of weight `k` (zeros included).
pub fn table(k: usize, kind: Kind) -> Result<CoefficientTable, Error> {
    let graphs = if kind.pointedness() == 1 { enum_pointed_stable(k)? } else { enum_plain_stable(k)? };
    Ok(table_over(k, kind, graphs))
}

pub fn table_over(k: usize, kind: Kind, graphs: Vec<PointedMultiDigraph>) -> CoefficientTable {
    let rule = kind.rule();
    let rows = graphs.into_par_iter().map(|g| {
        let c = evaluate(&g, rule);
        (g, c)
    });
    CoefficientTable { weight: k, kind, rows: rows.collect() }
}

/// `r_k` or `r′_k` as a table over `𝒢(k)`.
pub fn scalar_table(k: usize, prime: bool) -> Result<CoefficientTable, Error> {
    table(k, if prime { Kind::ScalarRPrime } else { Kind::ScalarR })
}
