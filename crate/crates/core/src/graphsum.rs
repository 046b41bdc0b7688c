//! Formal linear combinations of canonical graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{GraphJson, PointedMultiDigraph};
use crate::rational::{self, Rational};

#[derive(Clone, Default, PartialEq, Eq)]
pub struct GraphSum {
    terms: BTreeMap<PointedMultiDigraph, Rational>,
}

/// JSON row `{"graph": ..., "value": "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub graph: GraphJson,
    pub value: String,
}

impl GraphSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(g: &PointedMultiDigraph, c: Rational) -> Self {
        let mut s = Self::new();
        s.add_term(g, c);
        s
    }

    /// The bare `f` with coefficient one.
    pub fn identity() -> Self {
        Self::single(&PointedMultiDigraph::bare_point(), Rational::one())
    }

    /// Adds `c * g`, canonicalizing `g`.
    pub fn add_term(&mut self, g: &PointedMultiDigraph, c: Rational) {
        self.add_canonical(g.canonical(), c);
    }

    /// Adds `c * g` for an already canonical `g`.
    pub fn add_canonical(&mut self, g: PointedMultiDigraph, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.n_distinguished().is_none_or(|d| d == g.n_distinguished()));
        let e = self.terms.entry(g);
        match e {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_sum(&mut self, other: &GraphSum, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (g, c) in &other.terms {
            self.add_canonical(g.clone(), c * scale);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut s = Self::new();
        s.add_sum(self, c);
        s
    }

    pub fn get(&self, g: &PointedMultiDigraph) -> Rational {
        self.terms.get(&g.canonical()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PointedMultiDigraph, &Rational)> {
        self.terms.iter()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &PointedMultiDigraph> {
        self.terms.keys()
    }

    pub fn n_distinguished(&self) -> Option<usize> {
        self.terms.keys().next().map(|g| g.n_distinguished())
    }

    /// Checks that all terms share one distinguished-vertex count.
    pub fn check_pointedness(&self) -> Result<usize, Error> {
        let d = self.n_distinguished().ok_or(Error::EmptySum)?;
        for g in self.terms.keys() {
            if g.n_distinguished() != d {
                return Err(Error::MixedPointedness(d, g.n_distinguished()));
            }
        }
        Ok(d)
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(&PointedMultiDigraph) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, c)| (g.clone(), c.clone())).collect() }
    }

    /// Applies a graph map term by term; images are canonicalized.
    pub fn map_graphs(&self, f: impl Fn(&PointedMultiDigraph) -> PointedMultiDigraph) -> Self {
        let mut s = Self::new();
        for (g, c) in &self.terms {
            s.add_term(&f(g), c.clone());
        }
        s
    }

    pub fn transpose(&self) -> Self {
        self.map_graphs(|g| g.transpose())
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(g, c)| TermJson { graph: g.to_json(), value: rational::format(c) }).collect()
    }

    pub fn from_json(rows: &[TermJson]) -> Result<Self, Error> {
        let mut s = Self::new();
        for r in rows {
            s.add_term(&PointedMultiDigraph::from_json(&r.graph)?, rational::parse(&r.value)?);
        }
        Ok(s)
    }
}

impl FromIterator<(PointedMultiDigraph, Rational)> for GraphSum {
    fn from_iter<I: IntoIterator<Item = (PointedMultiDigraph, Rational)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (g, c) in iter {
            s.add_term(&g, c);
        }
        s
    }
}

impl Add for &GraphSum {
    type Output = GraphSum;
    fn add(self, rhs: &GraphSum) -> GraphSum {
        let mut s = self.clone();
        s.add_sum(rhs, &Rational::one());
        s
    }
}

impl Sub for &GraphSum {
    type Output = GraphSum;
    fn sub(self, rhs: &GraphSum) -> GraphSum {
        let mut s = self.clone();
        s.add_sum(rhs, &-Rational::one());
        s
    }
}

impl Neg for &GraphSum {
    type Output = GraphSum;
    fn neg(self) -> GraphSum {
        self.scaled(&-Rational::one())
    }
}

impl fmt::Debug for GraphSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GraphSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{} {}", rational::format(c), g)?;
        }
        Ok(())
    }
}

impl Serialize for GraphSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<TermJson>::deserialize(d)?;
        Self::from_json(&rows).map_err(serde::de::Error::custom)
    }
}
