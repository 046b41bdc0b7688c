//! Enumeration of pointed stable (and bounded-deficiency semistable)
//! multidigraphs up to isomorphism.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::det::det_minus_identity;
use crate::error::Error;
use crate::graph::{PointedMultiDigraph, Stability};

pub const WEIGHT_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    AllStable,
    Connected,
    StronglyConnected,
    Lambda,
}

impl GraphClass {
    pub const ALL: [GraphClass; 4] =
        [GraphClass::AllStable, GraphClass::Connected, GraphClass::StronglyConnected, GraphClass::Lambda];

    pub fn contains(self, g: &PointedMultiDigraph) -> bool {
        match self {
            GraphClass::AllStable => true,
            GraphClass::Connected => g.weak_components().len() <= 1,
            GraphClass::StronglyConnected => g.is_strongly_connected(),
            GraphClass::Lambda => {
                g.is_strongly_connected() && !det_minus_identity(&g.ordinary_matrix()).expect("square").eq(&0.into())
            }
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            GraphClass::AllStable => "all",
            GraphClass::Connected => "con",
            GraphClass::StronglyConnected => "scon",
            GraphClass::Lambda => "lambda",
        }
    }
}

/// Constraints on generated graphs. Ordinary vertices have indegree and
/// outdegree at least one, are never of type `(1, 1)`, and the total
/// shortfall below two on each side is bounded by `max_def_in` / `max_def_out`.
/// With both bounds zero this is exactly stability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub n_distinguished: usize,
    pub weight: usize,
    pub max_def_in: usize,
    pub max_def_out: usize,
}

impl Shape {
    pub fn stable(n_distinguished: usize, weight: usize) -> Self {
        Self { n_distinguished, weight, max_def_in: 0, max_def_out: 0 }
    }

    fn max_ordinary(&self) -> usize {
        let k = self.weight;
        let by_in = k + self.max_def_in;
        let by_out = k + self.max_def_out;
        let by_total = k + (self.max_def_in + self.max_def_out) / 2;
        by_in.min(by_out).min(by_total)
    }

    fn accepts(&self, g: &PointedMultiDigraph) -> bool {
        let (di, dout) = g.deficiency();
        di <= self.max_def_in
            && dout <= self.max_def_out
            && (g.n_distinguished()..g.order()).all(|v| g.vertex_stability(v) != Stability::Unstable)
    }
}

struct Filler<'a> {
    shape: &'a Shape,
    order: usize,
    d: usize,
    adj: Vec<u8>,
    row: Vec<usize>,
    col: Vec<usize>,
    out: HashSet<PointedMultiDigraph>,
}

impl Filler<'_> {
    fn min_in(&self) -> usize {
        if self.shape.max_def_in > 0 {
            1
        } else {
            2
        }
    }

    fn min_out(&self) -> usize {
        if self.shape.max_def_out > 0 {
            1
        } else {
            2
        }
    }

    fn row_def_used(&self, upto: usize) -> usize {
        (self.d..upto).map(|v| 2usize.saturating_sub(self.row[v])).sum()
    }

    /// Minimum number of edges still needed for the columns.
    fn col_need(&self) -> usize {
        let (mut hard, mut soft) = (0, 0);
        let min_in = self.min_in();
        for v in self.d..self.order {
            hard += min_in.saturating_sub(self.col[v]);
            soft += 2usize.saturating_sub(self.col[v]);
        }
        hard.max(soft.saturating_sub(self.shape.max_def_in))
    }

    /// Minimum edges for rows `from..`, given rows before `done` are complete.
    fn row_need(&self, from: usize, done: usize) -> usize {
        let count = self.order.saturating_sub(from.max(self.d));
        let hard = count * self.min_out();
        let used = self.row_def_used(done.max(self.d));
        let soft = (2 * count).saturating_sub(self.shape.max_def_out.saturating_sub(used));
        hard.max(soft)
    }

    fn keys_sorted(&self) -> bool {
        let g = PointedMultiDigraph::from_flat(self.d, self.order - self.d, self.adj.clone());
        let key = |v: usize| {
            let mut k: Vec<usize> = (0..self.d).map(|r| g.get(r, v) as usize).collect();
            k.extend((0..self.d).map(|c| g.get(v, c) as usize));
            k.push(g.get(v, v) as usize);
            k.push(self.col[v]);
            k.push(self.row[v]);
            k
        };
        (self.d + 1..self.order).all(|v| key(v - 1) <= key(v))
    }

    fn leaf(&mut self) {
        if !self.keys_sorted() {
            return;
        }
        let g = PointedMultiDigraph::from_flat(self.d, self.order - self.d, self.adj.clone());
        if !self.shape.accepts(&g) {
            return;
        }
        self.out.insert(g.canonical());
    }

    /// Fills cell `pos` (row-major) with `budget` edges left.
    fn fill(&mut self, pos: usize, budget: usize) {
        let n = self.order;
        if pos == n * n {
            if budget == 0 {
                self.leaf();
            }
            return;
        }
        let (i, j) = (pos / n, pos % n);
        if j == 0 && i > self.d {
            // row i-1 just completed
            let prev = i - 1;
            if self.row[prev] < self.min_out() || self.row_def_used(i) > self.shape.max_def_out {
                return;
            }
        }
        if j == 0 && i == self.d && self.d > 0 {
            // distinguished rows done: their columns must be sorted over ordinary vertices
            for v in self.d + 1..n {
                let a = (0..self.d).map(|r| self.adj[r * n + v - 1]);
                let b = (0..self.d).map(|r| self.adj[r * n + v]);
                if a.cmp(b) == std::cmp::Ordering::Greater {
                    return;
                }
            }
        }
        if budget < self.col_need().max(self.row_need(if j == 0 { i } else { i + 1 }, i)) {
            return;
        }
        let last_cell = pos + 1 == n * n;
        let lo = if last_cell { budget } else { 0 };
        for m in lo..=budget {
            if m > u8::MAX as usize {
                break;
            }
            self.adj[pos] = m as u8;
            self.row[i] += m;
            self.col[j] += m;
            if last_cell {
                // final row check
                let ok =
                    i < self.d || (self.row[i] >= self.min_out() && self.row_def_used(n) <= self.shape.max_def_out);
                if ok {
                    self.fill(pos + 1, budget - m);
                }
            } else {
                self.fill(pos + 1, budget - m);
            }
            self.row[i] -= m;
            self.col[j] -= m;
        }
        self.adj[pos] = 0;
    }
}

fn first_rows(len: usize, budget: usize) -> Vec<Vec<u8>> {
    fn rec(len: usize, budget: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for m in 0..=budget.min(u8::MAX as usize) {
            cur.push(m as u8);
            rec(len, budget - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, budget, &mut Vec::new(), &mut out);
    out
}

fn enumerate_stratum(shape: &Shape, n: usize) -> Vec<PointedMultiDigraph> {
    let d = shape.n_distinguished;
    let order = d + n;
    let edges = n + shape.weight;
    if order == 0 {
        return if edges == 0 { vec![PointedMultiDigraph::empty(0, 0)] } else { Vec::new() };
    }
    let strata = first_rows(order, edges);
    let sets: Vec<HashSet<PointedMultiDigraph>> = strata
        .par_iter()
        .filter_map(|first| {
            let used: usize = first.iter().map(|&m| m as usize).sum();
            let mut f = Filler {
                shape,
                order,
                d,
                adj: vec![0; order * order],
                row: vec![0; order],
                col: vec![0; order],
                out: HashSet::new(),
            };
            for (j, &m) in first.iter().enumerate() {
                f.adj[j] = m;
                f.col[j] += m as usize;
            }
            f.row[0] = used;
            if d == 0 && (f.row[0] < f.min_out() || 2usize.saturating_sub(f.row[0]) > shape.max_def_out) {
                return None;
            }
            if order == 1 {
                if used == edges {
                    f.leaf();
                }
            } else {
                f.fill(order, edges - used);
            }
            Some(f.out)
        })
        .collect();
    let mut all: HashSet<PointedMultiDigraph> = HashSet::new();
    for s in sets {
        all.extend(s);
    }
    let mut v: Vec<_> = all.into_iter().collect();
    v.sort();
    v
}

/// All graphs of the given shape up to isomorphism, sorted by ordinary
/// vertex count and then adjacency.
pub fn enumerate_shape(shape: &Shape) -> Vec<PointedMultiDigraph> {
    (0..=shape.max_ordinary()).flat_map(|n| enumerate_stratum(shape, n)).collect()
}

fn check_cap(k: usize) -> Result<(), Error> {
    if k > WEIGHT_CAP {
        return Err(Error::WeightCap { weight: k, cap: WEIGHT_CAP });
    }
    Ok(())
}

/// `Ġ(k)`: 1-pointed stable graphs of weight `k`.
pub fn enum_pointed_stable(k: usize) -> Result<Vec<PointedMultiDigraph>, Error> {
    check_cap(k)?;
    Ok(enumerate_shape(&Shape::stable(1, k)))
}

pub fn enum_class(k: usize, class: GraphClass) -> Result<Vec<PointedMultiDigraph>, Error> {
    Ok(filter_class(enum_pointed_stable(k)?, class))
}

pub fn filter_class(graphs: Vec<PointedMultiDigraph>, class: GraphClass) -> Vec<PointedMultiDigraph> {
    graphs.into_iter().filter(|g| class.contains(g)).collect()
}

/// `𝒢(k)`: plain stable graphs of weight `k`.
pub fn enum_plain_stable(k: usize) -> Result<Vec<PointedMultiDigraph>, Error> {
    check_cap(k)?;
    Ok(enumerate_shape(&Shape::stable(0, k)))
}

/// Semistable graphs of weight `k` with bounded deficiency.
pub fn enum_semistable(
    n_distinguished: usize,
    k: usize,
    max_def_in: usize,
    max_def_out: usize,
) -> Result<Vec<PointedMultiDigraph>, Error> {
    check_cap(k)?;
    Ok(enumerate_shape(&Shape { n_distinguished, weight: k, max_def_in, max_def_out }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_low_weights() {
        let expect = [(1, 1, 1, 1), (2, 1, 1, 1), (9, 4, 2, 1), (46, 23, 9, 5)];
        for (k, &(all, con, scon, lam)) in expect.iter().enumerate() {
            let g = enum_pointed_stable(k).unwrap();
            assert_eq!(g.len(), all, "k={k}");
            assert_eq!(filter_class(g.clone(), GraphClass::Connected).len(), con);
            assert_eq!(filter_class(g.clone(), GraphClass::StronglyConnected).len(), scon);
            assert_eq!(filter_class(g, GraphClass::Lambda).len(), lam);
        }
    }

    #[test]
    fn plain_low_weights() {
        assert_eq!(enum_plain_stable(0).unwrap(), vec![PointedMultiDigraph::empty(0, 0)]);
        let one = enum_plain_stable(1).unwrap();
        assert_eq!(one, vec![PointedMultiDigraph::from_edges(0, 1, &[(0, 0, 2)]).unwrap()]);
        for g in enum_plain_stable(3).unwrap() {
            assert!(g.is_stable());
            assert_eq!(g.weight(), 3);
        }
    }

    #[test]
    fn outputs_are_canonical_and_weighted() {
        for g in enum_pointed_stable(3).unwrap() {
            assert!(g.is_canonical());
            assert_eq!(g.weight(), 3);
            assert!(g.is_stable());
        }
    }

    #[test]
    fn classes_are_transpose_closed() {
        let all: HashSet<_> = enum_pointed_stable(3).unwrap().into_iter().collect();
        for g in &all {
            assert!(all.contains(&g.transpose().canonical()));
        }
    }

    #[test]
    fn weight_cap() {
        assert_eq!(enum_pointed_stable(7), Err(Error::WeightCap { weight: 7, cap: 6 }));
    }

    #[test]
    fn semistable_weight_one() {
        // f -> v, v -> v, v -> f is the only deficient graph besides the stable ones
        let ss = enum_semistable(1, 1, 1, 1).unwrap();
        let stable = enum_pointed_stable(1).unwrap();
        assert!(stable.iter().all(|g| ss.contains(g)));
        for g in &ss {
            assert_ne!(g.classify(), Stability::Unstable);
            assert_eq!(g.weight(), 1);
        }
        assert!(ss.len() > stable.len());
    }
}
