#![allow(dead_code)]

use berezin::rational::{ratio, Rational};
use berezin::PointedMultiDigraph;

pub use berezin::reference::weight3_graphs as taus;

pub fn pointed(n: usize, edges: &[(usize, usize, u32)]) -> PointedMultiDigraph {
    PointedMultiDigraph::from_edges(1, n, edges).unwrap().canonical()
}

pub fn rationals(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, q)| ratio(p, q)).collect()
}
