//! Splitting the distinguished vertex into an in-slot and an out-slot, and
//! the inverse fusion.

use crate::error::Error;
use crate::graph::PointedMultiDigraph;
use crate::graphsum::GraphSum;

/// Which new slot receives the former in-edges of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitOrder {
    /// `f1` receives all in-edges, `f2` emits all out-edges.
    InFirst,
    /// `f1` emits all out-edges, `f2` receives all in-edges.
    OutFirst,
}

/// Replaces `f` by `f1` (in-edges) and `f2` (out-edges); a loop at `f`
/// becomes an edge `f2 -> f1`.
pub fn partition_split(g: &PointedMultiDigraph) -> Result<PointedMultiDigraph, Error> {
    split_with(g, SplitOrder::InFirst)
}

pub fn split_with(g: &PointedMultiDigraph, order: SplitOrder) -> Result<PointedMultiDigraph, Error> {
    if g.n_distinguished() != 1 {
        return Err(Error::Pointedness { expected: 1, found: g.n_distinguished() });
    }
    let (sink, source) = match order {
        SplitOrder::InFirst => (0, 1),
        SplitOrder::OutFirst => (1, 0),
    };
    let n = g.order();
    let mut out = PointedMultiDigraph::empty(2, g.n_ordinary());
    let map = |v: usize| v + 1;
    for i in 0..n {
        for j in 0..n {
            let m = g.get(i, j);
            if m == 0 {
                continue;
            }
            let a = if i == 0 { source } else { map(i) };
            let b = if j == 0 { sink } else { map(j) };
            out.set(a, b, m);
        }
    }
    Ok(out.canonical())
}

pub fn split_sum(s: &GraphSum, order: SplitOrder) -> Result<GraphSum, Error> {
    let mut out = GraphSum::new();
    for (g, c) in s.iter() {
        out.add_canonical(split_with(g, order)?, c.clone());
    }
    Ok(out)
}

/// Inverse of [`split_with`]: merges the two distinguished vertices when the
/// sink has outdegree zero and the source indegree zero.
pub fn fuse(g: &PointedMultiDigraph, order: SplitOrder) -> Option<PointedMultiDigraph> {
    if g.n_distinguished() != 2 {
        return None;
    }
    let (sink, source) = match order {
        SplitOrder::InFirst => (0, 1),
        SplitOrder::OutFirst => (1, 0),
    };
    if g.outdegree(sink) != 0 || g.indegree(source) != 0 {
        return None;
    }
    let n = g.order();
    let mut out = PointedMultiDigraph::empty(1, g.n_ordinary());
    let map = |v: usize| if v < 2 { 0 } else { v - 1 };
    for i in 0..n {
        for j in 0..n {
            let m = g.get(i, j);
            if m > 0 {
                let (a, b) = (map(i), map(j));
                out.set(a, b, out.get(a, b) + m);
            }
        }
    }
    Some(out.canonical())
}

/// Fuses every term, or returns `None` if some term is not a split graph.
pub fn fuse_sum(s: &GraphSum, order: SplitOrder) -> Option<GraphSum> {
    let mut out = GraphSum::new();
    for (g, c) in s.iter() {
        out.add_canonical(fuse(g, order)?, c.clone());
    }
    Some(out)
}
