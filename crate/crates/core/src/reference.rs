//! Published reference values used by the self-test and the acceptance suite.

use crate::graph::PointedMultiDigraph;
use crate::graphsum::GraphSum;
use crate::rational::{int, ratio, Rational};

fn pointed(n: usize, edges: &[(usize, usize, u32)]) -> PointedMultiDigraph {
    PointedMultiDigraph::from_edges(1, n, edges).expect("valid reference graph").canonical()
}

fn rationals(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(p, q)| ratio(p, q)).collect()
}

/// Counts of pointed stable graphs for weights 0..=5: all, connected,
/// strongly connected, and strongly connected with `det(A - I) != 0`.
pub const GRAPH_COUNTS: [[usize; 6]; 4] =
    [[1, 2, 9, 46, 314, 2638], [1, 1, 4, 23, 178, 1637], [1, 1, 2, 9, 61, 538], [1, 1, 1, 5, 36, 331]];

/// The nine strongly connected weight-3 graphs `τ1..τ9`; `f` is vertex 0.
pub fn weight3_graphs() -> Vec<PointedMultiDigraph> {
    vec![
        pointed(0, &[(0, 0, 3)]),
        pointed(1, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]),
        pointed(1, &[(0, 1, 2), (1, 0, 2)]),
        pointed(1, &[(1, 1, 1), (1, 0, 1), (0, 1, 2)]),
        pointed(1, &[(1, 1, 1), (1, 0, 2), (0, 1, 1)]),
        pointed(2, &[(1, 0, 1), (0, 2, 1), (1, 2, 1), (2, 1, 2)]),
        pointed(2, &[(1, 0, 1), (0, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)]),
        pointed(1, &[(1, 1, 2), (0, 1, 1), (1, 0, 1)]),
        pointed(2, &[(1, 1, 1), (1, 0, 1), (0, 2, 1), (2, 2, 1), (2, 1, 1)]),
    ]
}

/// Coefficients of `τ1..τ9` in the weight-3 star coefficient.
pub fn weight3_q() -> Vec<Rational> {
    rationals(&[(1, 6), (0, 1), (-1, 4), (0, 1), (0, 1), (-1, 2), (-1, 1), (1, 2), (0, 1)])
}

/// Coordinates of the weight-3 star coefficient over the weight-3 invariant basis.
pub fn weight3_c() -> Vec<Rational> {
    rationals(&[(1, 6), (-1, 2), (-1, 12), (-1, 3), (-1, 3), (-1, 12), (2, 3), (-2, 3), (-1, 3)])
}

/// Invariant coordinates of `Q1`, `Q2`, `R1`, `R2` over the low-weight bases.
pub fn low_order_forms() -> Vec<(&'static str, usize, Vec<Rational>)> {
    vec![
        ("Q", 1, rationals(&[(1, 1), (0, 1)])),
        ("Q", 2, rationals(&[(1, 2), (-1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)])),
        ("R", 1, rationals(&[(1, 1), (-1, 2)])),
        ("R", 2, rationals(&[(1, 2), (-1, 2), (-1, 2), (-1, 2), (-1, 3), (-1, 24), (1, 6), (1, 8)])),
    ]
}

/// Terms of the inverse Berezin transform through order 3.
pub fn inverse_terms() -> Vec<GraphSum> {
    let t = weight3_graphs();
    let mut two = GraphSum::single(&PointedMultiDigraph::point_with_loops(2), ratio(1, 2));
    two.add_term(&pointed(1, &[(0, 1, 1), (1, 0, 1), (1, 1, 1)]), int(-1));
    let mut three = GraphSum::new();
    for (i, c) in [(0, ratio(-1, 6)), (1, int(1)), (2, ratio(1, 4)), (3, ratio(1, 2)), (4, ratio(1, 2)), (8, int(-1))] {
        three.add_term(&t[i], c);
    }
    vec![GraphSum::identity(), GraphSum::single(&PointedMultiDigraph::point_with_loops(1), int(-1)), two, three]
}

/// Coordinates of `C^BT_0..C^BT_3` over the Berezin-Toeplitz bilinear bases.
pub fn bt_forms() -> Vec<Vec<Rational>> {
    vec![
        rationals(&[(1, 1)]),
        rationals(&[(-1, 1)]),
        rationals(&[(1, 2), (1, 1)]),
        rationals(&[(-1, 6), (-1, 1), (-1, 4), (-1, 2), (-1, 2), (-1, 1)]),
    ]
}

/// Strongly connected weight-4 graphs with nonzero coefficient, with their values.
pub fn weight4_nonzero() -> Vec<(PointedMultiDigraph, Rational)> {
    let rows: Vec<(usize, Vec<(usize, usize, u32)>, (i64, i64))> = vec![
        (0, vec![(0, 0, 4)], (1, 24)),
        (1, vec![(1, 0, 2), (0, 1, 2), (0, 0, 1)], (-1, 4)),
        (1, vec![(1, 0, 2), (0, 1, 3)], (-1, 12)),
        (1, vec![(1, 0, 3), (0, 1, 2)], (-1, 12)),
        (1, vec![(1, 1, 2), (1, 0, 1), (0, 0, 1), (0, 1, 1)], (1, 2)),
        (1, vec![(1, 1, 2), (1, 0, 1), (0, 1, 2)], (1, 4)),
        (1, vec![(1, 1, 2), (1, 0, 2), (0, 1, 1)], (1, 4)),
        (1, vec![(1, 1, 3), (1, 0, 1), (0, 1, 1)], (1, 3)),
        (2, vec![(0, 2, 2), (1, 0, 2), (2, 1, 2)], (1, 8)),
        (2, vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)], (-1, 1)),
        (2, vec![(0, 1, 1), (0, 2, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)], (-1, 1)),
        (2, vec![(0, 1, 2), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)], (-1, 2)),
        (2, vec![(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 0, 1), (2, 2, 1)], (-1, 1)),
        (2, vec![(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 2, 2)], (-1, 1)),
        (2, vec![(0, 0, 1), (1, 0, 1), (1, 2, 1), (0, 2, 1), (2, 1, 2)], (-1, 2)),
        (2, vec![(0, 2, 2), (1, 0, 1), (1, 2, 1), (2, 1, 2)], (-1, 4)),
        (2, vec![(0, 1, 1), (0, 2, 1), (1, 0, 1), (1, 2, 1), (2, 1, 2)], (-1, 2)),
        (2, vec![(0, 1, 1), (1, 0, 1), (1, 2, 2), (2, 0, 1), (2, 1, 1)], (-1, 2)),
        (2, vec![(0, 2, 1), (1, 0, 1), (1, 2, 1), (2, 1, 2), (2, 2, 1)], (-1, 1)),
        (2, vec![(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 2), (2, 2, 1)], (-1, 1)),
        (2, vec![(0, 2, 1), (1, 0, 1), (1, 2, 1), (2, 1, 3)], (-1, 3)),
        (2, vec![(0, 1, 1), (1, 0, 2), (1, 2, 1), (2, 1, 1), (2, 2, 1)], (-1, 2)),
        (2, vec![(0, 2, 1), (1, 0, 2), (1, 2, 1), (2, 1, 2)], (-1, 4)),
        (2, vec![(0, 2, 1), (1, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 2)], (-1, 1)),
        (2, vec![(0, 1, 1), (1, 0, 1), (1, 2, 2), (2, 1, 2)], (-3, 4)),
        (2, vec![(0, 2, 1), (1, 0, 1), (1, 2, 2), (2, 1, 2)], (-3, 4)),
        (2, vec![(0, 1, 1), (1, 0, 1), (1, 2, 2), (2, 1, 1), (2, 2, 1)], (-1, 1)),
        (2, vec![(0, 1, 1), (1, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)], (-1, 1)),
        (2, vec![(0, 2, 1), (1, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)], (-1, 1)),
        (3, vec![(0, 1, 1), (1, 0, 1), (1, 3, 1), (2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 1, 1)], (1, 1)),
        (3, vec![(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 3, 2), (3, 2, 1), (3, 1, 1)], (3, 2)),
        (3, vec![(0, 2, 1), (1, 0, 1), (1, 3, 1), (2, 1, 1), (2, 3, 1), (3, 1, 1), (3, 2, 1)], (2, 1)),
        (3, vec![(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 2, 1), (2, 3, 1), (3, 3, 1), (3, 1, 1)], (1, 1)),
        (3, vec![(0, 2, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 3, 1), (3, 3, 1), (3, 1, 1)], (1, 1)),
        (3, vec![(0, 2, 1), (1, 0, 1), (1, 3, 1), (2, 1, 2), (3, 3, 1), (3, 2, 1)], (1, 1)),
        (3, vec![(0, 2, 1), (1, 2, 1), (1, 0, 1), (2, 3, 2), (3, 1, 2)], (3, 4)),
    ];
    rows.into_iter().map(|(n, e, (p, q))| (pointed(n, &e), ratio(p, q))).collect()
}

/// Strongly connected weight-4 graphs with vanishing coefficient.
pub fn weight4_zero() -> Vec<PointedMultiDigraph> {
    let rows: Vec<(usize, Vec<(usize, usize, u32)>)> = vec![
        (1, vec![(1, 1, 1), (1, 0, 1), (0, 0, 2), (0, 1, 1)]),
        (1, vec![(1, 1, 1), (1, 0, 1), (0, 0, 1), (0, 1, 2)]),
        (1, vec![(1, 1, 1), (1, 0, 1), (0, 1, 3)]),
        (1, vec![(1, 1, 1), (1, 0, 2), (0, 0, 1), (0, 1, 1)]),
        (1, vec![(1, 1, 1), (1, 0, 2), (0, 1, 2)]),
        (1, vec![(1, 1, 1), (1, 0, 3), (0, 1, 1)]),
        (2, vec![(0, 1, 1), (0, 2, 1), (1, 0, 2), (2, 2, 1), (2, 1, 1)]),
        (2, vec![(0, 2, 1), (1, 0, 2), (2, 2, 1), (2, 1, 2)]),
        (2, vec![(0, 1, 2), (1, 0, 1), (1, 2, 1), (2, 2, 1), (2, 0, 1)]),
        (2, vec![(0, 1, 1), (0, 2, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 0, 1)]),
        (2, vec![(0, 2, 2), (1, 1, 1), (1, 0, 1), (2, 1, 2)]),
        (2, vec![(0, 1, 1), (0, 2, 1), (1, 1, 1), (2, 2, 1), (1, 0, 1), (2, 0, 1)]),
        (2, vec![(0, 0, 1), (0, 2, 1), (1, 1, 1), (2, 2, 1), (1, 0, 1), (2, 1, 1)]),
        (2, vec![(0, 2, 2), (1, 1, 1), (2, 2, 1), (1, 0, 1), (2, 1, 1)]),
        (2, vec![(0, 1, 1), (0, 2, 1), (1, 1, 1), (2, 2, 1), (1, 0, 1), (2, 1, 1)]),
        (2, vec![(0, 1, 1), (1, 1, 1), (1, 0, 1), (1, 2, 1), (2, 2, 1), (2, 0, 1)]),
        (2, vec![(0, 2, 1), (1, 1, 1), (1, 0, 1), (2, 2, 2), (2, 1, 1)]),
        (2, vec![(0, 2, 1), (1, 1, 1), (1, 0, 1), (2, 2, 1), (2, 1, 2)]),
        (2, vec![(0, 2, 1), (1, 1, 1), (1, 0, 2), (2, 2, 1), (2, 1, 1)]),
        (2, vec![(0, 2, 1), (1, 1, 2), (1, 0, 1), (2, 2, 1), (2, 1, 1)]),
        (3, vec![(0, 2, 1), (1, 0, 1), (1, 3, 1), (2, 2, 1), (2, 3, 1), (3, 1, 2)]),
        (3, vec![(0, 1, 1), (1, 1, 1), (1, 3, 1), (2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 0, 1)]),
        (3, vec![(0, 1, 1), (2, 0, 1), (1, 3, 2), (3, 1, 1), (3, 2, 1), (2, 2, 1)]),
        (3, vec![(0, 3, 1), (1, 0, 1), (1, 1, 1), (2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 1, 1)]),
        (3, vec![(0, 2, 1), (1, 0, 1), (1, 1, 1), (2, 2, 1), (2, 3, 1), (3, 3, 1), (3, 1, 1)]),
    ];
    rows.into_iter().map(|(n, e)| pointed(n, &e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(weight3_graphs().len(), 9);
        assert_eq!(weight4_nonzero().len(), GRAPH_COUNTS[3][4]);
        assert_eq!(weight4_zero().len() + weight4_nonzero().len(), GRAPH_COUNTS[2][4]);
        assert!(weight3_graphs().iter().all(|g| g.weight() == 3 && g.is_stable()));
    }
}
