//! Exact solve of `Σ x_j columns[j] = target` over graph coordinates.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::Error;
use crate::graph::PointedMultiDigraph;
use crate::graphsum::GraphSum;
use crate::rational::Rational;

/// The unique coefficients expressing `target` in `columns`.
pub fn solve(columns: &[GraphSum], target: &GraphSum) -> Result<Vec<Rational>, Error> {
    let rows: Vec<&PointedMultiDigraph> = columns
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|s| s.graphs())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = columns.len();
    let mut m: Vec<Vec<Rational>> =
        rows.iter().map(|g| columns.iter().map(|c| c.get(g)).chain(std::iter::once(target.get(g))).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            return Err(Error::SingularBasis(format!("basis element {} is dependent on the others", c + 1)));
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::OutsideSpan);
    }
    Ok(pivots.into_iter().map(|r| m[r][n].clone()).collect())
}
