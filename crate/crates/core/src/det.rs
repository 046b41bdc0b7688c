//! Exact `det(A - I)` by fraction-free elimination, and an independent
//! evaluation through linear subgraphs (cycle covers of vertex subsets).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::graph::IntMatrix;

fn check_square(a: &IntMatrix) -> Result<usize, Error> {
    let n = a.len();
    for (row, r) in a.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { rows: n, row, len: r.len() });
        }
    }
    Ok(n)
}

/// Bareiss determinant of a square integer matrix. The 0x0 determinant is 1.
pub fn determinant(a: &IntMatrix) -> Result<BigInt, Error> {
    let n = check_square(a)?;
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    Ok(if n == 0 { sign } else { sign * &m[n - 1][n - 1] })
}

pub fn det_minus_identity(a: &IntMatrix) -> Result<BigInt, Error> {
    let n = check_square(a)?;
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate().take(n) {
        row[i] -= 1;
    }
    determinant(&m)
}

/// Coefficients `c_1..c_n` with `c_i` the signed count of linear subgraphs on
/// `i` vertices: each is a vertex-disjoint union of directed cycles covering
/// the subset, weighted by the product of edge multiplicities and signed by
/// `(-1)^{#cycles}`.
pub fn linear_subgraph_coefficients(a: &IntMatrix) -> Result<Vec<BigInt>, Error> {
    let n = check_square(a)?;
    if a.iter().flatten().any(|x| x.is_negative()) {
        return Err(Error::InvalidGraph("negative multiplicity".into()));
    }
    let mut c = vec![BigInt::zero(); n + 1];
    for mask in 1u32..(1u32 << n) {
        let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut image = vec![usize::MAX; n];
        let mut total = BigInt::zero();
        covers(a, &verts, 0, mask, &mut image, &mut total);
        c[verts.len()] += total;
    }
    c.remove(0);
    Ok(c)
}

fn covers(a: &IntMatrix, verts: &[usize], idx: usize, free: u32, image: &mut [usize], total: &mut BigInt) {
    if idx == verts.len() {
        let mut weight = BigInt::one();
        for &v in verts {
            weight *= &a[v][image[v]];
        }
        let mut seen = 0u32;
        let mut cycles = 0;
        for &v in verts {
            if seen >> v & 1 == 0 {
                cycles += 1;
                let mut u = v;
                while seen >> u & 1 == 0 {
                    seen |= 1 << u;
                    u = image[u];
                }
            }
        }
        if cycles % 2 == 1 {
            weight = -weight;
        }
        *total += weight;
        return;
    }
    let v = verts[idx];
    for &w in verts {
        if free >> w & 1 == 1 && !a[v][w].is_zero() {
            image[v] = w;
            covers(a, verts, idx + 1, free & !(1 << w), image, total);
        }
    }
}

/// `(-1)^n (1 + c_1 + ... + c_n)`, which equals `det(A - I)`.
pub fn det_oracle(a: &IntMatrix) -> Result<BigInt, Error> {
    let n = check_square(a)?;
    if n > 20 {
        return Err(Error::Unsupported(format!("oracle on {n} vertices")));
    }
    let c = linear_subgraph_coefficients(a)?;
    let s: BigInt = BigInt::one() + c.iter().sum::<BigInt>();
    Ok(if n % 2 == 0 { s } else { -s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn det_minus_identity_examples() {
        for k in 0..5 {
            assert_eq!(det_minus_identity(&mat(&[&[k]])).unwrap(), BigInt::from(k - 1));
        }
        assert_eq!(det_minus_identity(&Vec::new()).unwrap(), BigInt::one());
        assert_eq!(det_minus_identity(&mat(&[&[0, 1], &[1, 1]])).unwrap(), BigInt::from(-1));
        assert!(matches!(det_minus_identity(&mat(&[&[0, 1]])), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn oracle_examples() {
        let a = mat(&[&[0, 1], &[1, 1]]);
        assert_eq!(linear_subgraph_coefficients(&a).unwrap(), vec![BigInt::from(-1), BigInt::from(-1)]);
        assert_eq!(det_oracle(&a).unwrap(), BigInt::from(-1));
        let b = mat(&[&[2]]);
        assert_eq!(linear_subgraph_coefficients(&b).unwrap(), vec![BigInt::from(-2)]);
        assert_eq!(det_oracle(&b).unwrap(), BigInt::one());
        for n in 0..5 {
            let z: IntMatrix = vec![vec![BigInt::zero(); n]; n];
            let expect = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(det_oracle(&z).unwrap(), BigInt::from(expect));
        }
    }

    #[test]
    fn bareiss_with_pivoting() {
        let a = mat(&[&[0, 2, 1], &[3, 0, 4], &[1, 1, 0]]);
        // 0*(0-4) - 2*(0-4) + 1*(3-0)
        assert_eq!(determinant(&a).unwrap(), BigInt::from(11));
    }

    proptest! {
        #[test]
        fn oracle_matches_elimination(n in 0usize..5, entries in proptest::collection::vec(0i64..4, 25)) {
            let a: IntMatrix = (0..n).map(|i| (0..n).map(|j| BigInt::from(entries[i * 5 + j])).collect()).collect();
            prop_assert_eq!(det_oracle(&a).unwrap(), det_minus_identity(&a).unwrap());
            let t: IntMatrix = (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect();
            prop_assert_eq!(det_minus_identity(&t).unwrap(), det_minus_identity(&a).unwrap());
        }
    }
}
