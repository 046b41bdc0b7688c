mod common;

use berezin::coeff::{q_coeff, r_coeff, table, z_coeff, Kind};
use berezin::det::{det_minus_identity, det_oracle};
use berezin::enumerate::{enum_plain_stable, GraphClass};
use berezin::rational::{int, ratio, Rational};
use num_traits::Zero;

use berezin::reference::{weight4_nonzero, weight4_zero};
use common::{pointed, taus};

#[test]
fn printed_weight_four_values() {
    for (g, q) in weight4_nonzero() {
        assert_eq!(q_coeff(&g).unwrap(), q, "{}", g.encode());
        assert!(GraphClass::Lambda.contains(&g));
    }
    for g in weight4_zero() {
        assert!(q_coeff(&g).unwrap().is_zero(), "{}", g.encode());
        assert!(GraphClass::StronglyConnected.contains(&g) && !GraphClass::Lambda.contains(&g));
    }
}

#[test]
fn weight_three_values() {
    let got: Vec<Rational> = taus().iter().map(|t| q_coeff(t).unwrap()).collect();
    let expected = common::rationals(&[(1, 6), (0, 1), (-1, 4), (0, 1), (0, 1), (-1, 2), (-1, 1), (1, 2), (0, 1)]);
    assert_eq!(got, expected);
}

#[test]
fn q_vanishes_off_strong_graphs() {
    let g = pointed(1, &[(0, 1, 2), (1, 1, 2)]);
    assert!(q_coeff(&g).unwrap().is_zero());
    assert_eq!(r_coeff(&g).unwrap(), ratio(1, 4));
}

#[test]
fn z_is_multiplicative_over_components() {
    for k in 0..=4 {
        for g in enum_plain_stable(k).unwrap() {
            let comps = g.weak_components();
            if comps.len() < 2 {
                continue;
            }
            let parts: Vec<_> = comps.iter().map(|c| g.induced(0, c).canonical()).collect();
            let mut product = int(1);
            for p in &parts {
                product *= z_coeff(p).unwrap();
            }
            let mut sym = int(1);
            let mut seen: Vec<(&berezin::PointedMultiDigraph, i64)> = Vec::new();
            for p in &parts {
                match seen.iter_mut().find(|(q, _)| *q == p) {
                    Some(entry) => entry.1 += 1,
                    None => seen.push((p, 1)),
                }
            }
            for (_, m) in seen {
                for i in 1..=m {
                    sym *= int(i);
                }
            }
            assert_eq!(z_coeff(&g).unwrap(), product / sym, "{}", g.encode());
        }
    }
}

#[test]
fn tables_cover_every_graph() {
    let t = table(3, Kind::Z).unwrap();
    assert_eq!(t.rows.len(), enum_plain_stable(3).unwrap().len());
    assert_eq!(t.to_json().len(), t.rows.len());
    for (g, c) in &t.rows {
        let d = det_minus_identity(&g.ordinary_matrix()).unwrap();
        assert_eq!(d, det_oracle(&g.ordinary_matrix()).unwrap());
        if d.is_zero() {
            assert!(c.is_zero());
        }
    }
}

#[test]
fn kinds_check_pointedness() {
    let plain = pointed(1, &[(1, 1, 2)]).induced(0, &[1]);
    assert!(q_coeff(&plain).is_err());
    assert_eq!(z_coeff(&plain).unwrap(), ratio(-1, 2));
    assert!(z_coeff(&pointed(0, &[(0, 0, 2)])).is_err());
}
