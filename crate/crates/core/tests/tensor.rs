mod common;

use berezin::graphsum::GraphSum;
use berezin::rational::{int, ratio, Rational};
use berezin::tensor::{
    expand_combination, expand_to_graphs, invariant_form, parse_combination, sigma_basis, to_invariant_basis, Operator,
    TensorTerm,
};
use berezin::PointedMultiDigraph;

use common::{pointed, rationals, taus};

/// `(-1)^d` where `d` counts curvature factors, for the nine weight-3 basis elements.
const CURVATURE_DEGREE: [u32; 9] = [0, 1, 1, 1, 1, 2, 2, 1, 2];

fn flipped(v: &[i64]) -> Vec<Rational> {
    v.iter().zip(CURVATURE_DEGREE).map(|(&c, d)| int(c * (-1i64).pow(d))).collect()
}

#[test]
fn tau_relations_up_to_curvature_sign() {
    let printed: [[i64; 9]; 9] = [
        [1, 3, 2, 2, 2, 1, 4, 1, -2],
        [0, 1, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 2, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 1],
    ];
    for (tau, row) in taus().iter().zip(printed) {
        let v = to_invariant_basis(&GraphSum::single(tau, int(1)), 3).unwrap();
        assert_eq!(v, flipped(&row), "{}", tau.encode());
    }
}

#[test]
fn tau8_from_sigmas() {
    let b = sigma_basis(3).unwrap();
    let e = b.expansions().unwrap();
    let mut s = GraphSum::new();
    s.add_sum(&e[5], &int(1));
    s.add_sum(&e[6], &int(2));
    s.add_sum(&e[7], &int(-1));
    assert_eq!(s, GraphSum::single(&taus()[7], int(1)));
}

#[test]
fn small_expansions() {
    let lap: TensorTerm = "f_{;i\\bar i}".parse().unwrap();
    assert_eq!(expand_to_graphs(&lap).unwrap(), GraphSum::single(&PointedMultiDigraph::point_with_loops(1), int(1)));
    let rho: TensorTerm = "\\rho f".parse().unwrap();
    let v = PointedMultiDigraph::from_edges(1, 1, &[(1, 1, 2)]).unwrap();
    assert_eq!(expand_to_graphs(&rho).unwrap(), GraphSum::single(&v, int(-1)));
    let sum = parse_combination("f_{;i\\bar i} - \\frac{1}{2} \\rho f").unwrap();
    let mut r1 = GraphSum::single(&PointedMultiDigraph::point_with_loops(1), int(1));
    r1.add_term(&v, ratio(1, 2));
    assert_eq!(expand_combination(&sum).unwrap(), r1);
}

#[test]
fn weight_cap() {
    let t: TensorTerm = "f_{;i\\bar i j\\bar j k\\bar k l\\bar l}".parse().unwrap();
    assert!(expand_to_graphs(&t).is_err());
    assert!(sigma_basis(4).is_err());
}

#[test]
fn q3_form() {
    let q3 = invariant_form(Operator::Q, 3).unwrap();
    let expected = rationals(&[(1, 6), (-1, 2), (-1, 12), (-1, 3), (-1, 3), (-1, 12), (2, 3), (-2, 3), (-1, 3)]);
    assert_eq!(q3.coefficients(), expected);
}

#[test]
fn c2_form() {
    let c2 = invariant_form(Operator::C, 2).unwrap();
    assert_eq!(c2.latex(), "\\frac{1}{2} f1_{;\\bar i\\bar j} f2_{;ij}");
}

#[test]
fn c3_form() {
    let c3 = invariant_form(Operator::C, 3).unwrap();
    assert_eq!(c3.coefficients(), rationals(&[(1, 6), (1, 4), (0, 1), (0, 1), (-1, 2)]));
    assert_eq!(
        c3.latex(),
        "\\frac{1}{6} f1_{;\\bar i\\bar j\\bar k} f2_{;ijk} + \\frac{1}{4} R_{i\\bar j k\\bar l} f1_{;\\bar i\\bar k} f2_{;jl} - \\frac{1}{2} \\rho_{;i\\bar j} f1_{;\\bar i} f2_{;j}"
    );
}

#[test]
fn bt_rendering() {
    assert_eq!(invariant_form(Operator::CBT, 0).unwrap().latex(), "f1 f2");
    assert_eq!(invariant_form(Operator::CBT, 1).unwrap().latex(), "-f1_{;i} f2_{;\\bar i}");
    assert_eq!(
        invariant_form(Operator::CBT, 2).unwrap().latex(),
        "\\frac{1}{2} f1_{;ij} f2_{;\\bar i\\bar j} + R_{i\\bar j} f1_{;j} f2_{;\\bar i}"
    );
    let c3 = invariant_form(Operator::CBT, 3).unwrap();
    assert_eq!(c3.text(), invariant_form(Operator::CBT, 3).unwrap().text());
    assert!(c3.latex().starts_with("-\\frac{1}{6} f1_{;ijk} f2_{;\\bar i\\bar j\\bar k}"));
}

#[test]
fn bilinear_basis_rejects_outside_span() {
    let s = GraphSum::single(&pointed(0, &[(0, 0, 3)]), int(1));
    assert!(berezin::tensor::bilinear_basis(3, false).unwrap().coordinates(&s).is_err());
}
