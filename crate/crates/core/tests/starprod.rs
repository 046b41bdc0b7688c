use berezin::graphsum::GraphSum;
use berezin::rational::int;
use berezin::starprod::{
    assoc_check, berezin_series, bt_coefficients, compose, invert_series, is_left_inverse, loi_recursion_check,
    orbit_check, single_slot_orbit_example, split_sum, star_coefficient, substitute_slot, Attach, BtCoefficient,
    LoiOrientation, LoiVerdict, SplitOrder,
};
use berezin::PointedMultiDigraph;

#[test]
fn one_is_the_unit() {
    for k in 1..=5 {
        for (g, _) in star_coefficient(k).unwrap().iter() {
            let (i, o) = g.degrees(0).unwrap();
            assert!(i >= 1 && o >= 1, "{}", g.encode());
        }
    }
}

#[test]
fn conjugation_symmetry() {
    for k in 0..=4 {
        let c = star_coefficient(k).unwrap();
        assert_eq!(c.transpose(), c);
    }
}

#[test]
fn weight_is_additive() {
    let outer = star_coefficient(2).unwrap();
    let inner = star_coefficient(2).unwrap();
    let glued = substitute_slot(&outer, 0, &inner, Attach::VERTICES).unwrap();
    assert!(!glued.is_zero());
    assert!(glued.graphs().all(|g| g.weight() == 4));
}

#[test]
fn inverse_round_trip() {
    let s = berezin_series(4).unwrap();
    let p = invert_series(&s).unwrap();
    assert!(is_left_inverse(&p, &s).unwrap());
    let c = compose(&p, &s).unwrap();
    assert_eq!(c.term(0), &GraphSum::identity());
    assert!(c.terms()[1..].iter().all(|t| t.is_zero()));
}

#[test]
fn bt_presentation() {
    for k in 0..=3 {
        let bt = bt_coefficients(k).unwrap();
        let two = bt.two_pointed();
        assert!(two.graphs().all(|g| g.n_distinguished() == 2));
        if let BtCoefficient::Fused(one) = &bt {
            assert_eq!(split_sum(one, SplitOrder::OutFirst).unwrap(), two);
        }
    }
    let fused = match bt_coefficients(1).unwrap() {
        BtCoefficient::Fused(s) => s,
        other => panic!("{other:?}"),
    };
    assert_eq!(fused, GraphSum::single(&PointedMultiDigraph::point_with_loops(1), int(-1)));
}

#[test]
fn associativity_and_orbits() {
    for k in 0..=3 {
        let report = assoc_check(k).unwrap();
        assert!(report.pass && report.difference.is_empty());
        assert!(orbit_check(k).unwrap().pass());
    }
    assert!(assoc_check(5).is_err());
    assert!(orbit_check(5).is_err());
}

#[test]
fn single_slot_composition_breaks_the_orbit_count() {
    let (g, m, aut, expected) = single_slot_orbit_example().unwrap();
    assert_eq!(g, PointedMultiDigraph::point_with_loops(2));
    assert_eq!((m, aut, expected), (1, 2, 1));
}

#[test]
fn loi_calibration() {
    for k in 0..=3 {
        let report = loi_recursion_check(k).unwrap();
        assert_eq!(report.verdict, LoiVerdict::Pass, "k={k}");
        assert_eq!(report.orientation, Some(LoiOrientation::SinkTakesIn));
        assert!(report.mismatches.is_empty());
    }
    assert!(loi_recursion_check(4).is_err());
}
