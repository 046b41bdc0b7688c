use std::collections::BTreeSet;

use berezin::enumerate::{enum_class, enum_plain_stable, enum_pointed_stable, enum_semistable, GraphClass};
use berezin::PointedMultiDigraph;

/// Every way to place `total` edges into `cells` slots.
fn fill(cells: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == cells {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for m in 0..=total {
        prefix.push(m);
        fill(cells, total - m, prefix, out);
        prefix.pop();
    }
}

fn brute_force(d: usize, k: usize) -> BTreeSet<PointedMultiDigraph> {
    let mut found = BTreeSet::new();
    for n in 0..=k {
        let size = d + n;
        if size == 0 {
            if k == 0 {
                found.insert(PointedMultiDigraph::empty(0, 0));
            }
            continue;
        }
        let mut fills = Vec::new();
        fill(size * size, (k + n) as u32, &mut Vec::new(), &mut fills);
        for flat in fills {
            let adj: Vec<Vec<u32>> = flat.chunks(size).map(|r| r.to_vec()).collect();
            let g = PointedMultiDigraph::new(d, &adj).unwrap();
            if g.is_stable() {
                found.insert(g.canonical());
            }
        }
    }
    found
}

#[test]
fn pointed_enumeration_is_complete() {
    for k in 0..=3 {
        let listed = enum_pointed_stable(k).unwrap();
        let set: BTreeSet<_> = listed.iter().cloned().collect();
        assert_eq!(set.len(), listed.len(), "duplicates at k={k}");
        assert_eq!(set, brute_force(1, k), "k={k}");
    }
}

#[test]
fn plain_enumeration_is_complete() {
    for k in 0..=3 {
        let listed = enum_plain_stable(k).unwrap();
        let set: BTreeSet<_> = listed.iter().cloned().collect();
        assert_eq!(set.len(), listed.len(), "duplicates at k={k}");
        assert_eq!(set, brute_force(0, k), "k={k}");
    }
}

#[test]
fn class_counts_at_weight_three() {
    let counts: Vec<_> = GraphClass::ALL.iter().map(|&c| enum_class(3, c).unwrap().len()).collect();
    assert_eq!(counts, vec![46, 23, 9, 5]);
}

#[test]
fn semistable_graphs_respect_deficiency() {
    for g in enum_semistable(1, 2, 1, 1).unwrap() {
        let (din, dout) = g.deficiency();
        assert!(din <= 1 && dout <= 1);
        assert_eq!(g.weight(), 2);
    }
    let stable = enum_semistable(1, 2, 0, 0).unwrap();
    assert_eq!(stable.len(), 9);
}

#[test]
fn caps() {
    assert!(enum_pointed_stable(7).is_err());
    assert!(enum_plain_stable(7).is_err());
}
