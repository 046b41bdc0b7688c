//! Covariant derivatives in metric derivatives, evaluated at the centre of
//! normal coordinates.

use std::collections::HashMap;

use crate::error::Error;
use crate::graph::PointedMultiDigraph;
use crate::graphsum::GraphSum;
use crate::rational::Rational;

use super::term::{Factor, Head, TensorTerm};

type Label = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Holo,
    Anti,
}

impl Kind {
    fn of(bar: bool) -> Self {
        if bar {
            Kind::Anti
        } else {
            Kind::Holo
        }
    }
}

#[derive(Debug, Clone)]
enum Atom {
    /// Partial derivatives of a function.
    F { slot: usize, holo: Vec<Label>, anti: Vec<Label> },
    /// Partial derivatives `g_{a\bar b, ...}`, the metric's own indices included.
    G { holo: Vec<Label>, anti: Vec<Label> },
    /// `g^{a\bar b}`.
    Inv { holo: Label, anti: Label },
}

impl Atom {
    fn lower_mut(&mut self, kind: Kind) -> Option<&mut Vec<Label>> {
        match (self, kind) {
            (Atom::F { holo, .. } | Atom::G { holo, .. }, Kind::Holo) => Some(holo),
            (Atom::F { anti, .. } | Atom::G { anti, .. }, Kind::Anti) => Some(anti),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
struct Mono {
    coef: i64,
    atoms: Vec<Atom>,
}

impl Mono {
    fn rename_lower(&mut self, kind: Kind, from: Label, to: Label) {
        for a in &mut self.atoms {
            if let Some(v) = a.lower_mut(kind) {
                for l in v.iter_mut().filter(|l| **l == from) {
                    *l = to;
                }
            }
        }
    }

    /// Derivatives of each kind still needed before every metric factor can
    /// be nonzero at the centre.
    fn deficit(&self) -> [usize; 2] {
        let mut d = [0, 0];
        for a in &self.atoms {
            if let Atom::G { holo, anti } = a {
                d[0] += 2usize.saturating_sub(holo.len());
                d[1] += 2usize.saturating_sub(anti.len());
            }
        }
        d
    }
}

/// A tensor with ordered free lower indices, as a sum of monomials.
#[derive(Debug, Clone)]
struct Expr {
    free: Vec<(Label, Kind)>,
    monos: Vec<Mono>,
    next: Label,
}

impl Expr {
    fn fresh(&mut self) -> Label {
        self.next += 1;
        self.next
    }

    fn function(slot: usize) -> Self {
        let atoms = vec![Atom::F { slot, holo: Vec::new(), anti: Vec::new() }];
        Self { free: Vec::new(), monos: vec![Mono { coef: 1, atoms }], next: 0 }
    }

    /// `R_{i\bar j k\bar l} = -g_{i\bar j k\bar l} + g^{m\bar p} g_{m\bar j\bar l} g_{ik\bar p}`.
    fn riemann() -> Self {
        let (i, j, k, l, m, p) = (1, 2, 3, 4, 5, 6);
        let free = vec![(i, Kind::Holo), (j, Kind::Anti), (k, Kind::Holo), (l, Kind::Anti)];
        let monos = vec![
            Mono { coef: -1, atoms: vec![Atom::G { holo: vec![i, k], anti: vec![j, l] }] },
            Mono {
                coef: 1,
                atoms: vec![
                    Atom::Inv { holo: m, anti: p },
                    Atom::G { holo: vec![m], anti: vec![j, l] },
                    Atom::G { holo: vec![i, k], anti: vec![p] },
                ],
            },
        ];
        Self { free, monos, next: p }
    }

    /// Contracts free positions `a` (holomorphic) and `b` (antiholomorphic).
    fn contract(mut self, a: usize, b: usize) -> Self {
        let (la, ka) = self.free[a];
        let (lb, kb) = self.free[b];
        debug_assert!(ka == Kind::Holo && kb == Kind::Anti);
        for m in &mut self.monos {
            m.atoms.push(Atom::Inv { holo: la, anti: lb });
        }
        self.free.retain(|(l, _)| *l != la && *l != lb);
        self
    }

    fn head(head: Head) -> Self {
        match head {
            Head::Riemann => Self::riemann(),
            Head::Ricci => Self::riemann().contract(2, 3),
            Head::Scalar => Self::riemann().contract(2, 3).contract(0, 1),
            Head::Function(_) => Self::function(head.slot().expect("function head")),
        }
    }

    fn covariant(&mut self, kind: Kind) {
        let x = self.fresh();
        let monos = std::mem::take(&mut self.monos);
        let mut out = Vec::with_capacity(monos.len() * 4);
        for m in &monos {
            for (ai, atom) in m.atoms.iter().enumerate() {
                let mut d = m.clone();
                match atom {
                    Atom::F { .. } | Atom::G { .. } => {
                        d.atoms[ai].lower_mut(kind).expect("lower slots").push(x);
                    }
                    Atom::Inv { holo: u, anti: v } => {
                        // ∂ g^{u v̄} = -g^{u p̄} ∂g_{q p̄} g^{q v̄}
                        let (p, q) = (self.fresh(), self.fresh());
                        let (mut gh, mut ga) = (vec![q], vec![p]);
                        match kind {
                            Kind::Holo => gh.push(x),
                            Kind::Anti => ga.push(x),
                        }
                        d.atoms[ai] = Atom::Inv { holo: *u, anti: p };
                        d.atoms.push(Atom::G { holo: gh, anti: ga });
                        d.atoms.push(Atom::Inv { holo: q, anti: *v });
                        d.coef = -d.coef;
                    }
                }
                out.push(d);
            }
            for (l, lk) in self.free.clone() {
                if lk != kind {
                    continue;
                }
                let (c, e) = (self.fresh(), self.fresh());
                let mut d = m.clone();
                d.rename_lower(kind, l, c);
                d.coef = -d.coef;
                match kind {
                    // Γ^c_{xl} = g^{c ē} ∂_x g_{l ē}
                    Kind::Holo => {
                        d.atoms.push(Atom::Inv { holo: c, anti: e });
                        d.atoms.push(Atom::G { holo: vec![l, x], anti: vec![e] });
                    }
                    Kind::Anti => {
                        d.atoms.push(Atom::Inv { holo: e, anti: c });
                        d.atoms.push(Atom::G { holo: vec![e], anti: vec![l, x] });
                    }
                }
                out.push(d);
            }
        }
        self.monos = out;
        self.free.push((x, kind));
    }

    fn prune(&mut self, remaining: [usize; 2]) {
        self.monos.retain(|m| {
            let d = m.deficit();
            d[0] <= remaining[0] && d[1] <= remaining[1]
        });
    }

    fn at_center(&self) -> Vec<CenterTerm> {
        let mut acc: HashMap<(Vec<Vertex>, Vec<(usize, usize)>, Vec<usize>), i64> = HashMap::new();
        'mono: for m in &self.monos {
            let mut vertices = Vec::new();
            let mut owner: HashMap<(Label, bool), usize> = HashMap::new();
            let mut links = Vec::new();
            for a in &m.atoms {
                let (v, holo, anti) = match a {
                    Atom::F { slot, holo, anti } => (Vertex::F(*slot), holo, anti),
                    Atom::G { holo, anti } => {
                        assert!(!(holo.len() == 1 && anti.len() == 1), "undifferentiated metric factor");
                        if holo.len() < 2 || anti.len() < 2 {
                            continue 'mono;
                        }
                        (Vertex::G, holo, anti)
                    }
                    Atom::Inv { holo, anti } => {
                        links.push((*holo, *anti));
                        continue;
                    }
                };
                let id = vertices.len();
                vertices.push(v);
                for l in holo {
                    owner.insert((*l, false), id);
                }
                for l in anti {
                    owner.insert((*l, true), id);
                }
            }
            let mut edges: Vec<(usize, usize)> =
                links.iter().map(|(h, a)| (owner[&(*h, false)], owner[&(*a, true)])).collect();
            edges.sort_unstable();
            let free = self.free.iter().map(|(l, k)| owner[&(*l, *k == Kind::Anti)]).collect();
            *acc.entry((vertices, edges, free)).or_insert(0) += m.coef;
        }
        let mut out: Vec<CenterTerm> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((vertices, edges, free), coef)| CenterTerm { coef, vertices, edges, free })
            .collect();
        out.sort_by(|a, b| (&a.vertices, &a.edges, &a.free).cmp(&(&b.vertices, &b.edges, &b.free)));
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Vertex {
    F(usize),
    G,
}

/// A monomial at the centre: metric-derivative and function vertices,
/// contracted edges, and the vertex carrying each free index.
#[derive(Debug, Clone)]
struct CenterTerm {
    coef: i64,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    free: Vec<usize>,
}

fn expand_factor(f: &Factor) -> Vec<CenterTerm> {
    let mut e = Expr::head(f.head);
    let mut remaining = [0usize; 2];
    for i in &f.derivs {
        remaining[i.bar as usize] += 1;
    }
    e.prune(remaining);
    for i in &f.derivs {
        remaining[i.bar as usize] -= 1;
        e.covariant(Kind::of(i.bar));
        e.prune(remaining);
    }
    e.at_center()
}

/// The graph sum of `t` at the centre of normal coordinates; function
/// factors become the distinguished vertices in slot order.
pub fn expand_to_graphs(t: &TensorTerm) -> Result<GraphSum, Error> {
    if t.weight() > super::TENSOR_CAP {
        return Err(Error::WeightCap { weight: t.weight(), cap: super::TENSOR_CAP });
    }
    let d = t.n_slots();
    let expanded: Vec<Vec<CenterTerm>> = t.factors.iter().map(expand_factor).collect();
    // (factor, free position) of the plain and barred occurrence of each letter
    let mut occurrence: HashMap<char, [(usize, usize); 2]> = HashMap::new();
    for (fi, f) in t.factors.iter().enumerate() {
        for (pos, i) in f.indices().enumerate() {
            occurrence.entry(i.letter).or_insert([(0, 0); 2])[i.bar as usize] = (fi, pos);
        }
    }
    let mut out = GraphSum::new();
    let mut choice = vec![0usize; expanded.len()];
    if expanded.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let parts: Vec<&CenterTerm> = choice.iter().zip(&expanded).map(|(c, e)| &e[*c]).collect();
        let mut coef = 1i64;
        let mut offset = Vec::new();
        let mut n_ordinary = 0;
        for p in &parts {
            coef *= p.coef;
            offset.push(n_ordinary);
            n_ordinary += p.vertices.iter().filter(|v| **v == Vertex::G).count();
        }
        let mut g = PointedMultiDigraph::empty(d, n_ordinary);
        let place = |fi: usize, v: usize| -> usize {
            match parts[fi].vertices[v] {
                Vertex::F(s) => s,
                Vertex::G => d + offset[fi] + parts[fi].vertices[..v].iter().filter(|x| **x == Vertex::G).count(),
            }
        };
        let add = |g: &mut PointedMultiDigraph, a: usize, b: usize| {
            let m = g.get(a, b);
            g.set(a, b, m + 1);
        };
        for (fi, p) in parts.iter().enumerate() {
            for (a, b) in &p.edges {
                add(&mut g, place(fi, *a), place(fi, *b));
            }
        }
        for [(hf, hp), (af, ap)] in occurrence.values() {
            add(&mut g, place(*hf, parts[*hf].free[*hp]), place(*af, parts[*af].free[*ap]));
        }
        out.add_term(&g, Rational::from_integer(coef.into()));
        // next combination
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < expanded[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Expands `Σ c_i t_i`.
pub fn expand_combination(terms: &[(Rational, TensorTerm)]) -> Result<GraphSum, Error> {
    let mut out = GraphSum::new();
    for (c, t) in terms {
        out.add_sum(&expand_to_graphs(t)?, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn expand(s: &str) -> GraphSum {
        expand_to_graphs(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn laplacian_and_scalar_curvature() {
        assert_eq!(expand("f_{;i\\bar i}"), GraphSum::single(&PointedMultiDigraph::point_with_loops(1), int(1)));
        let v2 = PointedMultiDigraph::from_edges(1, 1, &[(1, 1, 2)]).unwrap();
        assert_eq!(expand("\\rho f"), GraphSum::single(&v2, int(-1)));
        assert_eq!(expand("f"), GraphSum::identity());
    }

    #[test]
    fn second_covariant_derivative() {
        // f_{;i\bar i j\bar j} = f_{i\bar i j\bar j} + R_{i\bar k} f_{;k\bar i}: the extra term is -[f -> v(loop) -> f]
        let s = expand("f_{;i\\bar i j\\bar j}");
        let two = PointedMultiDigraph::point_with_loops(2);
        let ric = PointedMultiDigraph::from_edges(1, 1, &[(0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        let mut expect = GraphSum::single(&two, int(1));
        expect.add_term(&ric, int(-1));
        assert_eq!(s, expect);
    }

    #[test]
    fn pure_derivatives_are_partial() {
        let s = expand("f1_{;\\bar i\\bar j\\bar k} f2_{;ijk}");
        let g = PointedMultiDigraph::from_edges(2, 0, &[(1, 0, 3)]).unwrap();
        assert_eq!(s, GraphSum::single(&g, int(1)));
    }
}
