//! Gluing a graph into a distinguished slot of another graph.
//!
//! Every edge end of the outer graph sitting at the slot is a derivative
//! acting on the inner graph. By the Leibniz rule it lands either on a vertex
//! of the inner graph, which gains that edge end, or on an edge `u -> w` of
//! the inner graph (a derivative of the inverse metric). Several derivatives
//! landing on one edge split it into a chain `u -> x1 -> ... -> xm -> w`, one
//! new vertex per block of an ordered set partition of those derivatives,
//! with sign `(-1)^m`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::Error;
use crate::graph::PointedMultiDigraph;
use crate::graphsum::GraphSum;
use crate::rational::Rational;

/// What to keep after gluing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attach {
    /// Allow derivatives to land on edges of the inner graph.
    pub subdivide: bool,
    /// Largest total in-deficiency kept (zero means stable).
    pub max_def_in: usize,
    pub max_def_out: usize,
}

impl Attach {
    /// Evaluation at the centre of normal coordinates.
    pub const CENTER: Attach = Attach { subdivide: true, max_def_in: 0, max_def_out: 0 };
    /// Vertex targets only, stable results only.
    pub const VERTICES: Attach = Attach { subdivide: false, max_def_in: 0, max_def_out: 0 };

    pub fn near(max_def_in: usize, max_def_out: usize) -> Self {
        Attach { subdivide: true, max_def_in, max_def_out }
    }

    fn is_stable(&self) -> bool {
        self.max_def_in == 0 && self.max_def_out == 0
    }
}

#[derive(Clone, Copy)]
enum Partner {
    /// Other end is a fixed vertex (new index).
    Vertex(usize),
    /// Other end is another leg (a loop at the slot).
    Leg(usize),
}

#[derive(Clone, Copy)]
struct Leg {
    tail: bool,
    partner: Partner,
}

struct Glue {
    opts: Attach,
    legs: Vec<Leg>,
    /// New index of each inner vertex.
    inner_map: Vec<usize>,
    /// Inner edge copies `(u, w)` in new indices.
    edge_copies: Vec<(usize, usize)>,
    base_order: usize,
    n_distinguished: usize,
    base: Vec<(usize, usize, u8)>,
    target: Vec<usize>,
    out: HashMap<Vec<u8>, i64>,
}

impl Glue {
    fn assign(&mut self, i: usize) {
        if i == self.legs.len() {
            self.leaf();
            return;
        }
        let n_targets = self.inner_map.len() + if self.opts.subdivide { self.edge_copies.len() } else { 0 };
        for t in 0..n_targets {
            self.target[i] = t;
            self.assign(i + 1);
        }
    }

    fn leaf(&mut self) {
        let nv = self.inner_map.len();
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for (leg, &t) in self.target.iter().enumerate() {
            if t >= nv {
                let e = t - nv;
                match groups.iter_mut().find(|(g, _)| *g == e) {
                    Some((_, v)) => v.push(leg),
                    None => groups.push((e, vec![leg])),
                }
            }
        }
        let mut chains: Vec<(usize, Vec<Vec<usize>>)> = Vec::with_capacity(groups.len());
        self.partitions(&groups, 0, &mut chains);
    }

    fn block_ok(&self, block: &[usize]) -> bool {
        if !self.opts.is_stable() {
            return true;
        }
        block.iter().any(|&l| self.legs[l].tail) && block.iter().any(|&l| !self.legs[l].tail)
    }

    fn partitions(&mut self, groups: &[(usize, Vec<usize>)], gi: usize, chains: &mut Vec<(usize, Vec<Vec<usize>>)>) {
        if gi == groups.len() {
            self.build(chains);
            return;
        }
        let (e, legs) = &groups[gi];
        for blocks in ordered_set_partitions(legs) {
            if !blocks.iter().all(|b| self.block_ok(b)) {
                continue;
            }
            chains.push((*e, blocks));
            self.partitions(groups, gi + 1, chains);
            chains.pop();
        }
    }

    fn build(&mut self, chains: &[(usize, Vec<Vec<usize>>)]) {
        let n_chain: usize = chains.iter().map(|(_, b)| b.len()).sum();
        let order = self.base_order + n_chain;
        let mut adj = vec![0u8; order * order];
        for &(u, w, m) in &self.base {
            adj[u * order + w] += m;
        }
        let nv = self.inner_map.len();
        let mut landing = vec![usize::MAX; self.legs.len()];
        for (leg, &t) in self.target.iter().enumerate() {
            if t < nv {
                landing[leg] = self.inner_map[t];
            }
        }
        let mut next = self.base_order;
        for (e, blocks) in chains {
            let (u, w) = self.edge_copies[*e];
            adj[u * order + w] -= 1;
            let mut prev = u;
            for block in blocks {
                adj[prev * order + next] += 1;
                for &l in block {
                    landing[l] = next;
                }
                prev = next;
                next += 1;
            }
            adj[prev * order + w] += 1;
        }
        for (l, leg) in self.legs.iter().enumerate() {
            let here = landing[l];
            match leg.partner {
                Partner::Vertex(v) => {
                    if leg.tail {
                        adj[here * order + v] += 1;
                    } else {
                        adj[v * order + here] += 1;
                    }
                }
                Partner::Leg(p) => {
                    if leg.tail {
                        adj[here * order + landing[p]] += 1;
                    }
                }
            }
        }
        let g = PointedMultiDigraph::from_flat(self.n_distinguished, order - self.n_distinguished, adj);
        let (di, dout) = g.deficiency();
        if di > self.opts.max_def_in || dout > self.opts.max_def_out {
            return;
        }
        if (g.n_distinguished()..g.order()).any(|v| g.indegree(v) == 0 || g.outdegree(v) == 0) {
            return;
        }
        let sign = if n_chain % 2 == 0 { 1 } else { -1 };
        *self.out.entry(g.flat().to_vec()).or_insert(0) += sign;
    }
}

/// All ordered set partitions of `items` into nonempty blocks.
pub(crate) fn ordered_set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut set_parts: Vec<Vec<Vec<usize>>> = Vec::new();
    fn rec(items: &[usize], i: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == items.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(items[i]);
            rec(items, i + 1, cur, out);
            cur[b].pop();
        }
        cur.push(vec![items[i]]);
        rec(items, i + 1, cur, out);
        cur.pop();
    }
    rec(items, 0, &mut Vec::new(), &mut set_parts);
    let mut out = Vec::new();
    for p in set_parts {
        for perm in permutations(p.len()) {
            out.push(perm.iter().map(|&i| p[i].clone()).collect());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Glues `inner` into distinguished vertex `slot` of `outer`.
///
/// The distinguished vertices of the result are those of `outer` before
/// `slot`, then those of `inner`, then the remaining ones of `outer`.
/// Returns canonical graphs with signed integer multiplicities.
pub fn substitute_graph(
    outer: &PointedMultiDigraph,
    slot: usize,
    inner: &PointedMultiDigraph,
    opts: Attach,
) -> Result<Vec<(PointedMultiDigraph, i64)>, Error> {
    let m = outer.n_distinguished();
    if slot >= m {
        return Err(Error::SlotOutOfRange { slot, count: m });
    }
    let mi = inner.n_distinguished();
    let d = m - 1 + mi;
    let n_outer = outer.n_ordinary();
    let outer_map = |v: usize| -> usize {
        if v < slot {
            v
        } else if v < m {
            v - 1 + mi
        } else {
            d + (v - m)
        }
    };
    let inner_map: Vec<usize> =
        (0..inner.order()).map(|x| if x < mi { slot + x } else { d + n_outer + (x - mi) }).collect();
    let base_order = d + n_outer + inner.n_ordinary();

    let mut base = Vec::new();
    let mut legs = Vec::new();
    for u in 0..outer.order() {
        for w in 0..outer.order() {
            let mult = outer.get(u, w);
            if mult == 0 {
                continue;
            }
            match (u == slot, w == slot) {
                (false, false) => base.push((outer_map(u), outer_map(w), mult)),
                (true, false) => {
                    for _ in 0..mult {
                        legs.push(Leg { tail: true, partner: Partner::Vertex(outer_map(w)) });
                    }
                }
                (false, true) => {
                    for _ in 0..mult {
                        legs.push(Leg { tail: false, partner: Partner::Vertex(outer_map(u)) });
                    }
                }
                (true, true) => {
                    for _ in 0..mult {
                        let t = legs.len();
                        legs.push(Leg { tail: true, partner: Partner::Leg(t + 1) });
                        legs.push(Leg { tail: false, partner: Partner::Leg(t) });
                    }
                }
            }
        }
    }
    let mut edge_copies = Vec::new();
    for u in 0..inner.order() {
        for w in 0..inner.order() {
            let mult = inner.get(u, w);
            if mult == 0 {
                continue;
            }
            base.push((inner_map[u], inner_map[w], mult));
            for _ in 0..mult {
                edge_copies.push((inner_map[u], inner_map[w]));
            }
        }
    }
    let n_legs = legs.len();
    let mut glue = Glue {
        opts,
        legs,
        inner_map,
        edge_copies,
        base_order,
        n_distinguished: d,
        base,
        target: vec![0; n_legs],
        out: HashMap::new(),
    };
    glue.assign(0);

    let mut merged: HashMap<PointedMultiDigraph, i64> = HashMap::new();
    for (flat, c) in glue.out {
        if c == 0 {
            continue;
        }
        let order = (flat.len() as f64).sqrt().round() as usize;
        let g = PointedMultiDigraph::from_flat(d, order - d, flat).canonical();
        *merged.entry(g).or_insert(0) += c;
    }
    let mut v: Vec<_> = merged.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    Ok(v)
}

/// Bilinear extension of [`substitute_graph`] to graph sums.
pub fn substitute_slot(outer: &GraphSum, slot: usize, inner: &GraphSum, opts: Attach) -> Result<GraphSum, Error> {
    if inner.is_empty() {
        return Err(Error::EmptySum);
    }
    inner.check_pointedness()?;
    if outer.is_empty() {
        return Ok(GraphSum::new());
    }
    let d = outer.check_pointedness()?;
    if slot >= d {
        return Err(Error::SlotOutOfRange { slot, count: d });
    }
    let pairs: Vec<_> = outer.iter().flat_map(|o| inner.iter().map(move |i| (o, i))).collect();
    let parts: Vec<GraphSum> = pairs
        .par_iter()
        .map(|((g, cg), (h, ch))| {
            let mut s = GraphSum::new();
            let coeff = (*cg).clone() * (*ch).clone();
            for (r, mult) in substitute_graph(g, slot, h, opts).expect("slot checked") {
                s.add_canonical(r, &coeff * Rational::from_integer(mult.into()));
            }
            s
        })
        .collect();
    let mut out = GraphSum::new();
    for p in parts {
        out.add_sum(&p, &Rational::from_integer(1.into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn bare_outer_is_identity() {
        let h = PointedMultiDigraph::from_edges(1, 1, &[(0, 1, 2), (1, 0, 2), (1, 1, 1)]).unwrap().canonical();
        let r = substitute_graph(&PointedMultiDigraph::bare_point(), 0, &h, Attach::CENTER).unwrap();
        assert_eq!(r, vec![(h, 1)]);
    }

    #[test]
    fn loop_onto_bare_point() {
        let r = substitute_graph(
            &PointedMultiDigraph::point_with_loops(1),
            0,
            &PointedMultiDigraph::bare_point(),
            Attach::CENTER,
        )
        .unwrap();
        assert_eq!(r, vec![(PointedMultiDigraph::point_with_loops(1), 1)]);
    }

    #[test]
    fn laplacian_squared_at_center() {
        let l = PointedMultiDigraph::point_with_loops(1);
        let r = substitute_graph(&l, 0, &l, Attach::CENTER).unwrap();
        let tau = PointedMultiDigraph::from_edges(1, 1, &[(0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap().canonical();
        let mut expect = vec![(PointedMultiDigraph::point_with_loops(2), 1), (tau, -1)];
        expect.sort();
        assert_eq!(r, expect);
        let v = substitute_graph(&l, 0, &l, Attach::VERTICES).unwrap();
        assert_eq!(v, vec![(PointedMultiDigraph::point_with_loops(2), 1)]);
    }

    #[test]
    fn ordered_partitions_count() {
        // ordered Bell numbers 1, 3, 13
        assert_eq!(ordered_set_partitions(&[0]).len(), 1);
        assert_eq!(ordered_set_partitions(&[0, 1]).len(), 3);
        assert_eq!(ordered_set_partitions(&[0, 1, 2]).len(), 13);
    }

    #[test]
    fn weight_is_additive() {
        let outer = PointedMultiDigraph::from_edges(1, 1, &[(0, 1, 2), (1, 0, 1), (1, 1, 1)]).unwrap();
        let inner = PointedMultiDigraph::from_edges(1, 1, &[(0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        for (g, _) in substitute_graph(&outer, 0, &inner, Attach::near(2, 2)).unwrap() {
            assert_eq!(g.weight(), outer.weight() + inner.weight());
        }
    }

    #[test]
    fn slot_errors() {
        let s = GraphSum::identity();
        assert_eq!(substitute_slot(&s, 1, &s, Attach::CENTER), Err(Error::SlotOutOfRange { slot: 1, count: 1 }));
        assert_eq!(substitute_slot(&s, 0, &GraphSum::new(), Attach::CENTER), Err(Error::EmptySum));
        assert_eq!(substitute_slot(&s, 0, &s, Attach::CENTER).unwrap().get(&PointedMultiDigraph::bare_point()), int(1));
    }
}
