//! Pointed multidigraphs: directed multigraphs with loops whose first few
//! vertices are distinguished (the function slots `f`, `f1`, `f2`, ...).
//!
//! Vertex `v` of a graph with `d` distinguished vertices is distinguished iff
//! `v < d`. Edges are stored as a row-major matrix of multiplicities, so
//! `adj[i][j]` counts the edges `i -> j` and the diagonal counts loops.
//!
//! An edge `u -> w` stands for one contracted index pair: the holomorphic
//! index sits at `u`, the antiholomorphic one at `w`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::factorial;

/// Square integer matrix used for `A(Γ₋)` and friends.
pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedMultiDigraph {
    n_distinguished: usize,
    n_ordinary: usize,
    adj: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    SemistableNotStable,
    Unstable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Disconnected,
    ConnectedNotStrong,
    StronglyConnected,
}

/// Wire form of a graph: `{"n_distinguished", "n_ordinary", "adj"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n_distinguished: usize,
    pub n_ordinary: usize,
    pub adj: Vec<Vec<u32>>,
}

impl PointedMultiDigraph {
    pub fn new(n_distinguished: usize, adj: &[Vec<u32>]) -> Result<Self, Error> {
        let order = adj.len();
        if n_distinguished > order {
            return Err(Error::InvalidGraph(format!(
                "{n_distinguished} distinguished vertices but only {order} vertices"
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in adj.iter().enumerate() {
            if entries.len() != order {
                return Err(Error::NotSquare { rows: order, row, len: entries.len() });
            }
            for &m in entries {
                let m = u8::try_from(m).map_err(|_| Error::InvalidGraph(format!("edge multiplicity {m} too large")))?;
                flat.push(m);
            }
        }
        Ok(Self { n_distinguished, n_ordinary: order - n_distinguished, adj: flat })
    }

    /// Builds a graph from an edge list `(from, to, multiplicity)`.
    pub fn from_edges(n_distinguished: usize, n_ordinary: usize, edges: &[(usize, usize, u32)]) -> Result<Self, Error> {
        let order = n_distinguished + n_ordinary;
        let mut g = Self::empty(n_distinguished, n_ordinary);
        for &(u, w, m) in edges {
            for v in [u, w] {
                if v >= order {
                    return Err(Error::VertexOutOfRange { vertex: v, order });
                }
            }
            let total = g.get(u, w) as u32 + m;
            let total =
                u8::try_from(total).map_err(|_| Error::InvalidGraph(format!("edge multiplicity {total} too large")))?;
            g.set(u, w, total);
        }
        Ok(g)
    }

    pub(crate) fn from_flat(n_distinguished: usize, n_ordinary: usize, adj: Vec<u8>) -> Self {
        debug_assert_eq!(adj.len(), (n_distinguished + n_ordinary).pow(2));
        Self { n_distinguished, n_ordinary, adj }
    }

    pub fn empty(n_distinguished: usize, n_ordinary: usize) -> Self {
        let order = n_distinguished + n_ordinary;
        Self { n_distinguished, n_ordinary, adj: vec![0; order * order] }
    }

    /// The bare distinguished vertex `f` (the identity operator).
    pub fn bare_point() -> Self {
        Self::empty(1, 0)
    }

    /// `f` carrying `k` loops.
    pub fn point_with_loops(k: u32) -> Self {
        Self::from_edges(1, 0, &[(0, 0, k)]).expect("valid loop graph")
    }

    pub fn n_distinguished(&self) -> usize {
        self.n_distinguished
    }

    pub fn n_ordinary(&self) -> usize {
        self.n_ordinary
    }

    pub fn order(&self) -> usize {
        self.n_distinguished + self.n_ordinary
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.adj[i * self.order() + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, m: u8) {
        let n = self.order();
        self.adj[i * n + j] = m;
    }

    pub(crate) fn flat(&self) -> &[u8] {
        &self.adj
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let n = self.order();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j) as u32).collect()).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|&m| m as usize).sum()
    }

    /// `|E| - |V_ordinary|`.
    pub fn weight(&self) -> i64 {
        self.edge_count() as i64 - self.n_ordinary as i64
    }

    pub fn is_distinguished(&self, v: usize) -> bool {
        v < self.n_distinguished
    }

    pub fn indegree(&self, v: usize) -> usize {
        (0..self.order()).map(|u| self.get(u, v) as usize).sum()
    }

    pub fn outdegree(&self, v: usize) -> usize {
        (0..self.order()).map(|w| self.get(v, w) as usize).sum()
    }

    /// `(indegree, outdegree)` of `v`; a loop counts once in each.
    pub fn degrees(&self, v: usize) -> Result<(usize, usize), Error> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        Ok((self.indegree(v), self.outdegree(v)))
    }

    pub fn vertex_stability(&self, v: usize) -> Stability {
        stability_of(self.indegree(v), self.outdegree(v))
    }

    /// Worst stability over the ordinary vertices; distinguished vertices are exempt.
    pub fn classify(&self) -> Stability {
        let mut out = Stability::Stable;
        for v in self.n_distinguished..self.order() {
            match self.vertex_stability(v) {
                Stability::Unstable => return Stability::Unstable,
                Stability::SemistableNotStable => out = Stability::SemistableNotStable,
                Stability::Stable => {}
            }
        }
        out
    }

    pub fn is_stable(&self) -> bool {
        self.classify() == Stability::Stable
    }

    /// Sum over ordinary vertices of `max(0, 2 - indeg)` and `max(0, 2 - outdeg)`.
    pub fn deficiency(&self) -> (usize, usize) {
        (self.n_distinguished..self.order()).fold((0, 0), |(a, b), v| {
            (a + 2usize.saturating_sub(self.indegree(v)), b + 2usize.saturating_sub(self.outdegree(v)))
        })
    }

    /// Weakly connected components, each sorted, ordered by smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for w in 0..n {
                    if comp[w] == usize::MAX && (self.get(u, w) > 0 || self.get(w, u) > 0) {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn reach(&self, start: usize, forward: bool) -> Vec<bool> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in 0..n {
                let m = if forward { self.get(u, w) } else { self.get(w, u) };
                if m > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// The empty graph counts as strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        if self.order() == 0 {
            return true;
        }
        self.reach(0, true).iter().all(|&b| b) && self.reach(0, false).iter().all(|&b| b)
    }

    pub fn connectivity(&self) -> Connectivity {
        if self.is_strongly_connected() {
            Connectivity::StronglyConnected
        } else if self.weak_components().len() == 1 {
            Connectivity::ConnectedNotStrong
        } else {
            Connectivity::Disconnected
        }
    }

    /// The full subgraph on `vertices`, in the given order. The first
    /// `n_distinguished` entries become the distinguished vertices.
    pub fn induced(&self, n_distinguished: usize, vertices: &[usize]) -> Self {
        let m = vertices.len();
        let mut adj = Vec::with_capacity(m * m);
        for &u in vertices {
            for &w in vertices {
                adj.push(self.get(u, w));
            }
        }
        Self::from_flat(n_distinguished, m - n_distinguished, adj)
    }

    /// Relabels so that new vertex `p` is old vertex `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order();
        debug_assert_eq!(perm.len(), n);
        let mut adj = Vec::with_capacity(n * n);
        for &pu in perm {
            for &pw in perm {
                adj.push(self.get(pu, pw));
            }
        }
        Self::from_flat(self.n_distinguished, self.n_ordinary, adj)
    }

    /// Adjacency matrix restricted to the ordinary vertices of a 1-pointed graph.
    pub fn minor_matrix(&self) -> Result<IntMatrix, Error> {
        if self.n_distinguished != 1 {
            return Err(Error::Pointedness { expected: 1, found: self.n_distinguished });
        }
        Ok(self.ordinary_matrix())
    }

    /// Adjacency matrix of the ordinary vertices, for any pointedness.
    pub fn ordinary_matrix(&self) -> IntMatrix {
        let d = self.n_distinguished;
        (d..self.order()).map(|i| (d..self.order()).map(|j| BigInt::from(self.get(i, j))).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.order();
        let mut t = Self::empty(self.n_distinguished, self.n_ordinary);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Block-diagonal union; the distinguished vertices of `self` come first,
    /// then those of `other`. The result is canonical.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (d1, d2) = (self.n_distinguished, other.n_distinguished);
        let (n1, n2) = (self.order(), other.order());
        let mut g = Self::empty(d1 + d2, self.n_ordinary + other.n_ordinary);
        // new positions: self distinguished, other distinguished, self ordinary, other ordinary
        let map1 = |v: usize| if v < d1 { v } else { d2 + v };
        let map2 = |v: usize| if v < d2 { d1 + v } else { n1 + v };
        for i in 0..n1 {
            for j in 0..n1 {
                g.set(map1(i), map1(j), self.get(i, j));
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                g.set(map2(i), map2(j), other.get(i, j));
            }
        }
        g.canonical()
    }

    /// `d<k>:` followed by the row-major adjacency entries.
    pub fn encode(&self) -> String {
        let body: Vec<String> = self.adj.iter().map(|m| m.to_string()).collect();
        format!("d{}:{}", self.n_distinguished, body.join(","))
    }

    pub fn decode(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad graph encoding {s:?}"));
        let rest = s.strip_prefix('d').ok_or_else(bad)?;
        let (d, body) = rest.split_once(':').ok_or_else(bad)?;
        let d: usize = d.parse().map_err(|_| bad())?;
        let entries: Vec<u8> = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|t| t.trim().parse::<u8>().map_err(|_| bad())).collect::<Result<_, _>>()?
        };
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() || d > n {
            return Err(bad());
        }
        Ok(Self::from_flat(d, n - d, entries))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n_distinguished: self.n_distinguished, n_ordinary: self.n_ordinary, adj: self.rows() }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self, Error> {
        let g = Self::new(j.n_distinguished, &j.adj)?;
        if g.n_ordinary != j.n_ordinary {
            return Err(Error::InvalidGraph(format!(
                "n_ordinary {} does not match matrix size {}",
                j.n_ordinary,
                g.order()
            )));
        }
        Ok(g)
    }
}

pub(crate) fn stability_of(indeg: usize, outdeg: usize) -> Stability {
    if indeg >= 2 && outdeg >= 2 {
        Stability::Stable
    } else if indeg >= 1 && outdeg >= 1 && indeg + outdeg >= 3 {
        Stability::SemistableNotStable
    } else {
        Stability::Unstable
    }
}

impl fmt::Debug for PointedMultiDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Display for PointedMultiDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl Serialize for PointedMultiDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointedMultiDigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// canonical form and automorphisms

struct Search<'a> {
    g: &'a PointedMultiDigraph,
    /// `base[p]` is the vertex placed at position `p` before block permutations.
    base: Vec<usize>,
    /// Block id of each position; positions in one block may be permuted freely.
    block: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<usize>>,
    automorphisms: u64,
}

impl Search<'_> {
    fn entry(&self, perm: &[usize], i: usize, j: usize) -> u8 {
        self.g.get(perm[i], perm[j])
    }

    fn leaf(&mut self) {
        let n = self.perm.len();
        // automorphism of the key-sorted labelling
        let mut fixed = true;
        'auto: for i in 0..n {
            for j in 0..n {
                if self.entry(&self.perm, i, j) != self.entry(&self.base, i, j) {
                    fixed = false;
                    break 'auto;
                }
            }
        }
        if fixed {
            self.automorphisms += 1;
        }
        let better = match &self.best {
            None => true,
            Some(best) => {
                let mut ord = std::cmp::Ordering::Equal;
                'cmp: for i in 0..n {
                    for j in 0..n {
                        let a = self.entry(&self.perm, i, j);
                        let b = self.entry(best, i, j);
                        if a != b {
                            ord = a.cmp(&b);
                            break 'cmp;
                        }
                    }
                }
                ord == std::cmp::Ordering::Less
            }
        };
        if better {
            self.best = Some(self.perm.clone());
        }
    }

    fn run(&mut self, p: usize) {
        let n = self.perm.len();
        if p == n {
            self.leaf();
            return;
        }
        if p < self.g.n_distinguished {
            self.perm[p] = p;
            self.run(p + 1);
            return;
        }
        for q in self.g.n_distinguished..n {
            if self.block[q] == self.block[p] && !self.used[q] {
                self.used[q] = true;
                self.perm[p] = self.base[q];
                self.run(p + 1);
                self.used[q] = false;
            }
        }
    }
}

impl PointedMultiDigraph {
    /// Sort key of an ordinary vertex. Isomorphisms fixing the distinguished
    /// vertices preserve it.
    fn vertex_key(&self, v: usize) -> Vec<u32> {
        let d = self.n_distinguished;
        let mut key: Vec<u32> = (0..d).map(|r| self.get(r, v) as u32).collect();
        key.extend((0..d).map(|c| self.get(v, c) as u32));
        key.push(self.get(v, v) as u32);
        key.push(self.indegree(v) as u32);
        key.push(self.outdegree(v) as u32);
        key
    }

    fn search(&self) -> Search<'_> {
        let d = self.n_distinguished;
        let n = self.order();
        let keys: Vec<Vec<u32>> = (0..n).map(|v| if v < d { Vec::new() } else { self.vertex_key(v) }).collect();
        let mut base: Vec<usize> = (0..n).collect();
        base[d..].sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut block = vec![0usize; n];
        for p in 0..n {
            block[p] = if p < d {
                p
            } else if p > d && keys[base[p]] == keys[base[p - 1]] {
                block[p - 1]
            } else {
                p
            };
        }
        let mut s =
            Search { g: self, base, block, perm: vec![0; n], used: vec![false; n], best: None, automorphisms: 0 };
        s.run(0);
        s
    }

    /// Canonical representative and the witness permutation `perm` with
    /// `canonical = self.permuted(perm)`.
    ///
    /// Ordinary vertices are first sorted by an isomorphism-invariant key
    /// (distinguished-vertex adjacencies, loops, degrees); the canonical form
    /// is the lexicographically smallest row-major adjacency among all
    /// relabellings that keep that order. Distinguished vertices stay fixed.
    pub fn canonicalize(&self) -> (Self, Vec<usize>) {
        let s = self.search();
        let perm = s.best.expect("at least one permutation");
        (self.permuted(&perm), perm)
    }

    pub fn canonical(&self) -> Self {
        self.canonicalize().0
    }

    pub fn is_canonical(&self) -> bool {
        &self.canonical() == self
    }

    /// Number of vertex permutations fixing the distinguished vertices that
    /// preserve the adjacency matrix.
    pub fn vertex_automorphisms(&self) -> u64 {
        self.search().automorphisms
    }

    /// `|Aut|` including permutations of parallel edges and loops:
    /// vertex automorphisms times `prod adj[i][j]!`.
    pub fn aut_order(&self) -> u64 {
        self.vertex_automorphisms() * self.parallel_edge_factor()
    }

    pub fn parallel_edge_factor(&self) -> u64 {
        self.adj.iter().map(|&m| factorial(m as u64)).product()
    }

    /// Canonical form together with `|Aut|`, sharing one search.
    pub fn canonical_with_aut(&self) -> (Self, u64) {
        let s = self.search();
        let auts = s.automorphisms;
        let perm = s.best.expect("at least one permutation");
        let c = self.permuted(&perm);
        let f = c.parallel_edge_factor();
        (c, auts * f)
    }
}
