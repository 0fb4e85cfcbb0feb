//! Simple undirected graphs on at most 64 vertices, stored as one neighbor
//! bitset per vertex.
//!
//! Every operation that removes vertices closes the gaps in the labeling while
//! preserving the relative order of the survivors, so results are
//! deterministic functions of their inputs.

use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of vertices a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices, one bit per vertex label.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    /// Lowest vertex in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = BitIter;

    fn into_iter(self) -> BitIter {
        self.iter()
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone)]
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for BitIter {}

/// A finite simple undirected graph with vertices `0..n`.
///
/// Values are immutable once built (all operations return new graphs) and
/// are `Copy`, so they can be shared freely between threads.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: [u64; MAX_VERTICES],
}

impl Graph {
    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity { requested: n });
        }
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from neighbor bitsets, checking symmetry and loops.
    pub fn from_adjacency(rows: &[u64]) -> Result<Self> {
        let mut g = Graph::empty(rows.len())?;
        let mask = low_mask(rows.len());
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 || row >> v & 1 == 1 {
                return Err(Error::InvalidAdjacency(format!(
                    "row {v} is out of range or has a loop"
                )));
            }
            g.adj[v] = row;
        }
        for u in 0..g.n {
            for v in g.neighbors(u) {
                if g.adj[v] >> u & 1 == 0 {
                    return Err(Error::InvalidAdjacency(format!(
                        "edge {u}-{v} is not symmetric"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let all = low_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidFamily(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// `K_{1,n-1}` with centre 0.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidAdjacency(format!("self-loop at {u}")));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    /// Returns a copy with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = *self;
        g.add_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Neighbor bitsets of the live vertices.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj[..self.n]
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1u64 << v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> VertexSet {
        VertexSet::from_vertices((0..self.n).filter(|&v| self.degree(v) == 1))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    /// The subgraph induced by `s`, relabeled `0..|s|` in increasing order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        let s = VertexSet(s.0 & low_mask(self.n));
        let mut g = Graph {
            n: s.len(),
            adj: [0; MAX_VERTICES],
        };
        for (i, v) in s.iter().enumerate() {
            g.adj[i] = compress(self.adj[v] & s.0, s.0);
        }
        g
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced_subgraph(VertexSet(low_mask(self.n) & !(1u64 << v))))
    }

    /// `G / v`: make `N[v]` a clique, then delete `v`.
    pub fn contract_close(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = *self;
        let nbrs = self.adj[v];
        for u in VertexSet(nbrs) {
            g.adj[u] |= nbrs & !(1u64 << u);
        }
        g.delete_vertex(v)
    }

    /// `G - N[v]`.
    pub fn delete_closed_neighborhood(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced_subgraph(VertexSet(low_mask(self.n) & !self.closed_neighbors(v).0)))
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= within.0 & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    /// Whether `s` induces a connected subgraph. The empty set counts as
    /// connected.
    pub fn is_connected_set(&self, s: VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.reach(v, s) == s,
        }
    }

    /// True iff the graph has at most one vertex or every vertex is
    /// reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        self.is_connected_set(self.vertices())
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, rest);
            rest = VertexSet(rest.0 & !c.0);
            out.push(c);
        }
        out
    }

    /// Vertices whose closed neighborhood induces a clique.
    pub fn is_simplicial(&self, v: usize) -> bool {
        let nbrs = self.adj[v];
        VertexSet(nbrs)
            .iter()
            .all(|u| nbrs & !(self.adj[u] | 1u64 << u) == 0)
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidAdjacency(format!(
                "permutation of length {} for a graph of order {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::InvalidAdjacency("not a permutation".into()));
            }
            seen |= 1u64 << p;
        }
        let mut g = Graph::empty(self.n)?;
        for u in 0..self.n {
            for v in self.neighbors(u) {
                g.adj[perm[u]] |= 1u64 << perm[v];
            }
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `h` follow those of `self`.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph> {
        let n = self.n + h.n;
        if n > MAX_VERTICES {
            return Err(Error::Capacity { requested: n });
        }
        let mut g = *self;
        g.n = n;
        for v in 0..h.n {
            g.adj[self.n + v] = h.adj[v] << self.n;
        }
        Ok(g)
    }

    /// Join: disjoint union plus every edge between the two parts.
    pub fn join(&self, h: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(h)?;
        let left = low_mask(self.n);
        let right = low_mask(h.n) << self.n;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }
}

/// Packs the bits of `word` selected by `mask` into the low bits, in order.
#[inline]
fn compress(word: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if word & low != 0 {
            out |= 1u64 << bit;
        }
        bit += 1;
        m &= m - 1;
    }
    out
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u5() -> Graph {
        // (K_2 ∪ 2K_1) ∨ K_1 with the universal vertex last.
        let k2_2k1 = Graph::from_edges(4, &[(0, 1)]).unwrap();
        k2_2k1.join(&Graph::empty(1).unwrap()).unwrap()
    }

    #[test]
    fn delete_vertex_examples() {
        let c4 = Graph::cycle(4).unwrap();
        for v in 0..4 {
            let p = c4.delete_vertex(v).unwrap();
            assert_eq!(p.order(), 3);
            assert_eq!(p.size(), 2);
            assert!(p.is_connected());
        }
        let g = u5().delete_vertex(4).unwrap();
        assert_eq!(g, Graph::from_edges(4, &[(0, 1)]).unwrap());
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.delete_vertex(0).unwrap().order(), 0);
        assert!(matches!(
            k1.delete_vertex(1),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn contract_close_examples() {
        // C_5 minus vertex 0 relabels 1..4 to 0..3; contraction joins the old 1 and 4.
        let c5 = Graph::cycle(5).unwrap();
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(c5.contract_close(0).unwrap(), c4);
        let star = Graph::star(5).unwrap();
        assert_eq!(
            star.contract_close(3).unwrap(),
            star.delete_vertex(3).unwrap()
        );
        assert!(Graph::empty(2).unwrap().contract_close(2).is_err());
    }

    #[test]
    fn closed_neighborhood_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(k2.delete_closed_neighborhood(0).unwrap().order(), 0);
        let star = Graph::star(6).unwrap();
        let g = star.delete_closed_neighborhood(2).unwrap();
        assert_eq!((g.order(), g.size()), (4, 0));
        assert_eq!(star.delete_closed_neighborhood(0).unwrap().order(), 0);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::cycle(5).unwrap().is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1)]).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        assert!(Graph::empty(0).unwrap().is_connected());
        assert_eq!(
            Graph::from_edges(5, &[(0, 3), (1, 4)])
                .unwrap()
                .components()
                .len(),
            3
        );
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let p4 = c5.induced_subgraph(VertexSet::from_vertices([0, 1, 2, 3]));
        assert_eq!(p4, Graph::path(4).unwrap());
        assert_eq!(c5.induced_subgraph(c5.vertices()), c5);
        let k3 = u5().induced_subgraph(VertexSet::from_vertices([0, 1, 4]));
        assert_eq!(k3, Graph::complete(3).unwrap());
    }

    #[test]
    fn join_and_union() {
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.join(&k1).unwrap(), Graph::complete(2).unwrap());
        let k2 = Graph::complete(2).unwrap();
        let two_k2 = k2.disjoint_union(&k2).unwrap();
        assert_eq!(two_k2.edges(), vec![(0, 1), (2, 3)]);
        let u = u5();
        assert_eq!(u.size(), 5);
        assert_eq!(u.degree(4), 4);
        let big = Graph::empty(40).unwrap();
        assert!(matches!(
            big.join(&big),
            Err(Error::Capacity { requested: 80 })
        ));
    }

    #[test]
    fn adjacency_validation() {
        assert!(Graph::from_adjacency(&[0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(&[0b01]).is_err());
        assert!(Graph::from_adjacency(&[0b10, 0b01]).is_ok());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
    }
}
