//! Canonical labeling by colour refinement and individualization.
//!
//! The search tree explores ordered partitions: each node refines to an
//! equitable partition, then branches on the vertices of its first
//! non-singleton cell. Leaves are discrete partitions, i.e. labelings, and the
//! canonical labeling is the leaf with the largest adjacency code. Leaves with
//! equal codes yield automorphisms, which prune sibling branches lying in the
//! same orbit.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::graph6::emit_graph6;

/// Relabeling-invariant certificate: the graph6 encoding of the canonical
/// form. Two graphs have equal keys iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonical form as a graph6 string.
    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.as_graph6())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_graph6())
    }
}

impl CanonicalKey {
    /// Key of a graph already in canonical form.
    pub(crate) fn from_form(form: &Graph) -> Self {
        CanonicalKey(emit_graph6(form).into_bytes())
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    CanonicalKey::from_form(&canonical_form(g).0)
}

/// Returns the canonical form together with the labeling used:
/// vertex `v` of `g` becomes vertex `labeling[v]` of the form.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.order();
    if n <= 1 {
        return (*g, (0..n).collect());
    }
    let mut part = Partition::unit(n);
    part.refine(g);
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
        path: Vec::new(),
    };
    search.explore(&part);
    let best = search.best.expect("search visits at least one leaf");
    let mut labeling = vec![0; n];
    for (pos, &v) in best.perm.iter().enumerate() {
        labeling[v as usize] = pos;
    }
    let form = g.relabel(&labeling).expect("leaf is a permutation");
    (form, labeling)
}

/// Ordered partition of the vertex set; cell `i` is
/// `verts[bounds[i]..bounds[i + 1]]`.
#[derive(Clone)]
struct Partition {
    verts: Vec<u8>,
    bounds: Vec<usize>,
}

impl Partition {
    fn unit(n: usize) -> Self {
        Partition {
            verts: (0..n as u8).collect(),
            bounds: vec![0, n],
        }
    }

    fn cells(&self) -> usize {
        self.bounds.len() - 1
    }

    fn cell(&self, i: usize) -> &[u8] {
        &self.verts[self.bounds[i]..self.bounds[i + 1]]
    }

    fn cell_mask(&self, i: usize) -> u64 {
        self.cell(i).iter().fold(0, |m, &v| m | 1u64 << v)
    }

    fn is_discrete(&self) -> bool {
        self.cells() == self.verts.len()
    }

    /// Splits cells by neighbor counts into each splitter cell until the
    /// partition is equitable. New cells are ordered by count, so the result
    /// commutes with relabeling.
    fn refine(&mut self, g: &Graph) {
        let mut counts = [0u32; 64];
        'restart: loop {
            for s in 0..self.cells() {
                let splitter = self.cell_mask(s);
                for c in 0..self.cells() {
                    let (lo, hi) = (self.bounds[c], self.bounds[c + 1]);
                    if hi - lo < 2 {
                        continue;
                    }
                    for &v in &self.verts[lo..hi] {
                        counts[v as usize] = (g.row(v as usize) & splitter).count_ones();
                    }
                    let first = counts[self.verts[lo] as usize];
                    if self.verts[lo..hi]
                        .iter()
                        .all(|&v| counts[v as usize] == first)
                    {
                        continue;
                    }
                    self.verts[lo..hi].sort_by_key(|&v| counts[v as usize]);
                    let mut cuts = Vec::new();
                    for k in lo + 1..hi {
                        if counts[self.verts[k] as usize] != counts[self.verts[k - 1] as usize] {
                            cuts.push(k);
                        }
                    }
                    self.bounds.splice(c + 1..c + 1, cuts);
                    continue 'restart;
                }
            }
            break;
        }
    }

    /// Moves `v` into a singleton cell placed before the rest of its cell.
    fn individualize(&self, cell: usize, v: u8) -> Partition {
        let mut p = self.clone();
        let lo = p.bounds[cell];
        let pos = p.verts[lo..p.bounds[cell + 1]]
            .iter()
            .position(|&u| u == v)
            .expect("vertex belongs to the cell");
        p.verts.swap(lo, lo + pos);
        p.bounds.insert(cell + 1, lo + 1);
        p
    }
}

struct Leaf {
    code: Vec<u64>,
    perm: Vec<u8>,
    path: Vec<u8>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<u8>>,
    path: Vec<u8>,
}

impl Search<'_> {
    /// Returns `Some(level)` when the current subtree is known to be an
    /// automorphic image of one already explored, meaning every node deeper
    /// than `level` should be abandoned.
    fn explore(&mut self, part: &Partition) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(part);
        }
        let cell = (0..part.cells())
            .find(|&i| part.cell(i).len() > 1)
            .expect("non-discrete partition has a large cell");
        let mut candidates = part.cell(cell).to_vec();
        candidates.sort_unstable();
        let mut tried: Vec<u8> = Vec::new();
        for v in candidates {
            if !tried.is_empty() && self.same_orbit(v, &tried) {
                continue;
            }
            let mut child = part.individualize(cell, v);
            child.refine(self.g);
            self.path.push(v);
            let jump = self.explore(&child);
            self.path.pop();
            tried.push(v);
            if let Some(level) = jump {
                if level < self.path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, part: &Partition) -> Option<usize> {
        let perm = part.verts.clone();
        let code = leaf_code(self.g, &perm);
        let leaf = Leaf {
            code,
            perm,
            path: self.path.clone(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                code: leaf.code.clone(),
                perm: leaf.perm.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.code == leaf.code {
            let level = divergence(&first.path, &leaf.path);
            self.autos.push(automorphism(&first.perm, &leaf.perm));
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.code.cmp(&best.code) {
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => {
                let level = divergence(&best.path, &leaf.path);
                self.autos.push(automorphism(&best.perm, &leaf.perm));
                Some(level)
            }
            Ordering::Less => None,
        }
    }

    /// Whether `v` shares an orbit with a tried vertex under the known
    /// automorphisms that fix the current path pointwise.
    fn same_orbit(&self, v: u8, tried: &[u8]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<u8> = (0..n as u8).collect();
        fn find(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for gamma in &self.autos {
            if self.path.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x as u8), find(&mut parent, y));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

fn leaf_code(g: &Graph, perm: &[u8]) -> Vec<u64> {
    let n = perm.len();
    let mut pos = [0u8; 64];
    for (i, &v) in perm.iter().enumerate() {
        pos[v as usize] = i as u8;
    }
    (0..n)
        .map(|i| {
            let row = g.row(perm[i] as usize);
            crate::graph::VertexSet(row)
                .iter()
                .fold(0u64, |acc, u| acc | 1u64 << (63 - pos[u] as u32))
        })
        .collect()
}

fn divergence(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The automorphism sending leaf `from` onto leaf `to` (same code).
fn automorphism(from: &[u8], to: &[u8]) -> Vec<u8> {
    let mut gamma = vec![0u8; from.len()];
    for (&f, &t) in from.iter().zip(to) {
        gamma[f as usize] = t;
    }
    gamma
}
