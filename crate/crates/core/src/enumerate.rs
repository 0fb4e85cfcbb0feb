//! Isomorph-free generation of connected graphs with a given order and
//! cyclomatic number.
//!
//! [`enumerate`] grows trees leaf by leaf and then adds one edge at a time,
//! keeping one canonical representative per isomorphism class at every
//! level. [`enumerate_by_filter`] is an independent generator for small
//! orders that runs every labeled edge set of the right size through the
//! same canonical dedup.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::families::for_each_k_subset;
use crate::graph::Graph;
use crate::graph6::emit_graph6;

/// Orders up to this bound may use any cyclomatic number.
pub const ANY_CYCLOMATIC_MAX_ORDER: usize = 8;
/// Largest order for `m <= 2`.
pub const SPARSE_MAX_ORDER: usize = 11;
/// Largest order for `m = 3`.
pub const TRICYCLIC_MAX_ORDER: usize = 10;
/// Largest order accepted by [`enumerate_by_filter`].
pub const FILTER_MAX_ORDER: usize = 7;

/// Connected graphs of order `n` with `n - 1 + cyclomatic` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub cyclomatic: usize,
}

impl GenSpec {
    pub fn new(n: usize, cyclomatic: usize) -> Self {
        GenSpec { n, cyclomatic }
    }

    pub fn edges(&self) -> usize {
        self.n - 1 + self.cyclomatic
    }

    /// Checks the structural invariants and the generator bounds.
    pub fn check(&self) -> Result<()> {
        let GenSpec { n, cyclomatic: m } = *self;
        if n == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        if n - 1 + m > n * (n - 1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "no simple graph of order {n} has {} edges",
                n - 1 + m
            )));
        }
        let limit = match m {
            _ if n <= ANY_CYCLOMATIC_MAX_ORDER => return Ok(()),
            0..=2 => SPARSE_MAX_ORDER,
            3 => TRICYCLIC_MAX_ORDER,
            _ => ANY_CYCLOMATIC_MAX_ORDER,
        };
        if n > limit {
            return Err(Error::Bound {
                what: "order for graph enumeration",
                value: n,
                limit,
            });
        }
        Ok(())
    }
}

type Level = BTreeMap<CanonicalKey, Graph>;

fn canonical_level(candidates: Vec<Graph>) -> Level {
    candidates
        .into_par_iter()
        .map(|g| {
            let (form, _) = canonical_form(&g);
            (CanonicalKey::from_form(&form), form)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn trees(n: usize) -> Level {
    let mut level = canonical_level(vec![Graph::empty(1).expect("order 1")]);
    for k in 2..=n {
        let children: Vec<Graph> = level
            .values()
            .flat_map(|t| {
                (0..k - 1).map(move |v| {
                    let mut bigger = t
                        .disjoint_union(&Graph::empty(1).expect("order 1"))
                        .expect("within capacity");
                    bigger.add_edge(v, k - 1).expect("valid edge");
                    bigger
                })
            })
            .collect();
        level = canonical_level(children);
    }
    level
}

fn add_one_edge(level: &Level) -> Level {
    let children: Vec<Graph> = level
        .values()
        .flat_map(|g| {
            let n = g.order();
            (0..n)
                .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .map(|(u, v)| g.with_edge(u, v).expect("valid edge"))
        })
        .collect();
    canonical_level(children)
}

/// Every connected graph matching `spec`, one per isomorphism class, as
/// canonical forms ordered by canonical key.
pub fn enumerate(spec: GenSpec) -> Result<Vec<Graph>> {
    spec.check()?;
    let mut level = trees(spec.n);
    for _ in 0..spec.cyclomatic {
        level = add_one_edge(&level);
    }
    Ok(level.into_values().collect())
}

/// Number of graphs [`enumerate`] produces.
pub fn enumerate_count(spec: GenSpec) -> Result<usize> {
    enumerate(spec).map(|v| v.len())
}

/// Every connected graph of order `n` (all edge counts), ordered by edge
/// count and then canonical key.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    if n > ANY_CYCLOMATIC_MAX_ORDER {
        return Err(Error::Bound {
            what: "order for enumerating all connected graphs",
            value: n,
            limit: ANY_CYCLOMATIC_MAX_ORDER,
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let max_m = n * (n - 1) / 2 + 1 - n;
    let mut level = trees(n);
    let mut out: Vec<Graph> = level.values().copied().collect();
    for _ in 0..max_m {
        level = add_one_edge(&level);
        out.extend(level.values().copied());
    }
    Ok(out)
}

/// Independent generator: filters all labeled edge sets of the right size for
/// connectivity, then deduplicates by canonical key.
pub fn enumerate_by_filter(spec: GenSpec) -> Result<Vec<CanonicalKey>> {
    spec.check()?;
    if spec.n > FILTER_MAX_ORDER {
        return Err(Error::Bound {
            what: "order for the filtering generator",
            value: spec.n,
            limit: FILTER_MAX_ORDER,
        });
    }
    let n = spec.n;
    let all_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut masks = Vec::new();
    for_each_k_subset(all_edges.len(), spec.edges(), |s| masks.push(s));
    let mut keys: Vec<CanonicalKey> = masks
        .into_par_iter()
        .filter_map(|s| {
            let edges: Vec<_> = crate::graph::VertexSet(s)
                .iter()
                .map(|i| all_edges[i])
                .collect();
            let g = Graph::from_edges(n, &edges).expect("valid edges");
            g.is_connected().then(|| canonical_key(&g))
        })
        .collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(keys)
}

/// Writes one graph6 line per graph.
pub fn write_graph6<W: Write>(graphs: &[Graph], mut out: W) -> io::Result<()> {
    for g in graphs {
        writeln!(out, "{}", emit_graph6(g))?;
    }
    Ok(())
}

/// Stable shard index of a graph's canonical key (FNV-1a), for splitting a
/// class across workers.
pub fn shard_of(key: &CanonicalKey, shards: usize) -> usize {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in key.as_bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    (h % shards.max(1) as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_classes() {
        assert_eq!(enumerate_count(GenSpec::new(4, 2)).unwrap(), 1);
        assert_eq!(enumerate_count(GenSpec::new(3, 1)).unwrap(), 1);
        assert_eq!(enumerate_count(GenSpec::new(5, 1)).unwrap(), 5);
        assert_eq!(enumerate_count(GenSpec::new(1, 0)).unwrap(), 1);
        assert_eq!(enumerate_count(GenSpec::new(6, 0)).unwrap(), 6);
    }

    #[test]
    fn filter_generator_agrees() {
        for (n, m) in [(4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3)] {
            let spec = GenSpec::new(n, m);
            let keys: Vec<CanonicalKey> =
                enumerate(spec).unwrap().iter().map(canonical_key).collect();
            assert_eq!(keys, enumerate_by_filter(spec).unwrap(), "({n},{m})");
        }
    }

    #[test]
    fn emitted_graphs_have_the_right_shape() {
        for g in enumerate(GenSpec::new(7, 2)).unwrap() {
            assert!(g.is_connected());
            assert_eq!(g.size(), 8);
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            enumerate(GenSpec::new(12, 1)),
            Err(Error::Bound { .. })
        ));
        assert!(matches!(
            enumerate(GenSpec::new(11, 3)),
            Err(Error::Bound { .. })
        ));
        assert!(matches!(
            enumerate(GenSpec::new(9, 4)),
            Err(Error::Bound { .. })
        ));
        assert!(enumerate(GenSpec::new(4, 4)).is_err());
        assert!(enumerate(GenSpec::new(0, 0)).is_err());
        assert!(enumerate_by_filter(GenSpec::new(8, 1)).is_err());
    }

    #[test]
    fn all_connected_small_orders() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn shards_are_stable() {
        let key = canonical_key(&Graph::cycle(5).unwrap());
        assert_eq!(shard_of(&key, 7), shard_of(&key.clone(), 7));
        assert!(shard_of(&key, 7) < 7);
        assert_eq!(shard_of(&key, 0), 0);
    }
}
