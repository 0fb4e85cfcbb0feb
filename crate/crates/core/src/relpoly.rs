//! Connected-set and cop-win-set counts, their generating polynomials, and
//! the reliability polynomials built from them.
//!
//! For a graph `G` on `n` vertices, `S_k` counts vertex subsets of order `k`
//! inducing a connected subgraph and `W_k` those inducing a cop-win subgraph.
//! The generating polynomials are `CS(G,x) = Σ S_k x^k` and
//! `CW(G,x) = Σ W_k x^k`; node reliability is
//! `NRel(G,p) = Σ S_k p^k (1-p)^(n-k)` and node cop-win reliability uses `W_k`
//! in the same way.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::copwin::is_copwin_set;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::poly::CoeffPoly;

/// Largest order handled by the subset enumerators.
pub const ENUM_MAX_ORDER: usize = 24;
/// Largest edge count handled by the edge-subset enumerator.
pub const EDGE_MAX_SIZE: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReliabilityMeasure {
    /// Operational vertices induce a connected subgraph.
    NodeConnected,
    /// Operational vertices induce a cop-win subgraph.
    NodeCopwin,
    /// Operational edges form a cop-win spanning subgraph.
    EdgeCopwin,
}

impl ReliabilityMeasure {
    pub const ALL: [ReliabilityMeasure; 3] = [
        ReliabilityMeasure::NodeConnected,
        ReliabilityMeasure::NodeCopwin,
        ReliabilityMeasure::EdgeCopwin,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ReliabilityMeasure::NodeConnected => "nrel",
            ReliabilityMeasure::NodeCopwin => "ncrel",
            ReliabilityMeasure::EdgeCopwin => "ecrel",
        }
    }
}

impl fmt::Display for ReliabilityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ReliabilityMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nrel" | "node" | "node-connected" | "node_connected" => {
                Ok(ReliabilityMeasure::NodeConnected)
            }
            "ncrel" | "node-copwin" | "node_copwin" => Ok(ReliabilityMeasure::NodeCopwin),
            "ecrel" | "edge" | "edge-copwin" | "edge_copwin" => Ok(ReliabilityMeasure::EdgeCopwin),
            other => Err(Error::InvalidArgument(format!(
                "unknown reliability measure '{other}'"
            ))),
        }
    }
}

fn check_order(g: &Graph) -> Result<()> {
    if g.order() > ENUM_MAX_ORDER {
        return Err(Error::Bound {
            what: "order for subset enumeration",
            value: g.order(),
            limit: ENUM_MAX_ORDER,
        });
    }
    Ok(())
}

/// Visits every nonempty vertex subset inducing a connected subgraph.
fn for_each_connected_set(g: &Graph, mut f: impl FnMut(VertexSet)) {
    let n = g.order();
    for s in 1u64..(1u64 << n) {
        let set = VertexSet(s);
        if g.is_connected_set(set) {
            f(set);
        }
    }
}

/// `[S_1, .., S_n]`.
pub fn connected_set_counts(g: &Graph) -> Result<Vec<u64>> {
    check_order(g)?;
    let mut counts = vec![0u64; g.order()];
    for_each_connected_set(g, |s| counts[s.len() - 1] += 1);
    Ok(counts)
}

/// `[W_1, .., W_n]`.
pub fn copwin_set_counts(g: &Graph) -> Result<Vec<u64>> {
    check_order(g)?;
    let mut counts = vec![0u64; g.order()];
    for_each_connected_set(g, |s| {
        if is_copwin_set(g, s) {
            counts[s.len() - 1] += 1;
        }
    });
    Ok(counts)
}

/// `CS(G, x)`.
pub fn cs_poly(g: &Graph) -> Result<CoeffPoly> {
    connected_set_counts(g).map(|c| CoeffPoly::from_counts(&c))
}

/// `CW(G, x)`.
pub fn cw_poly(g: &Graph) -> Result<CoeffPoly> {
    copwin_set_counts(g).map(|c| CoeffPoly::from_counts(&c))
}

/// Number of cop-win spanning subgraphs of `g` with `k` edges, for
/// `k = 0..=m`.
pub fn edge_copwin_counts(g: &Graph) -> Result<Vec<u64>> {
    let edges = g.edges();
    let m = edges.len();
    if m > EDGE_MAX_SIZE {
        return Err(Error::Bound {
            what: "edge count for edge-subset enumeration",
            value: m,
            limit: EDGE_MAX_SIZE,
        });
    }
    let mut counts = vec![0u64; m + 1];
    let empty = Graph::empty(g.order())?;
    let all = g.vertices();
    for mask in 0u64..(1u64 << m) {
        let mut h = empty;
        for i in VertexSet(mask) {
            let (u, v) = edges[i];
            h.add_edge(u, v)?;
        }
        if is_copwin_set(&h, all) {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

/// Count vector feeding the reliability polynomial of `measure`, indexed by
/// the number of operational elements (`0..=n` vertices or `0..=m` edges).
pub fn count_vector(g: &Graph, measure: ReliabilityMeasure) -> Result<Vec<u64>> {
    let with_zero = |c: Vec<u64>| std::iter::once(0).chain(c).collect();
    match measure {
        ReliabilityMeasure::NodeConnected => connected_set_counts(g).map(with_zero),
        ReliabilityMeasure::NodeCopwin => copwin_set_counts(g).map(with_zero),
        ReliabilityMeasure::EdgeCopwin => edge_copwin_counts(g),
    }
}

/// Expands `Σ c_i p^i (1-p)^(N-i)` into the monomial basis, `N = len - 1`.
pub fn expand_reliability(counts: &[u64]) -> CoeffPoly {
    let Some(top) = counts.len().checked_sub(1) else {
        return CoeffPoly::zero();
    };
    let mut out = vec![BigInt::zero(); top + 1];
    for (i, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        // (1-p)^(top-i) = Σ_j C(top-i, j) (-1)^j p^j
        let r = top - i;
        let mut binom = BigInt::one();
        for j in 0..=r {
            let term = &binom * c;
            if j % 2 == 0 {
                out[i + j] += term;
            } else {
                out[i + j] -= term;
            }
            binom = binom * (r - j) / (j + 1);
        }
    }
    CoeffPoly::new(out)
}

/// The reliability polynomial of `g` in the operational probability.
pub fn reliability_poly(g: &Graph, measure: ReliabilityMeasure) -> Result<CoeffPoly> {
    count_vector(g, measure).map(|c| expand_reliability(&c))
}

fn check_probability(p: &BigRational) -> Result<()> {
    if p < &BigRational::zero() || p > &BigRational::one() {
        return Err(Error::InvalidArgument(format!(
            "probability {p} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// `NRel(G, p)` evaluated term by term from the connected-set counts.
pub fn nrel_direct(g: &Graph, p: &BigRational) -> Result<BigRational> {
    check_probability(p)?;
    let counts = connected_set_counts(g)?;
    let n = g.order();
    let q = BigRational::one() - p;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let k = i + 1;
            BigRational::from_integer(c.into()) * pow(p, k) * pow(&q, n - k)
        })
        .fold(BigRational::zero(), |a, b| a + b))
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow::pow(x.clone(), e)
}

/// Memo table for the pivoting recursions, keyed by isomorphism class.
/// Entries are pure functions of the key, so a cache may be reused across
/// calls; use one cache per worker thread.
#[derive(Default)]
pub struct PivotCache {
    cs: HashMap<CanonicalKey, CoeffPoly>,
}

impl PivotCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cs.is_empty()
    }
}

/// Pivot vertex: a simplicial vertex of least degree if one exists (then
/// `G/v = G - v`), otherwise a vertex of least degree.
fn pivot_vertex(g: &Graph) -> usize {
    let by_degree = |v: &usize| g.degree(*v);
    (0..g.order())
        .filter(|&v| g.is_simplicial(v))
        .min_by_key(by_degree)
        .or_else(|| (0..g.order()).min_by_key(by_degree))
        .expect("graph is nonempty")
}

/// `CS(G, x)` by the pivoting recursion
/// `CS(G) = CS(G-v) + x (CS(G/v) - CS(G-N[v]) + 1)`, with `CS` of the empty
/// graph taken as zero and components handled separately.
pub fn cs_poly_pivot(g: &Graph, cache: &mut PivotCache) -> CoeffPoly {
    match g.order() {
        0 => return CoeffPoly::zero(),
        1 => return CoeffPoly::monomial(1, 1),
        _ => {}
    }
    let comps = g.components();
    if comps.len() > 1 {
        return comps
            .into_iter()
            .map(|c| cs_poly_pivot(&g.induced_subgraph(c), cache))
            .fold(CoeffPoly::zero(), |a, b| a + b);
    }
    let key = canonical_key(g);
    if let Some(p) = cache.cs.get(&key) {
        return p.clone();
    }
    let v = pivot_vertex(g);
    let result = pivot_step(g, v, cache);
    cache.cs.insert(key, result.clone());
    result
}

/// One pivoting step at a caller-chosen vertex `v`; the three smaller graphs
/// are evaluated with [`cs_poly_pivot`].
pub fn cs_poly_pivot_at(g: &Graph, v: usize, cache: &mut PivotCache) -> Result<CoeffPoly> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    Ok(pivot_step(g, v, cache))
}

fn pivot_step(g: &Graph, v: usize, cache: &mut PivotCache) -> CoeffPoly {
    let minus = g.delete_vertex(v).expect("vertex in range");
    let cs_minus = cs_poly_pivot(&minus, cache);
    let cs_contract = if g.is_simplicial(v) {
        cs_minus.clone()
    } else {
        cs_poly_pivot(&g.contract_close(v).expect("vertex in range"), cache)
    };
    let cs_far = cs_poly_pivot(
        &g.delete_closed_neighborhood(v).expect("vertex in range"),
        cache,
    );
    let inner = &(&cs_contract - &cs_far) + &CoeffPoly::one();
    &cs_minus + &inner.shift(1)
}

/// `NRel(G, p)` by the pivoting recursion
/// `NRel(G) = (1-p) NRel(G-v) + p NRel(G/v) - p (1-p)^deg(v) NRel(G-N[v]) + p (1-p)^(n-1)`,
/// with `NRel` of the empty graph taken as zero.
pub fn nrel_pivot(g: &Graph, p: &BigRational) -> Result<BigRational> {
    check_probability(p)?;
    let mut memo = HashMap::new();
    Ok(nrel_rec(g, p, &mut memo))
}

fn nrel_rec(
    g: &Graph,
    p: &BigRational,
    memo: &mut HashMap<CanonicalKey, BigRational>,
) -> BigRational {
    let n = g.order();
    match n {
        0 => return BigRational::zero(),
        1 => return p.clone(),
        _ => {}
    }
    let key = canonical_key(g);
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    let v = pivot_vertex(g);
    let q = BigRational::one() - p;
    let minus = nrel_rec(&g.delete_vertex(v).expect("vertex in range"), p, memo);
    let contract = nrel_rec(&g.contract_close(v).expect("vertex in range"), p, memo);
    let far = nrel_rec(
        &g.delete_closed_neighborhood(v).expect("vertex in range"),
        p,
        memo,
    );
    let r = &q * minus + p * contract - p * pow(&q, g.degree(v)) * far + p * pow(&q, n - 1);
    memo.insert(key, r.clone());
    r
}

/// Checks `(1-p)^n CW(G, p/(1-p)) = NCRel(G, p)` for the count sequence
/// `[W_1, .., W_n]`.
///
/// The left side is evaluated as a rational function and the right side from
/// the expanded reliability polynomial, at `n + 1` distinct points of `(0,1)`;
/// both sides have degree at most `n`, so agreement there proves the identity.
pub fn mobius_bridge(counts: &[u64]) -> bool {
    let n = counts.len();
    let cw = CoeffPoly::from_counts(counts);
    let with_zero: Vec<u64> = std::iter::once(0).chain(counts.iter().copied()).collect();
    let ncrel = expand_reliability(&with_zero);
    (1..=n + 1).all(|j| {
        let p = BigRational::new(BigInt::from(j), BigInt::from(n + 2));
        let q = BigRational::one() - &p;
        let lhs = pow(&q, n) * cw.eval(&(&p / &q));
        lhs == ncrel.eval(&p)
    })
}

/// Coefficientwise dominance: true iff `deg(b) <= deg(a)` and every
/// coefficient of `b` is at most the matching coefficient of `a`.
pub fn coeff_dominates(a: &CoeffPoly, b: &CoeffPoly) -> bool {
    let len = a.coeffs().len().max(b.coeffs().len());
    b.degree() <= a.degree() && (0..len).all(|k| b.coeff(k) <= a.coeff(k))
}

/// [`coeff_dominates`] on count vectors.
pub fn counts_dominate(a: &[u64], b: &[u64]) -> bool {
    let len = a.len().max(b.len());
    (0..len).all(|k| b.get(k).copied().unwrap_or(0) <= a.get(k).copied().unwrap_or(0))
}

/// Serialized form of a polynomial attached to a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub version: u32,
    pub n: usize,
    pub measure: ReliabilityMeasure,
    /// `generating` for count polynomials in `x`, `reliability` for
    /// polynomials in the operational probability.
    pub form: PolyForm,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyForm {
    Generating,
    Reliability,
}

impl PolyRecord {
    pub const VERSION: u32 = 1;

    pub fn new(n: usize, measure: ReliabilityMeasure, form: PolyForm, poly: &CoeffPoly) -> Self {
        PolyRecord {
            version: Self::VERSION,
            n,
            measure,
            form,
            coefficients: poly.to_decimal_strings(),
        }
    }

    pub fn poly(&self) -> Result<CoeffPoly> {
        CoeffPoly::from_decimal_strings(&self.coefficients)
            .map_err(|e| Error::InvalidArgument(format!("bad coefficient: {e}")))
    }
}
