//! Exact reliability dominance on `[0, 1]` and searches for uniformly most
//! reliable graphs.
//!
//! Two graphs are compared through the difference of their reliability
//! polynomials. When one count vector dominates the other entrywise the
//! verdict follows immediately; otherwise the sign pattern of the difference
//! on `(0, 1)` is settled with a squarefree decomposition and Sturm counts.
//!
//! A UMR graph must win near `p = 0`, where the lowest index at which two
//! count vectors differ decides the sign. So only graphs whose count vector
//! is the lexicographic maximum (lowest index first) can be UMR, and
//! [`find_umr`] checks that single candidate vector against every other one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate, GenSpec};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::poly::CoeffPoly;
use crate::relpoly::{count_vector, counts_dominate, expand_reliability, ReliabilityMeasure};
use crate::sturm::{census_open_unit, separating_points};

/// Sign of `R(g, p) - R(h, p)` on `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Equal,
    /// Strictly positive on `(0, 1)`.
    DominatesStrictlyOnOpenInterval,
    /// Nonnegative on `[0, 1]`, touching zero inside `(0, 1)`.
    Dominates,
    /// Nonpositive on `[0, 1]` and not identically zero.
    DominatedBy,
    /// Takes both signs.
    Crossing,
}

impl Verdict {
    /// `R(g) >= R(h)` everywhere.
    pub fn is_at_least(self) -> bool {
        matches!(
            self,
            Verdict::Equal | Verdict::Dominates | Verdict::DominatesStrictlyOnOpenInterval
        )
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// Entrywise comparison of the count vectors.
    Prefilter,
    /// Exact root analysis of the difference polynomial.
    Sturm,
}

/// A sample point and the strict sign of the difference there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "rational_string")]
    pub p: BigRational,
    pub sign: i8,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub version: u32,
    pub verdict: Verdict,
    pub resolution: Resolution,
    /// Sign-changing (odd multiplicity) roots of the difference in `(0, 1)`.
    pub root_count_in_01: usize,
    /// Even-multiplicity roots in `(0, 1)`, where the difference touches zero.
    pub tangent_roots_in_01: usize,
    pub witnesses: Vec<Witness>,
    /// `R(g, p) - R(h, p)` in the monomial basis.
    pub difference: CoeffPoly,
}

impl DominanceReport {
    pub const VERSION: u32 = 1;
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn witness(d: &CoeffPoly, p: BigRational) -> Witness {
    let sign = sign_of(&d.eval(&p));
    Witness { p, sign }
}

fn endpoint_witnesses(d: &CoeffPoly) -> Vec<Witness> {
    [(0, 1), (1, 2), (1, 1)]
        .into_iter()
        .map(|(a, b)| witness(d, BigRational::new(a.into(), b.into())))
        .collect()
}

/// Compares two count vectors over the same ground set size.
pub fn dominance_counts(a: &[u64], b: &[u64]) -> Result<DominanceReport> {
    if a.len() != b.len() {
        return Err(Error::Incomparable(format!(
            "count vectors of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let difference = &expand_reliability(a) - &expand_reliability(b);
    let report = |verdict, resolution, odd, even, witnesses| DominanceReport {
        version: DominanceReport::VERSION,
        verdict,
        resolution,
        root_count_in_01: odd,
        tangent_roots_in_01: even,
        witnesses,
        difference: difference.clone(),
    };
    if a == b {
        return Ok(report(
            Verdict::Equal,
            Resolution::Prefilter,
            0,
            0,
            Vec::new(),
        ));
    }
    if counts_dominate(a, b) {
        let w = endpoint_witnesses(&difference);
        return Ok(report(
            Verdict::DominatesStrictlyOnOpenInterval,
            Resolution::Prefilter,
            0,
            0,
            w,
        ));
    }
    if counts_dominate(b, a) {
        let w = endpoint_witnesses(&difference);
        return Ok(report(Verdict::DominatedBy, Resolution::Prefilter, 0, 0, w));
    }

    let rat = difference.to_rat();
    let census = census_open_unit(&rat)?;
    let mut witnesses: Vec<Witness> = separating_points(&rat)?
        .into_iter()
        .map(|p| witness(&difference, p))
        .collect();
    debug_assert!(witnesses.iter().all(|w| w.sign != 0));
    let positive = witnesses.iter().any(|w| w.sign > 0);
    let negative = witnesses.iter().any(|w| w.sign < 0);
    debug_assert_eq!(positive && negative, census.odd > 0);
    let verdict = match (positive, negative) {
        (true, true) => Verdict::Crossing,
        (true, false) if census.even == 0 => Verdict::DominatesStrictlyOnOpenInterval,
        (true, false) => Verdict::Dominates,
        _ => Verdict::DominatedBy,
    };
    if verdict != Verdict::Crossing {
        witnesses.insert(0, witness(&difference, BigRational::zero()));
        witnesses.push(witness(&difference, BigRational::one()));
    }
    Ok(report(
        verdict,
        Resolution::Sturm,
        census.odd,
        census.even,
        witnesses,
    ))
}

/// Exact comparison of `R(g, p)` and `R(h, p)` on `[0, 1]`. Both graphs must
/// have the same order and the same number of edges.
pub fn dominance(g: &Graph, h: &Graph, measure: ReliabilityMeasure) -> Result<DominanceReport> {
    if g.order() != h.order() {
        return Err(Error::Incomparable(format!(
            "orders {} and {} differ",
            g.order(),
            h.order()
        )));
    }
    if g.size() != h.size() {
        return Err(Error::Incomparable(format!(
            "edge counts {} and {} differ",
            g.size(),
            h.size()
        )));
    }
    dominance_counts(&count_vector(g, measure)?, &count_vector(h, measure)?)
}

/// The verdict seen from the other side.
pub fn swap_verdict(v: Verdict) -> Verdict {
    match v {
        Verdict::Dominates | Verdict::DominatesStrictlyOnOpenInterval => Verdict::DominatedBy,
        Verdict::DominatedBy => Verdict::Dominates,
        other => other,
    }
}

/// Samples the sign of the difference at `samples + 1` equispaced rational
/// points of `[0, 1]` and returns whether strictly positive and strictly
/// negative values were seen.
pub fn sample_signs(difference: &CoeffPoly, samples: usize) -> (bool, bool) {
    let mut pos = false;
    let mut neg = false;
    for j in 0..=samples {
        let p = BigRational::new(BigInt::from(j), BigInt::from(samples));
        match sign_of(&difference.eval(&p)) {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    (pos, neg)
}

/// Comparison of a fixed graph against one count-vector class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    /// graph6 of every class member sharing the compared vector.
    pub against: Vec<String>,
    pub report: DominanceReport,
}

/// Outcome of a UMR search over one class of `m`-cyclic graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UmrReport {
    pub version: u32,
    pub n: usize,
    pub cyclomatic: usize,
    pub measure: ReliabilityMeasure,
    pub class_size: usize,
    pub distinct_vectors: usize,
    /// Graphs with the lexicographically largest count vector.
    pub candidates: Vec<String>,
    /// Empty when no UMR graph exists.
    pub winners: Vec<String>,
    /// Family names of the first winner, or of the first candidate when
    /// there is no winner.
    pub family_tags: Vec<String>,
    pub prefilter_resolved: usize,
    pub sturm_resolved: usize,
    pub comparisons: Vec<Comparison>,
}

impl UmrReport {
    pub const VERSION: u32 = 1;

    /// Comparisons in which the candidate is not everywhere at least as
    /// reliable; each one carries a crossing witness pair.
    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons
            .iter()
            .filter(|c| !c.report.verdict.is_at_least())
    }

    /// The comparison against the class containing `g6`, if any.
    pub fn comparison_with(&self, g6: &str) -> Option<&Comparison> {
        self.comparisons
            .iter()
            .find(|c| c.against.iter().any(|s| s == g6))
    }
}

type Classes = BTreeMap<Vec<u64>, Vec<String>>;

fn classes(spec: GenSpec, measure: ReliabilityMeasure) -> Result<(usize, Classes)> {
    let graphs = enumerate(spec)?;
    let vectors = graphs
        .par_iter()
        .map(|g| count_vector(g, measure).map(|c| (c, emit_graph6(g))))
        .collect::<Result<Vec<_>>>()?;
    let mut map: Classes = BTreeMap::new();
    for (c, g6) in vectors {
        map.entry(c).or_default().push(g6);
    }
    Ok((graphs.len(), map))
}

fn compare_all(top: &[u64], map: &Classes) -> Result<Vec<Comparison>> {
    map.par_iter()
        .filter(|(c, _)| c.as_slice() != top)
        .map(|(c, members)| {
            Ok(Comparison {
                against: members.clone(),
                report: dominance_counts(top, c)?,
            })
        })
        .collect()
}

fn tags_of(g6: &str) -> Vec<String> {
    crate::graph6::parse_graph6(g6)
        .map(|g| {
            crate::families::identify(&g)
                .iter()
                .map(ToString::to_string)
                .collect()
        })
        .unwrap_or_default()
}

/// Searches the connected graphs of order `n` with cyclomatic number `m` for
/// graphs that are at least as reliable as every other member for all `p`.
pub fn find_umr(n: usize, m: usize, measure: ReliabilityMeasure) -> Result<UmrReport> {
    let (class_size, map) = classes(GenSpec::new(n, m), measure)?;
    let (top, candidates) = map.iter().next_back().expect("classes are nonempty");
    let comparisons = compare_all(top, &map)?;
    let holds = comparisons.iter().all(|c| c.report.verdict.is_at_least());
    let winners = if holds {
        candidates.clone()
    } else {
        Vec::new()
    };
    let prefilter_resolved = comparisons
        .iter()
        .filter(|c| c.report.resolution == Resolution::Prefilter)
        .count();
    Ok(UmrReport {
        version: UmrReport::VERSION,
        n,
        cyclomatic: m,
        measure,
        class_size,
        distinct_vectors: map.len(),
        candidates: candidates.clone(),
        winners,
        family_tags: tags_of(&candidates[0]),
        prefilter_resolved,
        sturm_resolved: comparisons.len() - prefilter_resolved,
        comparisons,
    })
}

/// Exhaustive check of `H(n, m)` against every `m`-cyclic graph of order `n`
/// under node cop-win reliability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub version: u32,
    pub n: usize,
    pub cyclomatic: usize,
    pub h_graph6: String,
    pub class_size: usize,
    pub distinct_vectors: usize,
    pub holds: bool,
    /// Non-isomorphic graphs whose count vector equals that of `H(n, m)`.
    pub ties: Vec<String>,
    pub counterexamples: Vec<Comparison>,
    pub prefilter_resolved: usize,
    pub sturm_resolved: usize,
}

impl ConjectureReport {
    pub const VERSION: u32 = 1;
}

pub fn verify_conjecture_h(n: usize, m: usize) -> Result<ConjectureReport> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "cyclomatic number {m} is settled; the check needs m >= 3"
        )));
    }
    let spec = GenSpec::new(n, m);
    spec.check()?;
    let h = FamilySpec::H(n, m).build()?;
    let measure = ReliabilityMeasure::NodeCopwin;
    let h_counts = count_vector(&h, measure)?;
    let h_graph6 = emit_graph6(&crate::canon::canonical_form(&h).0);
    let (class_size, map) = classes(spec, measure)?;
    let ties: Vec<String> = map
        .get(&h_counts)
        .map(|v| v.iter().filter(|s| **s != h_graph6).cloned().collect())
        .unwrap_or_default();
    let comparisons = compare_all(&h_counts, &map)?;
    let prefilter_resolved = comparisons
        .iter()
        .filter(|c| c.report.resolution == Resolution::Prefilter)
        .count();
    let sturm_resolved = comparisons.len() - prefilter_resolved;
    let counterexamples: Vec<Comparison> = comparisons
        .into_iter()
        .filter(|c| !c.report.verdict.is_at_least())
        .collect();
    Ok(ConjectureReport {
        version: ConjectureReport::VERSION,
        n,
        cyclomatic: m,
        h_graph6,
        class_size,
        distinct_vectors: map.len(),
        holds: counterexamples.is_empty(),
        ties,
        counterexamples,
        prefilter_resolved,
        sturm_resolved,
    })
}

/// Convenience for callers holding a positive witness and a negative one.
pub fn crossing_pair(report: &DominanceReport) -> Option<(&Witness, &Witness)> {
    let pos = report.witnesses.iter().find(|w| w.sign > 0)?;
    let neg = report.witnesses.iter().find(|w| w.sign < 0)?;
    Some((pos, neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn build(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn u6_beats_c6_by_sturm() {
        let r = dominance(&build("U:6"), &build("C:6"), ReliabilityMeasure::NodeCopwin).unwrap();
        assert_eq!(r.verdict, Verdict::DominatesStrictlyOnOpenInterval);
        assert_eq!(r.resolution, Resolution::Sturm);
        assert_eq!(r.root_count_in_01, 0);
    }

    #[test]
    fn b8_and_g3_cross_under_node_reliability() {
        let r = dominance(
            &build("B:8"),
            &build("G3:1,1,4"),
            ReliabilityMeasure::NodeConnected,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Crossing);
        assert!(r.root_count_in_01 >= 1);
        let (pos, neg) = crossing_pair(&r).unwrap();
        assert!(pos.p < neg.p, "B_8 wins near 0 and loses near 1");
    }

    #[test]
    fn reflexive_and_antisymmetric() {
        let g = build("F:1,1");
        for m in ReliabilityMeasure::ALL {
            assert_eq!(dominance(&g, &g, m).unwrap().verdict, Verdict::Equal);
        }
        let weak = |v| match v {
            Verdict::DominatesStrictlyOnOpenInterval => Verdict::Dominates,
            v => v,
        };
        let h = build("G1:4,5");
        for m in ReliabilityMeasure::ALL {
            let forward = dominance(&g, &h, m).unwrap().verdict;
            let back = dominance(&h, &g, m).unwrap().verdict;
            assert_eq!(weak(swap_verdict(forward)), weak(back));
        }
    }

    #[test]
    fn tangent_root_gives_weak_dominance() {
        // difference p (1-p)^2 (t-1)^2 with t = p/(1-p), touching zero at 1/2
        let r = dominance_counts(&[0, 5, 1, 4], &[0, 4, 3, 3]).unwrap();
        assert_eq!(r.verdict, Verdict::Dominates);
        assert_eq!(r.resolution, Resolution::Sturm);
        assert_eq!((r.root_count_in_01, r.tangent_roots_in_01), (0, 1));
        let r = dominance_counts(&[0, 4, 3, 3], &[0, 5, 1, 4]).unwrap();
        assert_eq!(r.verdict, Verdict::DominatedBy);
    }

    #[test]
    fn simple_crossing() {
        // difference p^2 (2p - 1)
        let r = dominance_counts(&[0, 4, 2, 4], &[0, 4, 3, 3]).unwrap();
        assert_eq!(r.verdict, Verdict::Crossing);
        assert_eq!(r.root_count_in_01, 1);
    }

    #[test]
    fn rejects_mismatched_classes() {
        let err = dominance(&build("U:6"), &build("U:7"), ReliabilityMeasure::NodeCopwin);
        assert!(matches!(err, Err(Error::Incomparable(_))));
        let err = dominance(&build("U:6"), &build("B:6"), ReliabilityMeasure::NodeCopwin);
        assert!(matches!(err, Err(Error::Incomparable(_))));
    }

    #[test]
    fn small_searches() {
        let r = find_umr(6, 1, ReliabilityMeasure::NodeCopwin).unwrap();
        assert_eq!(r.winners.len(), 1);
        assert_eq!(r.family_tags[0], "U:6");
        let r = find_umr(6, 1, ReliabilityMeasure::NodeConnected).unwrap();
        assert!(r.winners.is_empty());
        assert!(r.failures().all(|c| c.report.verdict == Verdict::Crossing));
    }

    #[test]
    fn conjecture_precondition() {
        assert!(verify_conjecture_h(7, 2).is_err());
    }
}
