//! Reproduction checks for the published results, shared by the command line
//! front end. Each check is exhaustive over its stated range and exact.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_key;
use crate::copwin::{is_chordal, is_copwin, is_copwin_game};
use crate::enumerate::{enumerate, enumerate_by_filter, enumerate_connected, GenSpec};
use crate::error::{Error, Result};
use crate::families::{classify_bicyclic, BicyclicType, FamilySpec};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::poly::CoeffPoly;
use crate::relpoly::{
    coeff_dominates, cs_poly, cs_poly_pivot, cw_poly, PivotCache, ReliabilityMeasure,
};
use crate::roots::{disk_scan_graphs, DEFAULT_TOLERANCE};
use crate::umr::{find_umr, verify_conjecture_h, Resolution, UmrReport, Verdict};

/// Edge lists of the six order-8 graphs of the G3 table, with their printed
/// `CS` coefficients of `x^1 .. x^8`.
pub const G3_TABLE: [(&[(usize, usize)], [u64; 8]); 6] = [
    (
        &[
            (0, 4),
            (0, 5),
            (1, 5),
            (1, 6),
            (2, 6),
            (2, 7),
            (3, 6),
            (3, 7),
            (4, 7),
        ],
        [8, 9, 12, 14, 16, 18, 8, 1],
    ),
    (
        &[
            (0, 4),
            (0, 6),
            (1, 5),
            (1, 6),
            (2, 5),
            (2, 7),
            (3, 6),
            (3, 7),
            (4, 7),
        ],
        [8, 9, 12, 17, 21, 20, 8, 1],
    ),
    (
        &[
            (0, 4),
            (0, 5),
            (0, 7),
            (1, 4),
            (1, 6),
            (2, 5),
            (2, 7),
            (3, 6),
            (3, 7),
        ],
        [8, 9, 12, 15, 18, 16, 8, 1],
    ),
    (
        &[
            (0, 4),
            (0, 5),
            (1, 4),
            (1, 6),
            (2, 5),
            (2, 7),
            (3, 6),
            (3, 7),
            (4, 7),
        ],
        [8, 9, 12, 18, 20, 17, 8, 1],
    ),
    (
        &[
            (0, 4),
            (0, 5),
            (1, 4),
            (1, 6),
            (2, 5),
            (2, 7),
            (3, 6),
            (3, 7),
            (5, 7),
        ],
        [8, 9, 10, 11, 12, 13, 8, 1],
    ),
    (
        &[
            (0, 3),
            (0, 6),
            (1, 4),
            (1, 6),
            (2, 5),
            (2, 6),
            (3, 7),
            (4, 7),
            (5, 7),
        ],
        [8, 9, 12, 17, 24, 21, 8, 1],
    ),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// graph6 strings of graphs on which the check failed.
    pub counterexamples: Vec<String>,
    pub millis: u128,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] {:>2} {}: {} ({} ms)",
            self.id, self.name, self.detail, self.millis
        )?;
        for g6 in &self.counterexamples {
            write!(f, "\n       counterexample {g6}")?;
        }
        Ok(())
    }
}

/// Which checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Table1,
    Appendix,
    Check(u8),
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" | "default" => Ok(Scope::All),
            "table1" => Ok(Scope::Table1),
            "appendix" => Ok(Scope::Appendix),
            other => match other.parse::<u8>() {
                Ok(id) if (1..=CHECK_COUNT).contains(&id) => Ok(Scope::Check(id)),
                _ => Err(Error::InvalidArgument(format!(
                    "unknown scope '{s}' (expected all, table1, appendix or 1..={CHECK_COUNT})"
                ))),
            },
        }
    }
}

pub const CHECK_COUNT: u8 = 12;

pub const CHECK_NAMES: [&str; CHECK_COUNT as usize] = [
    "order-8 G3 table",
    "closed forms against counting",
    "pivot recursion",
    "chordal iff CS = CW",
    "U_n is UMR for cop-win reliability among unicyclic graphs",
    "B_n is UMR for cop-win reliability among bicyclic graphs",
    "no UMR graph for node reliability",
    "coefficient dominance lemmas",
    "dismantling against game search",
    "edge cop-win roots in |z - 1| <= 1",
    "H(n, 3) sweep",
    "order-7 bicyclic table",
];

fn run_one(id: u8) -> CheckResult {
    let start = Instant::now();
    let outcome = match id {
        1 => check_table(),
        2 => check_closed_forms(),
        3 => check_pivot(),
        4 => check_chordal(),
        5 => check_unicyclic_copwin(),
        6 => check_bicyclic_copwin(),
        7 => check_no_umr(),
        8 => check_dominance_lemmas(),
        9 => check_copwin_oracles(),
        10 => check_disk(),
        11 => check_conjecture(),
        12 => check_appendix().map(|(o, _)| o),
        _ => unreachable!("check ids are validated"),
    };
    let (passed, detail, counterexamples) = match outcome {
        Ok(o) => (o.passed, o.detail, o.counterexamples),
        Err(e) => (false, format!("error: {e}"), Vec::new()),
    };
    CheckResult {
        id,
        name: CHECK_NAMES[id as usize - 1].to_string(),
        passed,
        detail,
        counterexamples,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run(scope: Scope) -> Vec<CheckResult> {
    let ids: Vec<u8> = match scope {
        Scope::All => (1..=CHECK_COUNT).collect(),
        Scope::Table1 => vec![1],
        Scope::Appendix => vec![12],
        Scope::Check(id) => vec![id],
    };
    ids.into_iter().map(run_one).collect()
}

struct Outcome {
    passed: bool,
    detail: String,
    counterexamples: Vec<String>,
}

impl Outcome {
    fn new(bad: Vec<String>, ok: impl Into<String>) -> Self {
        let passed = bad.is_empty();
        let detail = if passed {
            ok.into()
        } else {
            format!("{} failure(s)", bad.len())
        };
        Outcome {
            passed,
            detail,
            counterexamples: bad,
        }
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g)
}

fn check_table() -> Result<Outcome> {
    let mut bad = Vec::new();
    for (edges, coeffs) in G3_TABLE {
        let g = Graph::from_edges(8, edges)?;
        if cs_poly(&g)? != CoeffPoly::from_counts(&coeffs)
            || !matches!(classify_bicyclic(&g)?, BicyclicType::Type3 { .. })
        {
            bad.push(g6(&g));
        }
    }
    Ok(Outcome::new(bad, "6 of 6 polynomials equal"))
}

/// Closed forms for `U_n`, `C_n`, `A_n`, `B_n` and `F(n - 5, 0)`; the `A_n`
/// form is compared up to degree `n - 2`.
fn check_closed_forms() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut compared = 0;
    for n in 5..=12 {
        for spec in [
            FamilySpec::U(n),
            FamilySpec::Cycle(n),
            FamilySpec::A(n),
            FamilySpec::B(n),
            FamilySpec::F(n - 5, 0),
        ] {
            let counted = cw_poly(&spec.build()?)?;
            let closed = spec.closed_form_cw()?;
            let upto = spec.closed_form_agreement_degree();
            compared += 1;
            if (0..=upto).any(|k| counted.coeff(k) != closed.coeff(k)) {
                bad.push(format!("{spec}"));
            }
        }
    }
    Ok(Outcome::new(
        bad,
        format!("{compared} closed forms agree (A_n up to degree n-2)"),
    ))
}

pub fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

fn check_pivot() -> Result<Outcome> {
    let mut graphs = Vec::new();
    for n in 1..=7 {
        graphs.extend(enumerate_connected(n)?);
    }
    let exhaustive = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    graphs.extend((0..1000).map(|_| {
        let n = rng.gen_range(1..=12);
        random_graph(&mut rng, n)
    }));
    let bad: Vec<String> = graphs
        .par_iter()
        .filter(|g| cs_poly_pivot(g, &mut PivotCache::new()) != cs_poly(g).expect("within bounds"))
        .map(g6)
        .collect();
    Ok(Outcome::new(
        bad,
        format!("{exhaustive} connected graphs (n <= 7) and 1000 random graphs agree"),
    ))
}

fn check_chordal() -> Result<Outcome> {
    let mut graphs = Vec::new();
    for n in 1..=7 {
        graphs.extend(enumerate_connected(n)?);
    }
    let bad: Vec<String> = graphs
        .par_iter()
        .filter(|g| (cs_poly(g).expect("bounded") == cw_poly(g).expect("bounded")) != is_chordal(g))
        .map(g6)
        .collect();
    let chordal = graphs.iter().filter(|g| is_chordal(g)).count();
    Ok(Outcome::new(
        bad,
        format!(
            "{} graphs, {chordal} chordal, equality exactly on those",
            graphs.len()
        ),
    ))
}

fn key_g6(spec: FamilySpec) -> Result<String> {
    Ok(canonical_key(&spec.build()?).as_graph6().to_string())
}

fn winners_are(report: &UmrReport, expected: &str) -> bool {
    report.winners.len() == 1 && report.winners[0] == expected
}

fn check_unicyclic_copwin() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 5..=9 {
        let r = find_umr(n, 1, ReliabilityMeasure::NodeCopwin)?;
        let cycle = key_g6(FamilySpec::Cycle(n))?;
        let via_sturm = r.comparison_with(&cycle).is_some_and(|c| {
            c.report.resolution == Resolution::Sturm
                && c.report.root_count_in_01 == 0
                && c.report.verdict.is_at_least()
        });
        if !winners_are(&r, &key_g6(FamilySpec::U(n))?) || !via_sturm {
            bad.push(format!("n={n}: winners {:?}", r.winners));
        }
    }
    Ok(Outcome::new(
        bad,
        "winner U_n for n = 5..9; C_n settled by Sturm with no sign change",
    ))
}

fn check_bicyclic_copwin() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 7..=9 {
        let r = find_umr(n, 2, ReliabilityMeasure::NodeCopwin)?;
        if !winners_are(&r, &key_g6(FamilySpec::B(n))?) {
            bad.push(format!("n={n}: winners {:?}", r.winners));
        }
    }
    Ok(Outcome::new(bad, "winner B_n for n = 7..9"))
}

/// For each `n`, the search returns no winner and the named pair crosses.
fn check_no_umr() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut pairs = Vec::new();
    for n in 7..=9 {
        let r = find_umr(n, 2, ReliabilityMeasure::NodeConnected)?;
        let b = key_g6(FamilySpec::B(n))?;
        let g3_crossing = r.candidates.contains(&b)
            && r.failures().any(|c| {
                c.report.verdict == Verdict::Crossing
                    && c.against.iter().any(|s| {
                        parse_graph6(s)
                            .and_then(|g| classify_bicyclic(&g))
                            .is_ok_and(|t| matches!(t, BicyclicType::Type3 { .. }))
                    })
            });
        if !r.winners.is_empty() || !g3_crossing {
            bad.push(format!("bicyclic n={n}"));
        } else {
            pairs.push(format!("(B_{n}, G3)"));
        }
    }
    for n in 5..=9 {
        let r = find_umr(n, 1, ReliabilityMeasure::NodeConnected)?;
        let u = key_g6(FamilySpec::U(n))?;
        let cycle = key_g6(FamilySpec::Cycle(n))?;
        let crossing = r.candidates.contains(&u)
            && r.comparison_with(&cycle)
                .is_some_and(|c| c.report.verdict == Verdict::Crossing);
        if !r.winners.is_empty() || !crossing {
            bad.push(format!("unicyclic n={n}"));
        } else {
            pairs.push(format!("(U_{n}, C_{n})"));
        }
    }
    Ok(Outcome::new(
        bad,
        format!("no winners; crossing pairs {}", pairs.join(" ")),
    ))
}

fn check_dominance_lemmas() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut count = 0usize;
    let cs = |g: &Graph| cs_poly(g);

    // U_n dominates every unicyclic graph other than C_n.
    for n in 5..=9 {
        let u = cs(&FamilySpec::U(n).build()?)?;
        let cycle = canonical_key(&FamilySpec::Cycle(n).build()?);
        for g in enumerate(GenSpec::new(n, 1))? {
            if canonical_key(&g) == cycle {
                continue;
            }
            count += 1;
            if !coeff_dominates(&u, &cs(&g)?) {
                bad.push(format!("unicyclic {}", g6(&g)));
            }
        }
    }
    // B_n against F(n1, n2).
    for n in 7..=11 {
        let b = cs(&FamilySpec::B(n).build()?)?;
        for n2 in 0..=(n - 5) / 2 {
            let f = FamilySpec::F(n - 5 - 2 * n2, n2);
            count += 1;
            if !coeff_dominates(&b, &cs(&f.build()?)?) {
                bad.push(format!("{f}"));
            }
        }
    }
    // B_n against bicyclic graphs whose cycles share at most one vertex,
    // and (cop-win counts) against every bicyclic graph.
    for n in 7..=9 {
        let bg = FamilySpec::B(n).build()?;
        let (b_cs, b_cw) = (cs(&bg)?, cw_poly(&bg)?);
        for g in enumerate(GenSpec::new(n, 2))? {
            count += 1;
            if !coeff_dominates(&b_cw, &cw_poly(&g)?) {
                bad.push(format!("cw {}", g6(&g)));
            }
            if !matches!(classify_bicyclic(&g)?, BicyclicType::Type3 { .. }) {
                count += 1;
                if !coeff_dominates(&b_cs, &cs(&g)?) {
                    bad.push(format!("type 1/2 {}", g6(&g)));
                }
            }
        }
    }
    // B_n + x^(n-1) against G3(a, b, c).
    for n in 8..=11 {
        let bound = &cs(&FamilySpec::B(n).build()?)? + &CoeffPoly::monomial(1, n - 1);
        for a in 0..=n - 2 {
            for b in a..=n - 2 - a {
                let c = n - 2 - a - b;
                let spec = FamilySpec::G3(a, b, c);
                if c < b || spec.validate().is_err() {
                    continue;
                }
                count += 1;
                if !coeff_dominates(&bound, &cs(&spec.build()?)?) {
                    bad.push(format!("{spec}"));
                }
            }
        }
    }
    Ok(Outcome::new(
        bad,
        format!("{count} coefficientwise comparisons hold"),
    ))
}

fn check_copwin_oracles() -> Result<Outcome> {
    let mut graphs = Vec::new();
    for n in 1..=8 {
        graphs.extend(enumerate_connected(n)?);
    }
    let results: Vec<(String, bool, bool)> = graphs
        .par_iter()
        .map(|g| Ok((g6(g), is_copwin(g).0, is_copwin_game(g)?)))
        .collect::<Result<_>>()?;
    let bad: Vec<String> = results
        .iter()
        .filter(|r| r.1 != r.2)
        .map(|r| r.0.clone())
        .collect();
    let copwin = results.iter().filter(|r| r.1).count();
    Ok(Outcome::new(
        bad,
        format!(
            "{} graphs (n <= 8), {copwin} cop-win, oracles agree",
            graphs.len()
        ),
    ))
}

fn check_disk() -> Result<Outcome> {
    let mut graphs = Vec::new();
    for n in 1..=6 {
        graphs.extend(enumerate_connected(n)?);
    }
    let summary = disk_scan_graphs(&graphs, ReliabilityMeasure::EdgeCopwin, DEFAULT_TOLERANCE)?;
    let mut outcome = Outcome::new(summary.outside.clone(), String::new());
    let orders: std::collections::BTreeSet<usize> = summary
        .outside
        .iter()
        .filter_map(|s| parse_graph6(s).ok().map(|g| g.order()))
        .collect();
    outcome.detail = format!(
        "{} graphs (n <= 6), {} with a root outside (orders {:?}), max |z - 1| = {:.12}",
        summary.graphs,
        summary.outside.len(),
        orders,
        summary.max_dist_from_one
    );
    Ok(outcome)
}

/// Passes when the sweep completes; the verdict is reported either way.
fn check_conjecture() -> Result<Outcome> {
    let mut parts = Vec::new();
    for n in 7..=8 {
        let r = verify_conjecture_h(n, 3)?;
        let verdict = if r.holds {
            "holds".to_string()
        } else {
            let against: Vec<&str> = r
                .counterexamples
                .iter()
                .map(|c| c.against[0].as_str())
                .collect();
            format!("fails against {}", against.join(","))
        };
        parts.push(format!("n={n}: {} graphs, {verdict}", r.class_size));
    }
    Ok(Outcome::new(Vec::new(), parts.join("; ")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixRow {
    pub graph6: String,
    pub edges: Vec<(usize, usize)>,
    pub cs: CoeffPoly,
}

impl fmt::Display for AppendixRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(f, "{}\t{}\t{}", self.graph6, edges.join(" "), self.cs)
    }
}

/// Every bicyclic graph of order 7 with its `CS` polynomial.
pub fn appendix_table() -> Result<Vec<AppendixRow>> {
    enumerate(GenSpec::new(7, 2))?
        .iter()
        .map(|g| {
            Ok(AppendixRow {
                graph6: g6(g),
                edges: g.edges(),
                cs: cs_poly(g)?,
            })
        })
        .collect()
}

fn check_appendix() -> Result<(Outcome, Vec<AppendixRow>)> {
    let rows = appendix_table()?;
    let filter_keys = enumerate_by_filter(GenSpec::new(7, 2))?;
    let keys: Vec<String> = rows.iter().map(|r| r.graph6.clone()).collect();
    let same = keys.len() == filter_keys.len()
        && keys
            .iter()
            .zip(&filter_keys)
            .all(|(a, b)| a == b.as_graph6());
    let bad = if same {
        Vec::new()
    } else {
        vec![format!("{} rows vs {}", keys.len(), filter_keys.len())]
    };
    Ok((
        Outcome::new(bad, format!("{} rows, both generators agree", rows.len())),
        rows,
    ))
}
