use std::fs;
use std::io::{self, BufWriter, Write};

use ncrel_core::copwin::GAME_ORACLE_MAX_ORDER;
use ncrel_core::enumerate::{enumerate_by_filter, enumerate_connected};
use ncrel_core::families::identify;
use ncrel_core::roots::{disk_scan_graphs, DiskSummary};
use ncrel_core::verify::{self, Scope};
use ncrel_core::*;
use serde::Serialize;

use crate::input::{build_family, graph_arg};
use crate::{CliError, Command, Outcome, PolyKind};

type Out = BufWriter<io::StdoutLock<'static>>;

fn json_line<T: Serialize>(out: &mut Out, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn json_pretty<T: Serialize>(out: &mut Out, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn decimal(counts: &[u64]) -> Vec<String> {
    counts.iter().map(u64::to_string).collect()
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    let mut out = BufWriter::new(io::stdout().lock());
    let outcome = dispatch(command, &mut out)?;
    out.flush()?;
    Ok(outcome)
}

fn dispatch(command: Command, out: &mut Out) -> Result<Outcome, CliError> {
    match command {
        Command::Poly { input, kind } => {
            for g in input.require()? {
                let coefficients = match kind {
                    PolyKind::Cs => decimal(&connected_set_counts(&g)?),
                    PolyKind::Cw => decimal(&copwin_set_counts(&g)?),
                    PolyKind::Nrel => reliability(&g, ReliabilityMeasure::NodeConnected)?,
                    PolyKind::Ncrel => reliability(&g, ReliabilityMeasure::NodeCopwin)?,
                    PolyKind::Ecrel => reliability(&g, ReliabilityMeasure::EdgeCopwin)?,
                };
                json_line(out, &coefficients)?;
            }
        }
        Command::Copwin { input } => {
            for g in input.require()? {
                let (copwin, trace) = is_copwin(&g);
                let game = if g.order() <= GAME_ORACLE_MAX_ORDER {
                    Some(is_copwin_game(&g)?)
                } else {
                    None
                };
                json_line(
                    out,
                    &CopwinRecord {
                        graph6: emit_graph6(&g),
                        copwin,
                        chordal: is_chordal(&g),
                        dismantling: trace.order,
                        game,
                    },
                )?;
            }
        }
        Command::Family { specs } => {
            for text in specs {
                let spec: FamilySpec = text.parse().map_err(|e| CliError::usage("SPEC", e))?;
                let g = build_family(&text, "SPEC")?;
                json_line(
                    out,
                    &FamilyRecord {
                        family: spec.to_string(),
                        graph6: emit_graph6(&g),
                        canonical: canonical_key(&g).to_string(),
                        order: g.order(),
                        size: g.size(),
                        edges: g.edges(),
                        closed_form_cw: spec.closed_form_cw().ok().map(|p| p.to_decimal_strings()),
                    },
                )?;
            }
        }
        Command::Classify { input } => {
            for g in input.require()? {
                let bicyclic_type = classify_bicyclic(&g).ok().map(|t| t.to_string());
                json_line(
                    out,
                    &ClassifyRecord {
                        graph6: emit_graph6(&g),
                        canonical: canonical_key(&g).to_string(),
                        order: g.order(),
                        size: g.size(),
                        connected: g.is_connected(),
                        bicyclic_type,
                        families: identify(&g).iter().map(ToString::to_string).collect(),
                    },
                )?;
            }
        }
        Command::Enumerate {
            n,
            cyclomatic,
            count,
            filter,
        } => {
            let spec = GenSpec::new(n, cyclomatic);
            spec.check()
                .map_err(|e| CliError::usage("--n/--cyclomatic", e))?;
            let lines: Vec<String> = if filter {
                enumerate_by_filter(spec)?
                    .iter()
                    .map(|k| k.as_graph6().to_string())
                    .collect()
            } else {
                enumerate(spec)?.iter().map(emit_graph6).collect()
            };
            if count {
                writeln!(out, "{}", lines.len())?;
            } else {
                for line in lines {
                    writeln!(out, "{line}")?;
                }
            }
        }
        Command::Compare {
            left,
            right,
            measure,
        } => {
            let g = graph_arg(&left, "--left")?;
            let h = graph_arg(&right, "--right")?;
            json_pretty(out, &dominance(&g, &h, measure)?)?;
        }
        Command::Umr {
            n,
            cyclomatic,
            measure,
            summary,
        } => {
            GenSpec::new(n, cyclomatic)
                .check()
                .map_err(|e| CliError::usage("--n/--cyclomatic", e))?;
            let mut report = find_umr(n, cyclomatic, measure)?;
            if summary {
                report
                    .comparisons
                    .retain(|c| !c.report.verdict.is_at_least());
            }
            json_pretty(out, &report)?;
        }
        Command::ConjectureH { n, cyclomatic } => {
            let report = verify_conjecture_h(n, cyclomatic)
                .map_err(|e| CliError::usage("--n/--cyclomatic", e))?;
            json_pretty(out, &report)?;
            if !report.holds {
                return Ok(Outcome::Failed);
            }
        }
        Command::Roots {
            input,
            n,
            cyclomatic,
            connected,
            measure,
            tol,
            summary,
        } => {
            let mut graphs = input.load()?;
            if let Some(n) = n {
                let spec = GenSpec::new(n, cyclomatic.unwrap_or(1));
                spec.check()
                    .map_err(|e| CliError::usage("--n/--cyclomatic", e))?;
                graphs.extend(enumerate(spec)?);
            }
            if let Some(max) = connected {
                for k in 1..=max {
                    graphs.extend(
                        enumerate_connected(k).map_err(|e| CliError::usage("--connected", e))?,
                    );
                }
            }
            if graphs.is_empty() && input.is_empty() && n.is_none() && connected.is_none() {
                return Err(CliError::Missing(
                    "give graphs (--graph6, --file, --family) or a class (--n, --connected)".into(),
                ));
            }
            let scan = disk_scan_graphs(&graphs, measure, tol)?;
            if summary {
                json_pretty(out, &ScanSummary::from(&scan))?;
            } else {
                for record in &scan.records {
                    json_line(out, record)?;
                }
            }
        }
        Command::VerifyPaper {
            scope,
            appendix,
            json,
        } => {
            let results = verify::run(scope);
            for r in &results {
                if json {
                    json_line(out, r)?;
                } else {
                    writeln!(out, "{r}")?;
                }
            }
            if matches!(scope, Scope::All | Scope::Appendix) {
                let rows = verify::appendix_table()?;
                let mut text = String::from("graph6\tedges\tCS\n");
                for row in &rows {
                    text.push_str(&row.to_string());
                    text.push('\n');
                }
                fs::write(&appendix, text).map_err(|e| CliError::io(appendix.display(), e))?;
                if !json {
                    writeln!(out, "wrote {} rows to {}", rows.len(), appendix.display())?;
                }
            }
            if results.iter().any(|r| !r.passed) {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn reliability(g: &Graph, measure: ReliabilityMeasure) -> Result<Vec<String>, CliError> {
    Ok(reliability_poly(g, measure)?.to_decimal_strings())
}

#[derive(Serialize)]
struct CopwinRecord {
    graph6: String,
    copwin: bool,
    chordal: bool,
    /// Vertices removed by dismantling, in order.
    dismantling: Vec<usize>,
    /// Game-search verdict; absent above the oracle's order limit.
    game: Option<bool>,
}

#[derive(Serialize)]
struct FamilyRecord {
    family: String,
    graph6: String,
    canonical: String,
    order: usize,
    size: usize,
    edges: Vec<(usize, usize)>,
    closed_form_cw: Option<Vec<String>>,
}

#[derive(Serialize)]
struct ClassifyRecord {
    graph6: String,
    canonical: String,
    order: usize,
    size: usize,
    connected: bool,
    bicyclic_type: Option<String>,
    families: Vec<String>,
}

#[derive(Serialize)]
struct ScanSummary<'a> {
    measure: ReliabilityMeasure,
    graphs: usize,
    max_dist_from_one: f64,
    all_inside: bool,
    outside: &'a [String],
}

impl<'a> From<&'a DiskSummary> for ScanSummary<'a> {
    fn from(s: &'a DiskSummary) -> Self {
        ScanSummary {
            measure: s.measure,
            graphs: s.graphs,
            max_dist_from_one: s.max_dist_from_one,
            all_inside: s.all_inside,
            outside: &s.outside,
        }
    }
}
