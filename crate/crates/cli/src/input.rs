use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::Args;
use ncrel_core::{parse_graph6, parse_graph6_lines, FamilySpec, Graph};

use crate::CliError;

/// Graphs given on the command line, in files, or as named family members.
#[derive(Args, Debug, Default)]
pub struct GraphInput {
    /// graph6 literal (repeatable)
    #[arg(long = "graph6", value_name = "G6")]
    pub graph6: Vec<String>,
    /// File with one graph6 string per line; `-` reads stdin (repeatable)
    #[arg(long, value_name = "PATH")]
    pub file: Vec<PathBuf>,
    /// Named family member such as `U:8` or `G3:1,1,4` (repeatable)
    #[arg(long, value_name = "SPEC")]
    pub family: Vec<String>,
}

impl GraphInput {
    pub fn is_empty(&self) -> bool {
        self.graph6.is_empty() && self.file.is_empty() && self.family.is_empty()
    }

    /// Literals first, then files, then families, each in the given order.
    pub fn load(&self) -> Result<Vec<Graph>, CliError> {
        let mut graphs = Vec::new();
        for text in &self.graph6 {
            graphs.push(parse_graph6(text).map_err(|e| CliError::usage("--graph6", e))?);
        }
        for path in &self.file {
            let text = if path.as_os_str() == "-" {
                let mut buf = String::new();
                io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| CliError::io("stdin", e))?;
                buf
            } else {
                fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?
            };
            graphs.extend(parse_graph6_lines(&text).map_err(|e| CliError::usage("--file", e))?);
        }
        for spec in &self.family {
            graphs.push(build_family(spec, "--family")?);
        }
        Ok(graphs)
    }

    pub fn require(&self) -> Result<Vec<Graph>, CliError> {
        if self.is_empty() {
            return Err(CliError::Missing(
                "one of --graph6, --file or --family is required".into(),
            ));
        }
        self.load()
    }
}

pub fn build_family(spec: &str, flag: &'static str) -> Result<Graph, CliError> {
    spec.parse::<FamilySpec>()
        .and_then(|s| s.build())
        .map_err(|e| CliError::usage(flag, e))
}

/// A single graph written either as graph6 or as a family spec. graph6
/// never contains `:`, so the two forms cannot collide.
pub fn graph_arg(text: &str, flag: &'static str) -> Result<Graph, CliError> {
    if text.contains(':') {
        build_family(text, flag)
    } else {
        parse_graph6(text).map_err(|e| CliError::usage(flag, e))
    }
}
