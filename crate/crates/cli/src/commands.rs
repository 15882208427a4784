//! Subcommand implementations. Each writes its report to `out` and returns
//! the process exit status; errors are input errors (exit 2).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use sha2::{Digest, Sha256};
use stratifold::classify::edge_subgraph;
use stratifold::{
    all_graphs, census, find_horned_tree, is_simply_connected, is_tree, pi1_presentation,
    reduced_graph, Engine, SequenceTable, StratGraph, VertexKind,
};
use thiserror::Error;

use crate::document::{DocumentError, GraphDocument};
use crate::{dot, render};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    Rejected,
    InputError,
    Disagreement,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Rejected => 1,
            ExitStatus::InputError => 2,
            ExitStatus::Disagreement => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Core(#[from] stratifold::Error),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("output error: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        ExitStatus::InputError
    }
}

pub type CliResult = Result<ExitStatus, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Formula,
    Constructive,
    Brute,
    All,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Formula => Engine::Formula,
            EngineArg::Constructive => Engine::Constructive,
            EngineArg::Brute => Engine::Brute,
            EngineArg::All => Engine::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Documents,
    Dot,
}

fn load(path: &Path) -> Result<StratGraph, CliError> {
    Ok(GraphDocument::read(path)?.to_graph()?)
}

fn write_graph(out: &mut dyn Write, g: &StratGraph, indent: &str) -> io::Result<()> {
    for v in g.vertex_ids() {
        match g.kind(v) {
            VertexKind::White { genus } => {
                writeln!(out, "{indent}{} white genus {genus}", g.display_name(v))?
            }
            VertexKind::Black => writeln!(out, "{indent}{} black", g.display_name(v))?,
        }
    }
    for e in g.edges() {
        writeln!(
            out,
            "{indent}{} -{}- {}",
            g.display_name(e.u),
            e.label,
            g.display_name(e.v)
        )?;
    }
    Ok(())
}

pub fn check(path: &Path, verbose: bool, out: &mut dyn Write) -> CliResult {
    let g = load(path)?;
    let verdict = is_simply_connected(&g);
    if verdict.accepted {
        writeln!(out, "accepted: simply connected")?;
    } else {
        writeln!(out, "rejected")?;
        for r in &verdict.reasons {
            writeln!(out, "  {r}")?;
        }
    }
    if verbose && is_tree(&g) {
        match reduced_graph(&g) {
            Ok(reduced) => {
                writeln!(out, "reduced graph:")?;
                write_graph(out, &reduced, "  ")?;
                match find_horned_tree(&reduced) {
                    Some(edges) => {
                        writeln!(out, "horned tree witness:")?;
                        write_graph(out, &edge_subgraph(&reduced, &edges), "  ")?;
                    }
                    None => writeln!(out, "no horned tree")?,
                }
            }
            Err(e) => writeln!(out, "reduced graph unavailable: {e}")?,
        }
    }
    Ok(if verdict.accepted {
        ExitStatus::Success
    } else {
        ExitStatus::Rejected
    })
}

pub fn pi1(path: &Path, out: &mut dyn Write) -> CliResult {
    let g = load(path)?;
    writeln!(out, "{}", pi1_presentation(&g)?)?;
    Ok(ExitStatus::Success)
}

pub struct CensusArgs {
    pub n: usize,
    pub engine: EngineArg,
    pub format: Format,
    pub b_filter: Option<usize>,
    pub limit: usize,
}

/// Exits 3 when engines disagree.
pub fn census_cmd(args: &CensusArgs, out: &mut dyn Write) -> CliResult {
    let report = census(args.n, args.engine.into(), args.limit)?;
    match args.format {
        Format::Csv => out.write_all(
            render::census_csv(&report, args.b_filter)
                .map_err(io::Error::from)?
                .as_bytes(),
        )?,
        Format::Text => out.write_all(render::census_text(&report, args.b_filter).as_bytes())?,
    }
    if report.agrees() {
        Ok(ExitStatus::Success)
    } else {
        Ok(ExitStatus::Disagreement)
    }
}

/// Writes one file per graph, named by the SHA-256 of its canonical code.
pub fn enumerate(n: usize, dir: &Path, emit: Emit, limit: usize, out: &mut dyn Write) -> CliResult {
    let graphs = all_graphs(n, limit)?;
    let io_err = |source| CliError::Write {
        path: dir.to_owned(),
        source,
    };
    fs::create_dir_all(dir).map_err(io_err)?;
    for (code, g) in &graphs {
        let digest = hex::encode(Sha256::digest(code.as_str().as_bytes()));
        let (file, body) = match emit {
            Emit::Documents => (
                format!("{digest}.json"),
                GraphDocument::from_graph(g).to_json(),
            ),
            Emit::Dot => (format!("{digest}.dot"), dot::to_dot(g, &digest)),
        };
        let path = dir.join(file);
        fs::write(&path, body).map_err(|source| CliError::Write { path, source })?;
    }
    writeln!(out, "wrote {} files to {}", graphs.len(), dir.display())?;
    Ok(ExitStatus::Success)
}

pub fn tables(max_n: usize, out: &mut dyn Write) -> CliResult {
    let table = SequenceTable::compute(max_n)?;
    out.write_all(render::tables_csv(&table).as_bytes())?;
    Ok(ExitStatus::Success)
}
