//! Command-line surface. [`run`] executes one command and returns what to
//! print plus the exit status, so commands are testable in-process.
//!
//! Exit status: 0 when the command's property holds or its task is done,
//! 1 when the property fails, 2 on usage, input or internal errors.

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use paradox_core::cells::{classify_cell, find_diamonds, find_yablo_cells};
use paradox_core::certify::{certify_with, check_yablo_condition, is_yablo_shaped, reduce_via_trivialization};
use paradox_core::certify::{CertifyConfig, Verdict, CHAIN_PATH_LEN};
use paradox_core::constructions::{by_name, NAMES};
use paradox_core::paths::{find_paths, negation_type, PathError};
use paradox_core::solver::{search_escape, solve_with, verify_rule, Clamp, SolveConfig, ValuationRule, DEFAULT_BUDGET};
use paradox_core::{truncate, FiniteGraph, Generator, NodeId, WindowMode};

use crate::dot::export_dot;
use crate::dsl::{parse_dsl, render_graph, ParseError};
use crate::report::{self, Format, Report};

pub const BUDGET_VAR: &str = "PARADOX_LAB_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Core(String),
}

fn core_err<E: std::fmt::Display>(e: E) -> LabError {
    LabError::Core(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "paradox-lab", version, about = "Build, solve and certify Yablo-style reference graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Remainder,
    Restricted,
}

impl From<Mode> for WindowMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Remainder => WindowMode::Remainder,
            Mode::Restricted => WindowMode::Restricted,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Materialize a window of a construction as DSL (default) or DOT.
    Gen {
        construction: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "remainder")]
        mode: Mode,
        /// Output file; `.dot` selects DOT, anything else DSL.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Satisfiability, valuation rules and escape search.
    #[command(subcommand)]
    Check(Check),
    /// Certify paradoxicality, or find an escape.
    Certify {
        #[arg(long = "gen")]
        construction: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// All paths between two nodes, with their values.
    Paths {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cell classification of every node, and Yablo cells.
    Cells {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Every diamond of a graph.
    Diamonds {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Negation type between two nodes of a negative graph.
    Negtype {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Negative paths between every pair of chain nodes.
    ConditionYablo {
        file: Option<PathBuf>,
        #[command(flatten)]
        gen: GenSource,
        #[arg(long, value_delimiter = ',', required = true)]
        chain: Vec<String>,
        #[arg(long, default_value_t = CHAIN_PATH_LEN)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Convert a DSL file to another format.
    #[command(subcommand)]
    Export(Export),
    /// Known construction names.
    List,
}

#[derive(Debug, Args)]
pub struct GenSource {
    #[arg(long = "gen")]
    pub construction: Option<String>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value = "restricted")]
    pub mode: Mode,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Satisfiability of a DSL file or a construction window.
    Sat {
        file: Option<PathBuf>,
        #[arg(long = "gen")]
        construction: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "remainder")]
        mode: Mode,
        /// `node=T` or `node=F`; repeatable.
        #[arg(long)]
        clamp: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a valuation rule against a construction.
    Rule {
        #[arg(long = "gen")]
        construction: String,
        /// `all-false`, `oa2-rows`, or inline `pattern=T|F,...`.
        #[arg(long)]
        rule: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solve the window with the root clamped each way.
    Escape {
        #[arg(long = "gen")]
        construction: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum Export {
    /// Graphviz DOT, with dashed negative arrows.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// What a command prints, and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn new(stdout: String, ok: bool) -> Self {
        Outcome { stdout, code: if ok { 0 } else { 1 } }
    }

    fn report(r: Report, format: Format, ok: bool) -> Self {
        Outcome::new(r.render(format), ok)
    }
}

/// Solver budget from the environment, or the default.
pub fn budget() -> Result<u64, LabError> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| LabError::Usage(format!("{BUDGET_VAR}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn generator(name: &str) -> Result<Box<dyn Generator>, LabError> {
    by_name(name).map_err(|e| LabError::Usage(e.to_string()))
}

fn node(text: &str) -> Result<NodeId, LabError> {
    text.parse().map_err(|e| LabError::Usage(format!("`{text}`: {e}")))
}

fn parse_clamp(text: &str) -> Result<Clamp, LabError> {
    let (n, v) = text.split_once('=').ok_or_else(|| LabError::Usage(format!("clamp `{text}` is not `node=T|F`")))?;
    let value = match v.trim() {
        "T" => true,
        "F" => false,
        _ => return Err(LabError::Usage(format!("clamp `{text}` must end in =T or =F"))),
    };
    Ok(Clamp::new(node(n.trim())?, value))
}

fn read(path: &FsPath) -> Result<String, LabError> {
    fs::read_to_string(path).map_err(|source| LabError::Io { path: path.display().to_string(), source })
}

fn load(path: &FsPath) -> Result<(FiniteGraph, Vec<Clamp>), LabError> {
    parse_dsl(&read(path)?).map_err(|source| LabError::Parse { path: path.display().to_string(), source })
}

fn write_out(path: &FsPath, text: &str) -> Result<(), LabError> {
    fs::write(path, text).map_err(|source| LabError::Io { path: path.display().to_string(), source })
}

fn window_graph(name: &str, depth: Option<usize>, mode: Mode) -> Result<FiniteGraph, LabError> {
    let depth = depth.ok_or_else(|| LabError::Usage(String::from("--gen needs --depth")))?;
    let gen = generator(name)?;
    Ok(truncate(gen.as_ref(), depth, mode.into()).map_err(core_err)?.graph)
}

pub fn run(cli: Cli) -> Result<Outcome, LabError> {
    match cli.command {
        Command::List => Ok(Outcome::new(NAMES.iter().map(|n| format!("{n}\n")).collect(), true)),
        Command::Gen { construction, depth, mode, output } => {
            let g = window_graph(&construction, Some(depth), mode)?;
            let is_dot = output.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "dot"));
            let text = if is_dot { export_dot(&g) } else { render_graph(&g, &[]) };
            match output {
                Some(p) => {
                    write_out(&p, &text)?;
                    Ok(Outcome::new(format!("wrote {}\n", p.display()), true))
                }
                None => Ok(Outcome::new(text, true)),
            }
        }
        Command::Check(Check::Sat { file, construction, depth, mode, clamp, format }) => {
            let mut clamps = Vec::new();
            let (graph, source, window) = match (file, construction) {
                (Some(f), None) => {
                    let (g, cs) = load(&f)?;
                    clamps = cs;
                    (g, f.display().to_string(), None)
                }
                (None, Some(c)) => {
                    let g = window_graph(&c, depth, mode)?;
                    (g, c, Some((WindowMode::from(mode).as_str(), depth)))
                }
                _ => return Err(LabError::Usage(String::from("give either a DSL file or --gen"))),
            };
            for c in &clamp {
                clamps.push(parse_clamp(c)?);
            }
            let cfg = SolveConfig { budget: budget()?, minimize_core: true };
            let out = solve_with(&graph, &clamps, cfg).map_err(core_err)?;
            let r = report::sat(&source, window.map(|w| w.0), window.and_then(|w| w.1), &clamps, &out);
            Ok(Outcome::report(r, format, out.is_sat()))
        }
        Command::Check(Check::Rule { construction, rule, depth, format }) => {
            let gen = generator(&construction)?;
            let rule = ValuationRule::parse(&rule).map_err(|e| LabError::Usage(e.to_string()))?;
            let r = verify_rule(gen.as_ref(), &rule, depth).map_err(core_err)?;
            let ok = r.violations.is_empty();
            Ok(Outcome::report(report::rule(&construction, &r), format, ok))
        }
        Command::Check(Check::Escape { construction, depth, format }) => {
            let gen = generator(&construction)?;
            let s = search_escape(gen.as_ref(), depth, budget()?).map_err(core_err)?;
            let ok = s.has_candidate();
            Ok(Outcome::report(report::escape(&construction, depth, &s), format, ok))
        }
        Command::Certify { construction, depth, format } => {
            if depth == 0 {
                return Err(LabError::Usage(String::from("--depth must be at least 1")));
            }
            let gen = generator(&construction)?;
            let r = certify_with(gen.as_ref(), depth, CertifyConfig { budget: budget()? }).map_err(core_err)?;
            let ok = matches!(r.verdict, Verdict::CertifiedParadoxical(_));
            Ok(Outcome::report(report::certify(&r), format, ok))
        }
        Command::Paths { file, from, to, max_len, format } => {
            let (g, _) = load(&file)?;
            let (from, to) = (node(&from)?, node(&to)?);
            for n in [&from, &to] {
                if !g.contains(n) {
                    return Err(LabError::Usage(format!("{n} is not in {}", file.display())));
                }
            }
            let found = find_paths(&g, &from, &to, max_len);
            Ok(Outcome::report(report::paths(&from, &to, max_len, &found), format, true))
        }
        Command::Cells { file, format } => {
            let (g, _) = load(&file)?;
            let classes: Vec<_> = g.sorted_nodes().into_iter().map(|n| (n.clone(), classify_cell(&g, &n))).collect();
            Ok(Outcome::report(report::cells(&classes, &find_yablo_cells(&g)), format, true))
        }
        Command::Diamonds { file, format } => {
            let (g, _) = load(&file)?;
            Ok(Outcome::report(report::diamonds(&find_diamonds(&g)), format, true))
        }
        Command::Negtype { file, from, to, format } => {
            let (g, _) = load(&file)?;
            let (x, z) = (node(&from)?, node(&to)?);
            match negation_type(&g, &x, &z) {
                Ok(t) => Ok(Outcome::report(report::negtype(&x, &z, t), format, t.is_some())),
                Err(PathError::UnknownNode(n)) => Err(LabError::Usage(format!("{n} is not in {}", file.display()))),
                Err(e) => Ok(Outcome::new(format!("{e}\n"), false)),
            }
        }
        Command::ConditionYablo { file, gen, chain, max_len, format } => {
            let g = match (file, gen.construction) {
                (Some(f), None) => load(&f)?.0,
                (None, Some(c)) => window_graph(&c, gen.depth, gen.mode)?,
                _ => return Err(LabError::Usage(String::from("give either a DSL file or --gen"))),
            };
            let chain: Vec<NodeId> = chain.iter().map(|c| node(c)).collect::<Result<_, _>>()?;
            if let Some(n) = chain.iter().find(|n| !g.contains(n)) {
                return Err(LabError::Usage(format!("chain node {n} is not in the graph")));
            }
            let result = match check_yablo_condition(&g, &chain, max_len) {
                Ok(w) => {
                    let reduced = reduce_via_trivialization(&g, &w).map_err(core_err)?;
                    let shaped = is_yablo_shaped(&reduced, &chain).map_err(core_err)?;
                    Ok((w, shaped))
                }
                Err(pair) => Err(pair),
            };
            let ok = result.is_ok();
            Ok(Outcome::report(report::condition_yablo(&chain, &result), format, ok))
        }
        Command::Export(Export::Dot { file, output }) => {
            let (g, _) = load(&file)?;
            let dot = export_dot(&g);
            match output {
                Some(p) => {
                    write_out(&p, &dot)?;
                    Ok(Outcome::new(format!("wrote {}\n", p.display()), true))
                }
                None => Ok(Outcome::new(dot, true)),
            }
        }
    }
}
