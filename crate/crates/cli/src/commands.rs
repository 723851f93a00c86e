use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use linesand::critical::{critical_group, kappa};
use linesand::exactint::smith_normal_form;
use linesand::fuzz::{self, FuzzConfig, Mutation};
use linesand::{BasePoint, IntMatrix, Multidigraph};
use serde_json::json;

use crate::error::CliError;
use crate::graphfile::{emit_graph, read_graph};
use crate::matrixfile::read_matrix;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    /// One self-describing JSON record per line.
    Record,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    #[default]
    None,
    PerturbRho,
    KeepBaseEdgeInTau,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::None => Mutation::None,
            MutationArg::PerturbRho => Mutation::PerturbRho,
            MutationArg::KeepBaseEdgeInTau => Mutation::KeepBaseEdgeInTau,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "linesand", version, about = "Critical groups of multidigraphs and their line graphs")]
pub struct CliConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant factors and order of K(G, sink).
    Critgroup {
        graph: PathBuf,
        #[arg(long)]
        sink: String,
    },
    /// Number of spanning arborescences rooted at a vertex.
    Kappa {
        graph: PathBuf,
        #[arg(long)]
        root: String,
    },
    /// Emit the directed line graph as a graph file.
    Linegraph { graph: PathBuf },
    /// Check every claim about the line-graph surjection for one base edge.
    Verify {
        graph: PathBuf,
        /// Index of the base edge in the file's edge order.
        #[arg(long)]
        edge: usize,
    },
    /// Check random eligible k-out-regular instances.
    Fuzz {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Inject a construction bug (for testing the harness itself).
        #[arg(long, value_enum, default_value_t, hide = true)]
        mutate: MutationArg,
    },
    /// Smith normal form U, S, V of a matrix file.
    Snf { matrix: PathBuf },
}

/// Exit status plus what to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn resolve_vertex(g: &Multidigraph, name: &str, flag: &str) -> Result<usize, CliError> {
    g.vertex_index(name)
        .ok_or_else(|| CliError::Selector(format!("--{flag} {name:?}: no such vertex")))
}

fn resolve_edge(g: &Multidigraph, edge: usize) -> Result<BasePoint, CliError> {
    BasePoint::from_edge(g, edge).map_err(|_| {
        CliError::Selector(format!(
            "--edge {edge}: graph has {} edges (indices start at 0)",
            g.edge_count()
        ))
    })
}

fn matrix_json(m: &IntMatrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect();
    json!(rows)
}

pub fn run(config: &CliConfig) -> Outcome {
    match execute(config) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            status: EXIT_INPUT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(config: &CliConfig) -> Result<Outcome, CliError> {
    let record = config.format == Format::Record;
    match &config.command {
        Command::Critgroup { graph, sink } => {
            let g = read_graph(graph)?;
            let s = resolve_vertex(&g, sink, "sink")?;
            let group = critical_group(&g, s)?;
            let out = if record {
                let factors: Vec<String> = group.invariant_factors().iter().map(ToString::to_string).collect();
                json!({
                    "sink": sink,
                    "structure": group.to_string(),
                    "invariant_factors": factors,
                    "free_rank": group.free_rank(),
                    "order": group.order().to_string(),
                })
                .to_string()
                    + "\n"
            } else {
                format!("K(G, {sink}) = {group}\norder = {}\n", group.order())
            };
            Ok(Outcome::ok(out))
        }
        Command::Kappa { graph, root } => {
            let g = read_graph(graph)?;
            let r = resolve_vertex(&g, root, "root")?;
            let count = kappa(&g, r)?;
            let out = if record {
                json!({ "root": root, "kappa": count.to_string() }).to_string() + "\n"
            } else {
                format!("{count}\n")
            };
            Ok(Outcome::ok(out))
        }
        Command::Linegraph { graph } => {
            let g = read_graph(graph)?;
            Ok(Outcome::ok(emit_graph(&g.line_graph())))
        }
        Command::Verify { graph, edge } => {
            let g = read_graph(graph)?;
            let bp = resolve_edge(&g, *edge)?;
            let report = linesand::critical::verify_main_theorem(&g, &bp)?;
            let mut out = String::new();
            if record {
                for c in report.checks() {
                    out.push_str(&serde_json::to_string(&c).expect("serializable record"));
                    out.push('\n');
                }
            } else {
                let e = g.edges()[*edge];
                let names = g.vertex_names();
                writeln!(out, "base edge {edge} = ({}, {})", names[e.tail], names[e.head]).unwrap();
                out.push_str(&report.to_string());
            }
            let status = if report.all_binding_pass() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok(Outcome {
                status,
                stdout: out,
                stderr: String::new(),
            })
        }
        Command::Fuzz {
            n,
            k,
            trials,
            seed,
            mutate,
        } => {
            let summary = fuzz::run(FuzzConfig {
                n: *n,
                k: *k,
                trials: *trials,
                seed: *seed,
                mutation: (*mutate).into(),
            })?;
            let out = if record {
                let mut out = String::new();
                for o in &summary.outcomes {
                    out.push_str(&serde_json::to_string(o).expect("serializable outcome"));
                    out.push('\n');
                }
                out.push_str(
                    &json!({
                        "summary": true,
                        "instances": summary.outcomes.len(),
                        "passed": summary.passed(),
                        "failed": summary.failed(),
                        "matrix_tree_checked": summary.matrix_tree_checked(),
                    })
                    .to_string(),
                );
                out.push('\n');
                out
            } else {
                summary.to_string()
            };
            let status = if summary.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok(Outcome {
                status,
                stdout: out,
                stderr: String::new(),
            })
        }
        Command::Snf { matrix } => {
            let m = read_matrix(matrix)?;
            let d = smith_normal_form(&m);
            let out = if record {
                json!({ "U": matrix_json(&d.u), "S": matrix_json(&d.s), "V": matrix_json(&d.v) }).to_string()
                    + "\n"
            } else {
                format!("U\n{}S\n{}V\n{}", d.u, d.s, d.v)
            };
            Ok(Outcome::ok(out))
        }
    }
}
