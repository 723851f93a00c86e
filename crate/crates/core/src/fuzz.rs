//! Seeded fuzzing of the line-graph surjection over random eligible graphs.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::critical::{
    enumerate_arborescences, kappa, structural_maps, verify_with_maps, within_enumeration_guard,
    StructuralMaps,
};
use crate::digraph::{random_k_out_regular, BasePoint, Multidigraph};
use crate::error::Result;

/// Deliberate construction bugs, for checking that the harness notices them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    #[default]
    None,
    /// Adds one to a single entry of ρ: first non-sink row, first column
    /// other than e*. (The sink row would be invisible modulo relations.)
    PerturbRho,
    /// Lets τ send e* to v* instead of 0 (and recomputes ρ = ρ₀τ).
    KeepBaseEdgeInTau,
}

impl Mutation {
    pub fn apply(self, maps: &mut StructuralMaps, bp: &BasePoint) {
        match self {
            Mutation::None => {}
            Mutation::PerturbRho => {
                let row = (0..maps.rho.rows()).find(|&r| r != bp.sink);
                let col = (0..maps.rho.cols()).find(|&c| c != bp.base_edge);
                if let (Some(r), Some(c)) = (row, col) {
                    maps.rho[(r, c)] += 1;
                }
            }
            Mutation::KeepBaseEdgeInTau => {
                maps.tau[(bp.target, bp.base_edge)] = 1.into();
                maps.rho = &maps.rho0 * &maps.tau;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub mutation: Mutation,
}

/// Per-trial seed: splitmix64 of the base seed offset by the trial index.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub line_graph_group: String,
    pub graph_group: String,
    pub kernel: Option<String>,
    /// `None` when the graph is above the enumeration size guard.
    pub matrix_tree_ok: Option<bool>,
    pub failures: Vec<String>,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Full check of one `(G, e*)`, with an optional injected mutation.
pub fn check_instance(
    g: &Multidigraph,
    bp: &BasePoint,
    mutation: Mutation,
) -> Result<(Vec<String>, Option<bool>, crate::critical::TheoremReport)> {
    let mut maps = structural_maps(g, bp)?;
    mutation.apply(&mut maps, bp);
    let report = verify_with_maps(g, bp, &maps)?;
    let mut failures: Vec<String> = report.binding_failures().into_iter().map(String::from).collect();
    if !report.hypotheses_ok {
        failures.push("hypotheses".into());
    }
    let matrix_tree_ok = if within_enumeration_guard(g) {
        let brute = enumerate_arborescences(g, bp.sink)?;
        Some(kappa(g, bp.sink)? == BigInt::from(brute))
    } else {
        None
    };
    if matrix_tree_ok == Some(false) {
        failures.push("matrix_tree".into());
    }
    Ok((failures, matrix_tree_ok, report))
}

pub fn run_trial(n: usize, k: usize, seed: u64, index: usize, mutation: Mutation) -> Result<TrialOutcome> {
    let (g, bp) = random_k_out_regular(n, k, seed)?;
    let (failures, matrix_tree_ok, report) = check_instance(&g, &bp, mutation)?;
    Ok(TrialOutcome {
        index,
        seed,
        n,
        k,
        edges: g.edge_count(),
        line_graph_group: report.line_graph_group,
        graph_group: report.graph_group,
        kernel: report.kernel_structure,
        matrix_tree_ok,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub outcomes: Vec<TrialOutcome>,
}

impl FuzzSummary {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }

    pub fn matrix_tree_checked(&self) -> usize {
        self.outcomes.iter().filter(|o| o.matrix_tree_ok.is_some()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Index of the first failing trial, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.outcomes.iter().find(|o| !o.passed()).map(|o| o.index)
    }
}

impl fmt::Display for FuzzSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in self.outcomes.iter().filter(|o| !o.passed()) {
            writeln!(
                f,
                "trial {} (seed {:#018x}): FAIL {} [K(LG,e*) = {}, K(G,w*) = {}]",
                o.index,
                o.seed,
                o.failures.join(","),
                o.line_graph_group,
                o.graph_group
            )?;
        }
        let c = &self.config;
        writeln!(
            f,
            "fuzz n={} k={} trials={} seed={}: {} instances, {} passed, {} failed, matrix-tree checked on {}",
            c.n,
            c.k,
            c.trials,
            c.seed,
            self.outcomes.len(),
            self.passed(),
            self.failed(),
            self.matrix_tree_checked()
        )
    }
}

/// Runs all trials (in parallel) and reports them in trial order.
pub fn run(config: FuzzConfig) -> Result<FuzzSummary> {
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config.n, config.k, trial_seed(config.seed, i), i, config.mutation))
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzSummary { config, outcomes })
}
