//! Laplacians, critical groups, arborescence counts, and the maps relating a
//! graph to its line graph.
//!
//! Matrices use the column convention throughout: column `v` of the
//! Laplacian is `Δ(v) = Σ_{(v,u) ∈ E} (u − v)`. The transposed (functional)
//! Laplacian is never built.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::{induced_hom, k_torsion, AbelianGroup, GroupHom};
use crate::digraph::{BasePoint, Multidigraph};
use crate::error::{Error, Result};
use crate::exactint::{determinant, IntMatrix};

pub fn laplacian_matrix(g: &Multidigraph) -> IntMatrix {
    let n = g.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    for e in g.edges() {
        m[(e.head, e.tail)] += 1;
        m[(e.tail, e.tail)] -= 1;
    }
    m
}

/// Laplacian with the sink column replaced by the sink's basis vector.
pub fn phi_matrix(g: &Multidigraph, sink: usize) -> Result<IntMatrix> {
    g.check_vertex(sink)?;
    let mut m = laplacian_matrix(g);
    let mut unit = vec![BigInt::zero(); g.vertex_count()];
    unit[sink] = BigInt::one();
    m.set_column(sink, &unit);
    Ok(m)
}

pub fn critical_group(g: &Multidigraph, sink: usize) -> Result<AbelianGroup> {
    Ok(AbelianGroup::new(phi_matrix(g, sink)?))
}

/// Number of spanning arborescences oriented toward `root`, as `|det|` of the
/// Laplacian with the root's row and column removed.
pub fn kappa(g: &Multidigraph, root: usize) -> Result<BigInt> {
    g.check_vertex(root)?;
    let reduced = laplacian_matrix(g).minor_matrix(root, root);
    Ok(determinant(&reduced)?.magnitude().clone().into())
}

pub const ENUMERATION_MAX_VERTICES: usize = 10;
pub const ENUMERATION_MAX_EDGES: usize = 20;

pub fn within_enumeration_guard(g: &Multidigraph) -> bool {
    g.vertex_count() <= ENUMERATION_MAX_VERTICES && g.edge_count() <= ENUMERATION_MAX_EDGES
}

/// Brute-force arborescence count: tries every choice of one out-edge per
/// non-root vertex and keeps those where following the choices from any
/// vertex reaches the root.
pub fn enumerate_arborescences(g: &Multidigraph, root: usize) -> Result<u64> {
    g.check_vertex(root)?;
    if !within_enumeration_guard(g) {
        return Err(Error::SizeGuard(format!(
            "{} vertices, {} edges (limit {ENUMERATION_MAX_VERTICES}, {ENUMERATION_MAX_EDGES})",
            g.vertex_count(),
            g.edge_count()
        )));
    }
    let n = g.vertex_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let options: Vec<Vec<usize>> = others
        .iter()
        .map(|&v| g.out_edges(v).map(|e| g.edges()[e].head).collect())
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Ok(0);
    }

    let mut choice = vec![0usize; others.len()];
    let mut next = vec![root; n];
    let mut count = 0u64;
    loop {
        for (slot, &v) in others.iter().enumerate() {
            next[v] = options[slot][choice[slot]];
        }
        if reaches_root(&next, root) {
            count += 1;
        }
        // odometer
        let mut slot = 0;
        loop {
            if slot == choice.len() {
                return Ok(count);
            }
            choice[slot] += 1;
            if choice[slot] < options[slot].len() {
                break;
            }
            choice[slot] = 0;
            slot += 1;
        }
    }
}

fn reaches_root(next: &[usize], root: usize) -> bool {
    let n = next.len();
    (0..n).all(|start| {
        let mut v = start;
        for _ in 0..n {
            if v == root {
                return true;
            }
            v = next[v];
        }
        v == root
    })
}

/// The maps τ, ρ₀, ρ, ψ, σ for a fixed `(G, e*)`, in the vertex and edge
/// bases of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralMaps {
    /// ℤE → ℤV, `e ↦ head(e)` except `e* ↦ 0`.
    pub tau: IntMatrix,
    /// ℤV → ℤV, `v ↦ Δ(w*) − v* − w* + v`. An involution.
    pub rho0: IntMatrix,
    /// ℤE → ℤV, `ρ₀ ∘ τ`.
    pub rho: IntMatrix,
    /// ℤV → ℤV, `Δ(v)` except `w* ↦ Δ(w*) − v*`.
    pub psi: IntMatrix,
    /// ℤV → ℤE, `v ↦ Σ_{tail(e) = v} e`.
    pub sigma: IntMatrix,
}

fn tau_matrix(g: &Multidigraph, bp: &BasePoint) -> IntMatrix {
    let mut tau = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        if i != bp.base_edge {
            tau[(e.head, i)] = BigInt::one();
        }
    }
    tau
}

/// `Δ(w*) − v* − w*`, the common offset of ρ₀ and ρ.
fn rho_offset(lap: &IntMatrix, bp: &BasePoint) -> Vec<BigInt> {
    let mut offset = lap.column(bp.sink);
    offset[bp.target] -= 1;
    offset[bp.sink] -= 1;
    offset
}

/// ρ from its column formula `e ↦ Δ(w*) − v* − w* + head(e)`, zero at e*.
pub fn rho_direct(g: &Multidigraph, bp: &BasePoint) -> Result<IntMatrix> {
    bp.validate(g)?;
    let offset = rho_offset(&laplacian_matrix(g), bp);
    let mut rho = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        if i == bp.base_edge {
            continue;
        }
        let mut col = offset.clone();
        col[e.head] += 1;
        rho.set_column(i, &col);
    }
    Ok(rho)
}

pub fn structural_maps(g: &Multidigraph, bp: &BasePoint) -> Result<StructuralMaps> {
    bp.validate(g)?;
    let n = g.vertex_count();
    let lap = laplacian_matrix(g);
    let tau = tau_matrix(g, bp);

    let offset = rho_offset(&lap, bp);
    let mut rho0 = IntMatrix::zeros(n, n);
    for v in 0..n {
        let mut col = offset.clone();
        col[v] += 1;
        rho0.set_column(v, &col);
    }

    let mut psi = lap.clone();
    psi[(bp.target, bp.sink)] -= 1;

    let mut sigma = IntMatrix::zeros(g.edge_count(), n);
    for (i, e) in g.edges().iter().enumerate() {
        sigma[(i, e.tail)] = BigInt::one();
    }

    let rho = &rho0 * &tau;
    debug_assert_eq!(rho, rho_direct(g, bp)?);
    Ok(StructuralMaps {
        tau,
        rho0,
        rho,
        psi,
        sigma,
    })
}

/// ρ̄ : K(LG, e*) → K(G, w*). The line-graph sink is the vertex of LG that
/// is the edge e*.
pub fn rho_bar(g: &Multidigraph, bp: &BasePoint) -> Result<GroupHom> {
    let maps = structural_maps(g, bp)?;
    let lg = g.line_graph();
    let source = critical_group(&lg, bp.base_edge)?;
    let target = critical_group(g, bp.sink)?;
    induced_hom(&source, &target, maps.rho)
}

/// `d | n` with `0 | 0` true and `0 | n` false for `n ≠ 0`.
fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        n.is_multiple_of(d)
    }
}

/// κ(G, w*) divides κ(LG, e*). Requires the in-degree hypotheses.
pub fn verify_divisibility(g: &Multidigraph, bp: &BasePoint) -> Result<bool> {
    let check = g.check_hypotheses(bp)?;
    if !check.ok {
        return Err(Error::Hypothesis(check.reasons));
    }
    let lg = g.line_graph();
    Ok(divides(&kappa(g, bp.sink)?, &kappa(&lg, bp.base_edge)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl From<bool> for CheckStatus {
    fn from(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub binding: bool,
    pub status: CheckStatus,
    pub kernel: String,
    pub k_torsion: String,
}

/// Outcome of every checkable claim for one `(G, e*)`.
///
/// Conclusions that depend on the in-degree hypotheses are still computed
/// when the hypotheses fail, but are then non-binding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub hypotheses_ok: bool,
    pub hypothesis_reasons: Vec<String>,
    pub k: Option<usize>,
    pub line_graph_group: String,
    pub graph_group: String,
    pub rho0_involution_ok: bool,
    pub rho_factorization_ok: bool,
    pub diagram_top_ok: bool,
    pub diagram_bottom_ok: bool,
    pub rho_bar_defined: bool,
    pub rho_bar_surjective: Option<bool>,
    pub sigma_bar_defined: Option<bool>,
    pub sigma_tau_is_k: Option<bool>,
    pub kernel_structure: Option<String>,
    pub ktorsion_structure: Option<String>,
    pub kernel_equals_ktorsion: Option<bool>,
    /// Set when K(LG, e*) has a free summand, which k-torsion cannot see.
    pub free_rank_note: Option<String>,
    pub order_factorization_ok: Option<bool>,
    pub divisibility_ok: Option<bool>,
}

impl TheoremReport {
    pub fn checks(&self) -> Vec<CheckRecord> {
        let kernel = self.kernel_structure.clone().unwrap_or_else(|| "-".into());
        let k_torsion = self.ktorsion_structure.clone().unwrap_or_else(|| "-".into());
        let hyp = self.hypotheses_ok;
        let regular = self.k.is_some();
        let opt = |v: Option<bool>| v.map_or(CheckStatus::Skipped, CheckStatus::from);
        [
            ("hypotheses", false, CheckStatus::from(hyp)),
            ("rho0_involution", true, self.rho0_involution_ok.into()),
            ("rho_factorization", true, self.rho_factorization_ok.into()),
            ("diagram_top", true, self.diagram_top_ok.into()),
            ("diagram_bottom", true, self.diagram_bottom_ok.into()),
            ("rho_bar_defined", true, self.rho_bar_defined.into()),
            ("rho_bar_surjective", hyp, opt(self.rho_bar_surjective)),
            ("sigma_bar_defined", regular, opt(self.sigma_bar_defined)),
            ("sigma_tau_is_k", regular, opt(self.sigma_tau_is_k)),
            ("kernel_equals_ktorsion", hyp && regular, opt(self.kernel_equals_ktorsion)),
            ("order_factorization", hyp, opt(self.order_factorization_ok)),
            ("divisibility", hyp, opt(self.divisibility_ok)),
        ]
        .into_iter()
        .map(|(check, binding, status)| CheckRecord {
            check,
            binding,
            status,
            kernel: kernel.clone(),
            k_torsion: k_torsion.clone(),
        })
        .collect()
    }

    /// Names of binding checks that failed. A binding check that could not
    /// run (e.g. ρ̄ not defined) counts as failed.
    pub fn binding_failures(&self) -> Vec<&'static str> {
        self.checks()
            .into_iter()
            .filter(|c| c.binding && c.status != CheckStatus::Pass)
            .filter(|c| !(c.status == CheckStatus::Skipped && self.skip_is_legitimate(c.check)))
            .map(|c| c.check)
            .collect()
    }

    fn skip_is_legitimate(&self, check: &str) -> bool {
        match check {
            // Orders only compare when both groups are finite.
            "order_factorization" => self.rho_bar_defined,
            _ => false,
        }
    }

    pub fn all_binding_pass(&self) -> bool {
        self.binding_failures().is_empty()
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "K(LG, e*) = {}", self.line_graph_group)?;
        writeln!(f, "K(G, w*)  = {}", self.graph_group)?;
        match self.k {
            Some(k) => writeln!(f, "out-regular: k = {k}")?,
            None => writeln!(f, "out-regular: no")?,
        }
        if !self.hypotheses_ok {
            writeln!(f, "hypotheses fail; dependent conclusions are non-binding:")?;
            for r in &self.hypothesis_reasons {
                writeln!(f, "  - {r}")?;
            }
        }
        if let Some(note) = &self.free_rank_note {
            writeln!(f, "note: {note}")?;
        }
        for c in self.checks() {
            let binding = if c.binding { "binding" } else { "non-binding" };
            writeln!(
                f,
                "{:<24} {:<12} {:<8} kernel={} k-torsion={}",
                c.check, binding, c.status, c.kernel, c.k_torsion
            )?;
        }
        Ok(())
    }
}

fn columns_in_lattice(cols: &IntMatrix, target: &AbelianGroup) -> Result<bool> {
    for col in cols.columns() {
        if !target.relation_lattice().contains(&col)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_main_theorem(g: &Multidigraph, bp: &BasePoint) -> Result<TheoremReport> {
    let maps = structural_maps(g, bp)?;
    verify_with_maps(g, bp, &maps)
}

/// Runs every check against caller-supplied maps. With the maps from
/// [`structural_maps`] this is [`verify_main_theorem`]; tampered maps let a
/// harness confirm the checks actually discriminate.
pub fn verify_with_maps(
    g: &Multidigraph,
    bp: &BasePoint,
    maps: &StructuralMaps,
) -> Result<TheoremReport> {
    let hyp = g.check_hypotheses(bp)?;
    let k = g.is_k_out_regular()?;
    let lg = g.line_graph();
    let phi_g = phi_matrix(g, bp.sink)?;
    let phi_lg = phi_matrix(&lg, bp.base_edge)?;
    let k_g = AbelianGroup::new(phi_g.clone());
    let k_lg = AbelianGroup::new(phi_lg.clone());

    let n = g.vertex_count();
    let rho0_involution_ok = &maps.rho0 * &maps.rho0 == IntMatrix::identity(n);
    let rho_factorization_ok =
        maps.rho == &maps.rho0 * &maps.tau && maps.rho == rho_direct(g, bp)?;
    let diagram_top_ok = &maps.tau * &phi_lg == &maps.psi * &maps.tau;
    let diagram_bottom_ok = &maps.rho0 * &maps.psi == phi_g;

    let rho_bar = induced_hom(&k_lg, &k_g, maps.rho.clone()).ok();
    let rho_bar_surjective = rho_bar.as_ref().map(GroupHom::is_surjective);

    let mut sigma_bar_defined = None;
    let mut sigma_tau_is_k = None;
    let mut ktorsion = None;
    if let Some(k) = k {
        let cok_psi = AbelianGroup::new(maps.psi.clone());
        sigma_bar_defined = Some(columns_in_lattice(&(&maps.sigma * &maps.psi), &k_lg)?);
        let tau_bar = induced_hom(&k_lg, &cok_psi, maps.tau.clone()).ok();
        let sigma_bar = induced_hom(&cok_psi, &k_lg, maps.sigma.clone()).ok();
        sigma_tau_is_k = Some(match (tau_bar, sigma_bar) {
            (Some(t), Some(s)) => {
                let composite = s.compose(&t)?;
                composite.equals(&GroupHom::multiplication(&k_lg, &BigInt::from(k)))?
            }
            _ => false,
        });
        ktorsion = Some(k_torsion(&k_lg, k as u64)?);
    }

    let kernel = rho_bar.as_ref().map(GroupHom::kernel).transpose()?;
    let kernel_equals_ktorsion = match (&kernel, &ktorsion) {
        (Some(ker), Some(tor)) => Some(ker.equals(tor)?),
        (None, Some(_)) => Some(false),
        _ => None,
    };
    let free_rank_note = (k_lg.free_rank() > 0).then(|| {
        format!(
            "K(LG, e*) has free rank {}; k-torsion only constrains the torsion part",
            k_lg.free_rank()
        )
    });

    let order_factorization_ok = match (&kernel, k_lg.order().finite(), k_g.order().finite()) {
        (Some(ker), Some(lg_order), Some(g_order)) => {
            Some(ker.order().finite().is_some_and(|ko| *lg_order == g_order * ko))
        }
        _ => None,
    };

    let divisibility_ok = if hyp.ok {
        Some(divides(&kappa(g, bp.sink)?, &kappa(&lg, bp.base_edge)?))
    } else {
        None
    };

    Ok(TheoremReport {
        hypotheses_ok: hyp.ok,
        hypothesis_reasons: hyp.reasons,
        k,
        line_graph_group: k_lg.to_string(),
        graph_group: k_g.to_string(),
        rho0_involution_ok,
        rho_factorization_ok,
        diagram_top_ok,
        diagram_bottom_ok,
        rho_bar_defined: rho_bar.is_some(),
        rho_bar_surjective,
        sigma_bar_defined,
        sigma_tau_is_k,
        kernel_structure: kernel.as_ref().map(|s| s.structure().to_string()),
        ktorsion_structure: ktorsion.as_ref().map(|s| s.structure().to_string()),
        kernel_equals_ktorsion,
        free_rank_note,
        order_factorization_ok,
        divisibility_ok,
    })
}
