//! Word-hyperbolicity of a Coxeter group from its graph, by Moussong's
//! criterion: the group fails to be hyperbolic iff the graph contains an
//! affine subdiagram of rank ≥ 3, or two disjoint unjoined subgraphs that
//! both induce infinite groups.
//!
//! The pair condition is decided on the minimal infinite subsets: every
//! infinite-inducing set contains a minimal one, and disjointness and
//! unjoinedness are inherited by subsets, so a pair witness exists iff two
//! minimal infinite subsets are disjoint and unjoined.

use crate::classify::{
    minimal_infinite_subsets, ClassifyError, ClassifyOptions, Kind, MinimalInfinite, SweepStats,
};
use crate::graph::{CoxeterGraph, VertexSet};

/// Why a graph fails to be word-hyperbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An induced affine subdiagram of rank ≥ 3 (virtually Z^{≥2}).
    Affine(VertexSet),
    /// Two disjoint, unjoined vertex sets that both induce infinite groups.
    Pair(VertexSet, VertexSet),
}

/// Presence of affine ("parabolic") subdiagrams, recording both readings of
/// the hypothesis: with and without rank-2 Ã_1 pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicStatus {
    /// No affine subdiagram at all.
    Absent,
    /// Only Ã_1 subdiagrams (single ∞ edges).
    OnlyAffineRank2,
    /// Some affine subdiagram of rank ≥ 3.
    AffineRank3Plus,
}

#[derive(Clone, Debug)]
pub struct HyperbolicityReport {
    pub hyperbolic: bool,
    pub witness: Option<Witness>,
    /// True iff the graph has no parabolic subgraph (strict reading), i.e.
    /// the hypothesis under which the restricted criterion applies.
    pub paper_mode_applicable: bool,
    pub parabolic_status: ParabolicStatus,
    /// All minimal infinite vertex sets, in deterministic order.
    pub minimal_infinite: Vec<MinimalInfinite>,
    pub stats: SweepStats,
}

/// Decide word-hyperbolicity with default options (exact mode, rank cap 24).
pub fn is_word_hyperbolic(g: &CoxeterGraph) -> Result<HyperbolicityReport, ClassifyError> {
    is_word_hyperbolic_with(g, &ClassifyOptions::default())
}

pub fn is_word_hyperbolic_with(
    g: &CoxeterGraph,
    opts: &ClassifyOptions,
) -> Result<HyperbolicityReport, ClassifyError> {
    let sweep = minimal_infinite_subsets(g, opts)?;
    let sets = sweep.sets;

    let mut witness = sets
        .iter()
        .find(|m| m.kind == Kind::Affine && m.vertices.len() >= 3)
        .map(|m| Witness::Affine(m.vertices));

    if witness.is_none() {
        'pairs: for (a, ma) in sets.iter().enumerate() {
            for mb in sets.iter().skip(a + 1) {
                if ma.vertices.is_disjoint(mb.vertices)
                    && g.unjoined(ma.vertices, mb.vertices).unwrap()
                {
                    witness = Some(Witness::Pair(ma.vertices, mb.vertices));
                    break 'pairs;
                }
            }
        }
    }

    let has_affine = sets.iter().any(|m| m.kind == Kind::Affine);
    let has_affine_rank3 = sets
        .iter()
        .any(|m| m.kind == Kind::Affine && m.vertices.len() >= 3);
    let parabolic_status = if has_affine_rank3 {
        ParabolicStatus::AffineRank3Plus
    } else if has_affine {
        ParabolicStatus::OnlyAffineRank2
    } else {
        ParabolicStatus::Absent
    };

    let report = HyperbolicityReport {
        hyperbolic: witness.is_none(),
        witness,
        paper_mode_applicable: parabolic_status == ParabolicStatus::Absent,
        parabolic_status,
        minimal_infinite: sets,
        stats: sweep.stats,
    };
    debug_assert!(verify_witness(g, &report));
    Ok(report)
}

// Recompute what a witness claims; used as a self-check and by tests.
pub fn verify_witness(g: &CoxeterGraph, report: &HyperbolicityReport) -> bool {
    use crate::matrix::{cosine_matrix, inertia, MatrixMode};
    let Ok(m) = cosine_matrix(g, MatrixMode::Exact) else {
        return true; // numeric-mode graphs are not re-verified exactly
    };
    let infinite = |s: VertexSet| {
        let ine = inertia(&m.principal_submatrix(s));
        ine.negative > 0 || ine.zero > 0
    };
    match &report.witness {
        None => report.hyperbolic,
        Some(Witness::Affine(s)) => {
            let ine = inertia(&m.principal_submatrix(*s));
            !report.hyperbolic && s.len() >= 3 && ine.negative == 0 && ine.zero >= 1
        }
        Some(Witness::Pair(a, b)) => {
            !report.hyperbolic
                && a.is_disjoint(*b)
                && g.unjoined(*a, *b).unwrap_or(false)
                && infinite(*a)
                && infinite(*b)
        }
    }
}
