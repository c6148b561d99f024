//! Exact-arithmetic analysis of Coxeter systems given by their graphs.
//!
//! The crate computes, without floating point:
//! - determinants of cosine matrices, by fraction-free elimination and
//!   independently by the cycle expansion over disjoint cyclic paths;
//! - exact signatures (inertia) via symmetric elimination with hyperbolic
//!   2×2 pivots;
//! - finite / affine / indefinite classification of diagrams and all their
//!   subdiagrams, with recognition of the classical families;
//! - word-hyperbolicity by Moussong's criterion, with explicit witnesses;
//! - the Σ_k family (k chain copies 3–3–3–5 on a label-5 hub clique), its
//!   determinant recurrence and closed form, and its signature (4k, k).
//!
//! All arithmetic happens in Q(√2, √3, √5), which covers every edge label
//! in {2, …, 6} ∪ {∞}; other labels are served by a rational numeric mode.

pub mod classify;
pub mod field;
pub mod graph;
pub mod hyperbolicity;
pub mod matrix;

pub use classify::{
    group_type, group_type_with, has_parabolic_subgraph, identify_family,
    minimal_infinite_subsets, subset_kind_cache, ClassifyError, ClassifyOptions,
    ComponentVerdict, FamilyName, Kind, MinimalInfinite, SweepResult, SweepStats, TypeVerdict,
    DEFAULT_RANK_CAP,
};
pub use field::{cos_label, rational_cos_pi_over, FieldElement, FieldError, Rational};
pub use graph::{
    sigma_family, sigma_hubs, CoxeterGraph, GraphError, Label, ParseError, ParseErrorKind,
    VertexSet, MAX_RANK,
};
pub use hyperbolicity::{
    is_word_hyperbolic, is_word_hyperbolic_with, verify_witness, HyperbolicityReport,
    ParabolicStatus, Witness,
};
pub use matrix::{
    cosine_matrix, det_elimination, det_sigma_closed, det_sigma_recurrence, det_vinberg,
    det_vinberg_matrix, enumerate_cycles, h4_det, inertia, sigma1_det, CosineMatrix, CyclePath,
    Inertia, MatrixError, MatrixMode, DEFAULT_CYCLE_BUDGET,
};
