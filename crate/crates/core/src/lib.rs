#![forbid(unsafe_code)]

//! Dual graphs of normal surface singularities and their numerical
//! klt / log canonical classification.
//!
//! A [`DualGraph`] records the exceptional curves `E_i` of a resolution as
//! vertices weighted by `(r_i, g_i, a_i)` with `a_i = -(E_i^2)`, and the
//! intersection numbers `(E_i . E_j)` as edge multiplicities. From it the
//! crate computes, in exact rational arithmetic:
//!
//! - the canonical degrees `(K_Y . E_i)` by adjunction,
//! - the boundary `Delta_Y` solving `(Delta_Y . E_i) = -(K_Y . E_i)`,
//! - the numerical class (klt, lc but not klt, not lc),
//!
//! and recognizes the classical list of numerically log canonical graphs
//! (chains, star-shaped graphs, their twisted forms, simple elliptic and
//! cusp cycles). Graph surgeries (blow-up, cusp base change), a Weierstrass
//! cubic analyzer over prime fields and a bounded enumeration audit round
//! out the toolkit.

pub mod canon;
pub mod classifier;
pub mod discrepancy;
pub mod enumerator;
pub mod exact;
pub mod graph;
pub mod json;
pub mod transforms;
pub mod weierstrass;

pub use canon::canonical_form;
pub use classifier::{
    cross_check, expected_numeric_class, match_family, Consistency, CrossCheck, Family, FamilyMatch,
};
pub use discrepancy::{
    canonical_degrees, classify_numerical, delta_coefficients, DiscrepancyResult, NumericClass,
};
pub use enumerator::{audit, enumerate_graphs, AuditReport, EnumBounds};
pub use exact::is_negative_definite;
pub use graph::{
    graph_parameter, intersection_matrix, parse_graph, read_graph, to_dot, validate, DualGraph,
    IntersectionMatrix, ValidationReport, Vertex, Violation,
};
pub use transforms::{blow_up, cusp_base_change, predicted_new_discrepancy, BlowUpSite};
pub use weierstrass::{analyze_cubic, discriminant, jacobian_scan, CurveReport, WeierstrassCubic};

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("invalid vertex `{id}`: {message}")]
    InvalidVertex { id: String, message: String },
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("empty graph")]
    EmptyGraph,
    #[error("not a dual graph: intersection matrix is not negative definite")]
    NotADualGraph,
    #[error("invalid blow-up site: {0}")]
    InvalidSite(String),
    #[error("not a cusp: {0}")]
    NotACusp(String),
    #[error("graph matches no classification template")]
    NoMatch,
    #[error("invalid Weierstrass cubic: {0}")]
    InvalidCurve(String),
    #[error("field of size {0} exceeds the scan limit")]
    OversizedField(u64),
    /// `candidates` is a lower bound: counting stops past the limit.
    #[error("enumeration budget exceeded: at least {candidates} candidates > {limit}")]
    BudgetExceeded { candidates: u64, limit: u64 },
    #[error("invalid enumeration bounds: {0}")]
    InvalidBounds(String),
}

pub type Result<T> = std::result::Result<T, Error>;
