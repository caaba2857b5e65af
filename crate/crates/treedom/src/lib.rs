//! Exact domination solvers and verification tooling for trees.
//!
//! The crate computes four domination parameters of a tree exactly: the
//! domination number γ, the total domination number γ_t, the semitotal
//! domination number γ_t2 (every solution vertex must have another solution
//! vertex within distance two), and the almost-domination number γ(T; v)
//! relative to an exempt vertex v. Each parameter has two independent
//! implementations: a brute-force subset search ([`exact`]) that serves as
//! ground truth, and a linear-time rooted dynamic program ([`dp`]).
//!
//! On top of the solvers sit generators for two constructive tree families
//! ([`family`]): the labeled family attaining γ_t2 = 2(n − l + 2)/5 with
//! equality, and the family of trees with γ = γ_t2. The [`enumerate`] module
//! streams all non-isomorphic trees of a given order, and [`verify`] runs
//! exhaustive sweeps that compare the detected tree sets against the
//! generated censuses and emit machine-readable reports.

pub mod dp;
pub mod enumerate;
pub mod exact;
pub mod family;
pub mod graph;
pub mod verify;

pub use graph::{CanonicalForm, Tree};

/// Guardrails for the exponential-time oracles and the enumeration ceiling.
///
/// These are configuration values rather than hard-coded constants so that
/// verification sweeps can tune them. `TREEDOM_GUARDRAIL_N` overrides the
/// enumeration ceiling when set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Limits {
    /// Largest order accepted by a single brute-force solve.
    pub oracle_solve_max: usize,
    /// Largest order accepted when enumerating all minimum sets.
    pub oracle_enumerate_max: usize,
    /// Largest order the tree enumerator will produce.
    pub order_ceiling: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_solve_max: 20,
            oracle_enumerate_max: 16,
            order_ceiling: 20,
        }
    }
}

impl Limits {
    /// Default limits, with the enumeration ceiling taken from the
    /// `TREEDOM_GUARDRAIL_N` environment variable when present.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var("TREEDOM_GUARDRAIL_N")
            .ok()
            .and_then(|s| s.parse::<usize>().ok())
        {
            limits.order_ceiling = n;
        }
        limits
    }

    /// Ceiling with a custom enumeration bound.
    pub fn with_ceiling(ceiling: usize) -> Self {
        Limits {
            order_ceiling: ceiling,
            ..Limits::default()
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("vertex {vertex} out of range for order {n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),
    #[error("order {n} exceeds the graph6 short-form limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("order-1 tree rejected: domination parameters need a partner vertex")]
    IsolatedVertex,
    #[error("order {n} exceeds the configured guardrail of {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("vertex {vertex} has status {found}, expected {expected}")]
    WrongStatus {
        vertex: usize,
        expected: family::Status,
        found: family::Status,
    },
    #[error("vertex {vertex} has degree {found}, expected {expected}")]
    WrongDegree {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
