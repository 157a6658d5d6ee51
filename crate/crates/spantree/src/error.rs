use thiserror::Error;

/// Crate-wide error type.
///
/// Every fallible operation reports through this enum so callers (in
/// particular the CLI) can map failures onto a small set of outcomes:
/// bad input, a resource cap, or an internal contract violation.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("matrix index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("loop edge {{{v},{v}}} is not allowed")]
    LoopEdge { v: usize },

    #[error("duplicate edge {{{u},{v}}}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("negative weight {w} on edge {{{u},{v}}}")]
    NegativeWeight { u: usize, v: usize, w: String },

    #[error("graph must have at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("cut side must be a nonempty proper subset of the vertices: {reason}")]
    InvalidCutSide { reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("edge {index} not present in the multigraph")]
    EdgeNotFound { index: usize },

    #[error("split weights {w1} + {w2} do not sum to the edge weight {w}")]
    BadSplit { w1: String, w2: String, w: String },

    #[error("enumeration over {edges} nonzero edges exceeds the cap of {cap}")]
    EnumerationCapExceeded { edges: usize, cap: usize },

    #[error("expansion scale {scale} exceeds the cap of {cap}")]
    ExpansionCapExceeded { scale: String, cap: u64 },

    #[error("edge multiplicity {mult} on {{{u},{v}}} exceeds the supported range")]
    MultiplicityOverflow { u: usize, v: usize, mult: String },

    #[error("linear program is infeasible (phase-1 optimum {infeasibility} > 0)")]
    Infeasible { infeasibility: String },

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("cutting-plane loop exceeded the cap of {cap} rounds")]
    CutCapExceeded { cap: usize },

    #[error("parameter t = {t} lies outside [0, 1]")]
    ParameterOutOfRange { t: String },

    #[error("input point is not subtour-feasible: {which}")]
    InfeasibleInput { which: String },

    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by a configured resource cap rather than by
    /// invalid input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::EnumerationCapExceeded { .. }
                | Error::ExpansionCapExceeded { .. }
                | Error::CutCapExceeded { .. }
                | Error::MultiplicityOverflow { .. }
        )
    }
}
