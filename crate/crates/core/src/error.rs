//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while validating inputs or running a
/// certification pipeline stage.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Hilbert-space dimension below 2 or otherwise unusable.
    #[error("invalid dimension {dim}: expected d >= 2")]
    InvalidDimension { dim: usize },

    /// A vector or matrix does not have the length/shape the operation needs.
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// Matrix fails the Hermiticity tolerance.
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    /// Operator fails a trace condition.
    #[error("trace is {trace:e}, expected {expected}")]
    BadTrace { trace: f64, expected: f64 },

    /// Operator has a negative eigenvalue beyond tolerance.
    #[error("operator is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositive { eigenvalue: f64 },

    /// A set of operators fails the POVM completeness relation.
    #[error("POVM elements do not sum to identity (deviation {deviation:e})")]
    NotComplete { deviation: f64 },

    /// Probability outside [0, 1].
    #[error("probability {value} outside [0, 1]")]
    BadProbability { value: f64 },

    /// Matrix logarithm of an operator with a (near-)zero eigenvalue.
    #[error("matrix logarithm is singular (eigenvalue {eigenvalue:e})")]
    SingularMatrix { eigenvalue: f64 },

    /// The Jacobi eigensolver did not reach its off-diagonal target.
    #[error("eigensolver failed to converge (off-diagonal norm {off_norm:e})")]
    EigenFailed { off_norm: f64 },

    /// Tomography statistics give a scale parameter outside (0, 1).
    #[error("degenerate statistics: scale a = {a} outside (0, 1)")]
    DegenerateStatistics { a: f64 },

    /// Reconstructed measurement violates positivity beyond tolerance.
    #[error("noisy statistics: reconstructed element has eigenvalue {eigenvalue:e}")]
    NoisyStatistics { eigenvalue: f64 },

    /// Statistics are mutually inconsistent (e.g. least-squares residual too
    /// large, or a parameter outside its admissible region).
    #[error("inconsistent statistics: {detail} = {value:e}")]
    InconsistentStatistics { detail: &'static str, value: f64 },

    /// Ancilla states do not span the operator space.
    #[error("informationally incomplete ancillas: rank {rank} of {needed} (deficiency {deficiency})")]
    InformationallyIncomplete {
        rank: usize,
        needed: usize,
        deficiency: usize,
    },

    /// No quantum state can reproduce the observed statistics.
    #[error("statistics infeasible for every quantum state: {detail}")]
    InfeasibleStatistics { detail: &'static str },

    /// An iterative solver hit its iteration cap before converging.
    #[error("solver failed after {iterations} iterations (residual {residual:e})")]
    SolverFailure { iterations: u64, residual: f64 },

    /// A sampling oracle found no feasible point.
    #[error("oracle found no feasible sample after {attempts} draws")]
    FeasibilityFailure { attempts: u64 },

    /// An operation was called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

impl Error {
    /// Stable machine-readable tag for report emission.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDimension { .. } => "invalid-dimension",
            Error::ShapeMismatch { .. } => "shape-mismatch",
            Error::NotHermitian { .. } => "not-hermitian",
            Error::BadTrace { .. } => "bad-trace",
            Error::NotPositive { .. } => "not-positive",
            Error::NotComplete { .. } => "not-complete",
            Error::BadProbability { .. } => "bad-probability",
            Error::SingularMatrix { .. } => "singular-matrix",
            Error::EigenFailed { .. } => "eigen-failed",
            Error::DegenerateStatistics { .. } => "degenerate-statistics",
            Error::NoisyStatistics { .. } => "noisy-statistics",
            Error::InconsistentStatistics { .. } => "inconsistent-statistics",
            Error::InformationallyIncomplete { .. } => "informationally-incomplete",
            Error::InfeasibleStatistics { .. } => "infeasible-statistics",
            Error::SolverFailure { .. } => "solver-failure",
            Error::FeasibilityFailure { .. } => "feasibility-failure",
            Error::Precondition(_) => "precondition",
        }
    }
}
