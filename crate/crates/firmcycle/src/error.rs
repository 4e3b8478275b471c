//! Error types shared across the solver modules.

use thiserror::Error;

/// Unified error enum for all model operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModelError {
    /// A power moment `∫ z^p dμ` does not converge because the exponent
    /// reaches or exceeds the tail index.
    #[error("divergent moment: exponent {exponent} >= tail index {shape_k}")]
    DivergentMoment { exponent: f64, shape_k: f64 },

    /// An aggregate statistic that requires positive mass was requested on an
    /// empty firm distribution.
    #[error("empty firm distribution")]
    EmptyDistribution,

    /// A cohort was constructed with negative trial mass.
    #[error("negative cohort mass {0}")]
    NegativeMass(f64),

    /// A root-finding problem has no solution in the admissible domain.
    #[error("no root: {0}")]
    NoRoot(String),

    /// The no-entry branch was reached with no incumbents to truncate.
    #[error("no-entry regime with an empty economy")]
    EmptyEconomy,

    /// A bracketed search failed to converge within the iteration cap.
    #[error("solver failed to converge: {0}")]
    NonConvergence(String),

    /// The iterative entry game exceeded its batch cap.
    #[error("iterative entry game exceeded {0} batches")]
    IterationCap(usize),

    /// A cycle with no change in the firm mass admits no variety-neutral `q`.
    #[error("degenerate cycle: firm mass unchanged, q* undefined")]
    DegenerateCycle,

    /// The requested planner branch does not apply (e.g. the exit FOC solves
    /// below the incumbent truncation, so the entry regime is active).
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    /// Policy levers drove the subsidized fixed cost to zero or below.
    #[error("subsidized fixed cost is non-positive: {0}")]
    NonPositiveCost(f64),

    /// A steady state with the requested parameters does not exist.
    #[error("infeasible steady state: {0}")]
    Infeasible(String),

    /// A calibration target cannot be reached inside the search bracket.
    #[error("calibration target unreachable in bracket [{lo}, {hi}]")]
    TargetUnreachable { lo: f64, hi: f64 },

    /// An input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// An elasticity denominator vanished.
    #[error("degenerate denominator in elasticity formula")]
    DegenerateDenominator,

    /// The deflator-mismeasurement map is undefined without a fixed-cost
    /// output share.
    #[error("mismeasured-deflator map undefined at alpha = 0")]
    UndefinedAtAlphaZero,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ModelError>;
