//! Deterministic equilibrium solver and business-cycle laboratory for a
//! heterogeneous-firm entry/exit economy with generalized love-of-variety
//! aggregation.
//!
//! The economy is populated by monopolistically competitive firms that differ
//! in productivity `z`, pay a per-period fixed operating cost, and enter by
//! paying a sunk entry cost for a productivity draw. Aggregate output is
//!
//! ```text
//! Y = M^(q - 1/(sigma-1)) * Lp * Z^(1/(sigma-1))
//! ```
//!
//! where `M` is the mass of active varieties, `Lp` is production labor,
//! `Z = ∫ z^(sigma-1) m(z) dz` is market intensity (the sufficient
//! competition statistic), and `q` is the love-of-variety parameter. At
//! `q = 1/(sigma-1)` the aggregator collapses to standard CES.
//!
//! Module map:
//! - [`distributions`]: entrant productivity laws with exact truncated moments.
//! - [`firm_distribution`]: active firms as a list of surviving entrant cohorts.
//! - [`equilibrium`]: static cutoff/entry solvers in partial and general
//!   equilibrium, plus an iterative entry-game oracle.
//! - [`cycle_analysis`]: three-phase fixed-cost cycles, output decomposition,
//!   `q*` roots, and depth sweeps.
//! - [`pareto_transition`]: closed-form reversion paths used as independent
//!   oracles for the step simulator.
//! - [`planner_static`]: myopic planner allocations and the decentralizing
//!   fixed-cost subsidy.
//! - [`quant_transition`]: the calibrated quantitative model with exogenous
//!   exit, perfect-foresight cost paths, policy levers, and CEV welfare.
//! - [`identification`]: recovery of `q` from panel regressions on positive
//!   demand shocks.

pub mod cycle_analysis;
pub mod distributions;
pub mod equilibrium;
pub mod error;
pub mod firm_distribution;
pub mod identification;
pub mod numerics;
pub mod pareto_transition;
pub mod planner_static;
pub mod quant_transition;

pub use distributions::{EntrantDist, ModelParams, ParetoEntrantDist};
pub use equilibrium::{EquilibriumState, Regime};
pub use error::ModelError;
pub use firm_distribution::{Cohort, FirmDistribution};
pub use planner_static::PlannerAllocation;
