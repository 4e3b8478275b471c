//! Entrant productivity distributions with exact truncated power moments,
//! survival probabilities, and conditional market shares.
//!
//! The concrete law shipped here is Pareto, whose truncated moments have
//! closed forms; every aggregate in the rest of the crate reduces to these
//! three primitives, so no numerical integration appears outside of tests.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// All structural scalars of the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Elasticity of substitution across varieties (> 1).
    pub sigma: f64,
    /// Love-of-variety parameter (>= 0). `q = 1/(sigma-1)` is the CES
    /// knife-edge.
    pub q: f64,
    /// Per-period fixed operating cost, in labor units (> 0).
    pub f_c: f64,
    /// Sunk entry cost, in labor units (> 0).
    pub f_e: f64,
    /// Nominal industry expenditure for partial-equilibrium mode (> 0).
    pub market_size_i: f64,
    /// Labor endowment for general-equilibrium mode (> 0).
    pub labor_endowment_l: f64,
    /// Exogenous per-period exit probability, in [0, 1).
    pub delta: f64,
    /// Firm discount factor per period, in (0, 1).
    pub beta_firm: f64,
    /// Planner discount factor per period, in (0, 1).
    pub beta_planner: f64,
}

impl ModelParams {
    /// The love-of-variety value embedded in standard CES aggregation,
    /// `1/(sigma-1)`. Derived, never stored.
    pub fn q_ces(&self) -> f64 {
        1.0 / (self.sigma - 1.0)
    }

    /// Validate the invariants on the structural scalars.
    pub fn validate(&self) -> Result<()> {
        if self.sigma <= 1.0 {
            return Err(ModelError::DomainError(format!("sigma must exceed 1, got {}", self.sigma)));
        }
        if self.q < 0.0 {
            return Err(ModelError::DomainError(format!("q must be non-negative, got {}", self.q)));
        }
        if self.f_c <= 0.0 || self.f_e <= 0.0 {
            return Err(ModelError::DomainError(format!(
                "fixed and entry costs must be positive, got f_c={}, f_e={}",
                self.f_c, self.f_e
            )));
        }
        if !(0.0..1.0).contains(&self.delta) {
            return Err(ModelError::DomainError(format!("delta must lie in [0,1), got {}", self.delta)));
        }
        for (name, b) in [("beta_firm", self.beta_firm), ("beta_planner", self.beta_planner)] {
            if !(0.0 < b && b < 1.0) {
                return Err(ModelError::DomainError(format!("{name} must lie in (0,1), got {b}")));
            }
        }
        Ok(())
    }

    /// Baseline calibration at an annual frequency: discount factor 0.864,
    /// exit rate 3.36% per year (so the planner discounts at
    /// `beta_firm / (1 - delta) = 0.894`), substitution elasticity 5.4,
    /// love-of-variety 0.568, and unit labor endowment and fixed cost.
    pub fn calibrated_annual() -> Self {
        let beta_firm = 0.864;
        let delta = 0.0336;
        ModelParams {
            sigma: 5.4,
            q: 0.568,
            f_c: 1.0,
            f_e: 1.0,
            market_size_i: 1.0,
            labor_endowment_l: 1.0,
            delta,
            beta_firm,
            beta_planner: beta_firm / (1.0 - delta),
        }
    }

    /// Baseline calibration converted to a quarterly frequency by quarter-root
    /// of the annual survival and discount rates.
    pub fn calibrated_quarterly() -> Self {
        let annual = Self::calibrated_annual();
        let beta_firm = annual.beta_firm.powf(0.25);
        let delta = 1.0 - (1.0 - annual.delta).powf(0.25);
        ModelParams {
            beta_firm,
            delta,
            beta_planner: beta_firm / (1.0 - delta),
            ..annual
        }
    }

    /// Entrant tail index paired with this calibration: the tail parameter
    /// `h = 1.2` is stated relative to the substitution elasticity, so
    /// `shape_k = h * (sigma - 1)`.
    pub fn calibrated_dist() -> ParetoEntrantDist {
        ParetoEntrantDist { z_min: 1.0, shape_k: 1.2 * (5.4 - 1.0) }
    }
}

/// Interface for entrant productivity laws.
///
/// Only Pareto ships; the trait keeps the aggregation layer independent of
/// the concrete law so lognormal or mixture laws can be added later.
pub trait EntrantDist {
    /// Lower support bound.
    fn z_min(&self) -> f64;

    /// Density of the entrant law at `z`.
    fn density(&self, z: f64) -> f64;

    /// Anti-cumulative distribution `p_E(a) = P(z >= a)`. Equals 1 below the
    /// support and is monotone non-increasing.
    fn survival_prob(&self, a: f64) -> f64;

    /// Upper partial power moment `∫_a^∞ z^p dμ(z)` with the truncation
    /// point clamped to the support from below.
    fn partial_power_moment(&self, a: f64, p: f64) -> Result<f64>;

    /// Expected relative market share of an entrant above `cutoff`,
    /// `E[(z/cutoff)^(sigma-1) | z >= cutoff]`. Always exceeds 1.
    fn conditional_relative_share(&self, cutoff: f64, sigma: f64) -> Result<f64> {
        let p = sigma - 1.0;
        let a = cutoff.max(self.z_min());
        Ok(self.partial_power_moment(a, p)? / (self.survival_prob(a) * a.powf(p)))
    }

    /// Closed-form solution of the free-entry cutoff equation
    /// `fe_over_fc = ∫_z [(x/z)^(sigma-1) - 1] dμ(x)` when the law admits
    /// one, already clamped to the support. `None` falls back to the generic
    /// bracketed root finder in the equilibrium module.
    fn free_entry_cutoff(&self, _sigma: f64, _fe_over_fc: f64) -> Option<f64> {
        None
    }
}

/// Pareto entrant law on `[z_min, ∞)` with tail index `shape_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParetoEntrantDist {
    /// Location (lower support bound), > 0.
    pub z_min: f64,
    /// Tail index; must exceed `sigma - 1` for finite market intensity.
    pub shape_k: f64,
}

impl ParetoEntrantDist {
    pub fn new(z_min: f64, shape_k: f64) -> Result<Self> {
        if z_min <= 0.0 || shape_k <= 0.0 {
            return Err(ModelError::DomainError(format!(
                "Pareto parameters must be positive, got z_min={z_min}, shape_k={shape_k}"
            )));
        }
        Ok(ParetoEntrantDist { z_min, shape_k })
    }
}

impl EntrantDist for ParetoEntrantDist {
    fn z_min(&self) -> f64 {
        self.z_min
    }

    fn density(&self, z: f64) -> f64 {
        if z < self.z_min {
            0.0
        } else {
            self.shape_k * self.z_min.powf(self.shape_k) / z.powf(self.shape_k + 1.0)
        }
    }

    fn survival_prob(&self, a: f64) -> f64 {
        if a <= self.z_min {
            1.0
        } else {
            (self.z_min / a).powf(self.shape_k)
        }
    }

    fn partial_power_moment(&self, a: f64, p: f64) -> Result<f64> {
        let k = self.shape_k;
        if p >= k {
            return Err(ModelError::DivergentMoment { exponent: p, shape_k: k });
        }
        let a = a.max(self.z_min);
        Ok(k * self.z_min.powf(k) * a.powf(p - k) / (k - p))
    }

    fn conditional_relative_share(&self, _cutoff: f64, sigma: f64) -> Result<f64> {
        let p = sigma - 1.0;
        if p >= self.shape_k {
            return Err(ModelError::DivergentMoment { exponent: p, shape_k: self.shape_k });
        }
        // Scale invariance of the Pareto tail: the share is constant in the
        // cutoff.
        Ok(self.shape_k / (self.shape_k - p))
    }

    fn free_entry_cutoff(&self, sigma: f64, fe_over_fc: f64) -> Option<f64> {
        // The expected excess share integral reduces to
        // (sigma-1)/(k-(sigma-1)) * (z_min/z)^k, so the cutoff is
        // z_min * [(sigma-1) / ((k-(sigma-1)) * fe_over_fc)]^(1/k).
        let k = self.shape_k;
        let p = sigma - 1.0;
        if p >= k {
            return None;
        }
        let z = self.z_min * (p / ((k - p) * fe_over_fc)).powf(1.0 / k);
        Some(z.max(self.z_min))
    }
}
