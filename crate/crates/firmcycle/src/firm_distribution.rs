//! The active-firm density as a finite list of entrant cohorts.
//!
//! Every distribution the model ever produces is a finite sum of scaled
//! truncations of the entrant law: entry appends a cohort, a crisis raises
//! truncation points, and exogenous exit rescales survival factors. Keeping
//! the cohort list explicit makes every aggregate an exact closed form —
//! there is no gridding and hence no discretization error anywhere in the
//! dynamics.

use serde::{Deserialize, Serialize};

use crate::distributions::EntrantDist;
use crate::error::{ModelError, Result};

/// Relative tolerance at which adjacent cohorts with equal cutoffs are
/// coalesced to bound list growth along long transitions.
const COALESCE_TOL: f64 = 1e-12;

/// A mass of entrants sharing an entry date.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cohort {
    /// Mass of entrants that drew a productivity (before truncation and
    /// exogenous exit).
    pub trial_mass: f64,
    /// Current lower truncation point.
    pub cutoff: f64,
    /// Cumulative survival scaling `(1 - delta)^age`, in (0, 1].
    pub survival_factor: f64,
}

impl Cohort {
    pub fn new(trial_mass: f64, cutoff: f64) -> Result<Self> {
        if trial_mass < 0.0 {
            return Err(ModelError::NegativeMass(trial_mass));
        }
        Ok(Cohort { trial_mass, cutoff, survival_factor: 1.0 })
    }
}

/// The active-firm density `m`, tagged with its entrant law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirmDistribution<D> {
    pub dist: D,
    pub cohorts: Vec<Cohort>,
}

impl<D: EntrantDist + Clone> FirmDistribution<D> {
    /// The empty economy.
    pub fn empty(dist: D) -> Self {
        FirmDistribution { dist, cohorts: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.cohorts.is_empty()
    }

    /// Total mass of active varieties,
    /// `M = Σ_j trial_mass_j * survival_factor_j * p_E(cutoff_j)`.
    pub fn mass(&self) -> f64 {
        self.cohorts
            .iter()
            .map(|c| c.trial_mass * c.survival_factor * self.dist.survival_prob(c.cutoff))
            .sum()
    }

    /// Market intensity `Z = ∫ z^(sigma-1) m(z) dz`, the sufficient
    /// competition statistic.
    pub fn market_intensity(&self, sigma: f64) -> Result<f64> {
        self.cohorts
            .iter()
            .map(|c| {
                Ok(c.trial_mass
                    * c.survival_factor
                    * self.dist.partial_power_moment(c.cutoff, sigma - 1.0)?)
            })
            .sum()
    }

    /// Average productivity `z̄ = (Z/M)^(1/(sigma-1))`.
    pub fn avg_productivity(&self, sigma: f64) -> Result<f64> {
        let m = self.mass();
        if m <= 0.0 {
            return Err(ModelError::EmptyDistribution);
        }
        Ok((self.market_intensity(sigma)? / m).powf(1.0 / (sigma - 1.0)))
    }

    /// Density of the active-firm distribution at `z` (sum over cohorts).
    pub fn density(&self, z: f64) -> f64 {
        self.cohorts
            .iter()
            .filter(|c| z >= c.cutoff)
            .map(|c| c.trial_mass * c.survival_factor * self.dist.density(z))
            .sum()
    }

    /// Raise every cohort's truncation point to at least `new_cutoff`.
    /// Idempotent; never increases mass or intensity.
    pub fn truncate(&self, new_cutoff: f64) -> Self {
        let cohorts = self
            .cohorts
            .iter()
            .map(|c| Cohort { cutoff: c.cutoff.max(new_cutoff), ..*c })
            .collect();
        Self { dist: self.dist.clone(), cohorts: coalesce(cohorts) }
    }

    /// Apply one period of exogenous exit: every survival factor shrinks by
    /// `(1 - delta)`, so mass and intensity scale by exactly that factor.
    pub fn decay(&self, delta: f64) -> Self {
        let cohorts = self
            .cohorts
            .iter()
            .map(|c| Cohort { survival_factor: c.survival_factor * (1.0 - delta), ..*c })
            .collect();
        Self { dist: self.dist.clone(), cohorts: coalesce(cohorts) }
    }

    /// Append an entrant cohort.
    pub fn merge(&self, entrants: Cohort) -> Result<Self> {
        if entrants.trial_mass < 0.0 {
            return Err(ModelError::NegativeMass(entrants.trial_mass));
        }
        let mut cohorts = self.cohorts.clone();
        if entrants.trial_mass > 0.0 {
            cohorts.push(entrants);
        }
        Ok(Self { dist: self.dist.clone(), cohorts: coalesce(cohorts) })
    }

    /// Smallest truncation point among cohorts (support bound of `m`).
    pub fn min_cutoff(&self) -> Option<f64> {
        self.cohorts.iter().map(|c| c.cutoff).fold(None, |acc, c| match acc {
            None => Some(c),
            Some(a) => Some(a.min(c)),
        })
    }

    /// Productivity level above which only a fraction `tail_mass` of the
    /// current active mass remains. Used to cap "infinite" crisis sweeps.
    pub fn survival_quantile(&self, tail_mass: f64) -> f64 {
        let m = self.mass();
        let target = m * tail_mass;
        let mut lo = self.min_cutoff().unwrap_or(self.dist.z_min());
        let mut hi = lo.max(self.dist.z_min()) * 2.0;
        let mass_above = |a: f64| {
            self.cohorts
                .iter()
                .map(|c| {
                    c.trial_mass * c.survival_factor * self.dist.survival_prob(c.cutoff.max(a))
                })
                .sum::<f64>()
        };
        while mass_above(hi) > target {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mass_above(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Merge cohorts whose cutoffs agree to relative tolerance by pooling their
/// decayed trial masses at survival factor 1 — aggregates are invariant to
/// this re-expression because both mass and intensity are linear in
/// `trial_mass * survival_factor` at a common cutoff.
fn coalesce(mut cohorts: Vec<Cohort>) -> Vec<Cohort> {
    cohorts.sort_by(|a, b| a.cutoff.total_cmp(&b.cutoff));
    let mut out: Vec<Cohort> = Vec::with_capacity(cohorts.len());
    for c in cohorts {
        match out.last_mut() {
            Some(prev)
                if (prev.cutoff - c.cutoff).abs()
                    <= COALESCE_TOL * prev.cutoff.abs().max(1.0)
                    && prev.survival_factor == c.survival_factor =>
            {
                prev.trial_mass += c.trial_mass;
            }
            _ => out.push(c),
        }
    }
    out
}
