//! Three-phase fixed-cost cycle experiments.
//!
//! A cycle solves the economy at a low fixed cost (phase 1), raises the cost
//! unexpectedly so that low-productivity firms exit (phase 2), and reverts it
//! (phase 3). Comparing phases 3 and 1 isolates the long-run footprint of a
//! recession: fewer varieties of higher average productivity. Whether that
//! footprint raises or lowers welfare depends entirely on how much society
//! values variety relative to the CES benchmark.

use serde::{Deserialize, Serialize};

use crate::distributions::{EntrantDist, ModelParams, ParetoEntrantDist};
use crate::equilibrium::{solve_ge_steady, solve_pe, EquilibriumState};
use crate::error::{ModelError, Result};
use crate::firm_distribution::FirmDistribution;

/// Market-clearing mode for cycle experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Partial equilibrium: nominal expenditure fixed at `market_size_i`.
    Pe,
    /// General equilibrium: labor endowment fixed at `labor_endowment_l`.
    Ge,
}

/// Aggregate output `Y = M^(q - 1/(sigma-1)) * Lp * Z^(1/(sigma-1))`.
///
/// The factor `Z^(1/(sigma-1)) / M^(1/(sigma-1)) = z̄` is measured TFP; the
/// factor `M^q` is the love-of-variety externality.
pub fn output(params: &ModelParams, mass: f64, labor_production: f64, intensity: f64) -> f64 {
    if mass <= 0.0 {
        return 0.0;
    }
    let inv = 1.0 / (params.sigma - 1.0);
    mass.powf(params.q - inv) * labor_production * intensity.powf(inv)
}

/// Log-differences of the aggregates between phases 3 and 1, plus the
/// variety-neutral `q*` in general equilibrium.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycleReport<D> {
    pub phase1: EquilibriumState<D>,
    pub phase2: EquilibriumState<D>,
    pub phase3: EquilibriumState<D>,
    pub dlog_mass: f64,
    pub dlog_labor: f64,
    pub dlog_intensity: f64,
    pub dlog_avg_productivity: f64,
    pub dlog_output: f64,
    /// Love-of-variety value at which the cycle is output-neutral; present in
    /// GE mode when the firm mass changes.
    pub q_star: Option<f64>,
}

fn solve<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
    mode: Mode,
) -> Result<EquilibriumState<D>> {
    match mode {
        Mode::Pe => solve_pe(params, incumbents),
        Mode::Ge => solve_ge_steady(params, incumbents),
    }
}

/// Run the three-phase cycle: `f_low` from an empty economy, `f_high` from
/// phase-1 incumbents, `f_low` again from the survivors.
pub fn run_three_phase_cycle<D: EntrantDist + Clone>(
    params: &ModelParams,
    dist: &D,
    f_low: f64,
    f_high: f64,
    mode: Mode,
) -> Result<CycleReport<D>> {
    if !(f_high > f_low && f_low > 0.0) {
        return Err(ModelError::DomainError(format!(
            "need f_high > f_low > 0, got f_low={f_low}, f_high={f_high}"
        )));
    }
    let low = ModelParams { f_c: f_low, ..*params };
    let high = ModelParams { f_c: f_high, ..*params };
    let empty = FirmDistribution::empty(dist.clone());
    let phase1 = solve(&low, &empty, mode)?;
    let phase2 = solve(&high, &phase1.distribution, mode)?;
    let phase3 = solve(&low, &phase2.distribution, mode)?;

    let inv = 1.0 / (params.sigma - 1.0);
    let dlog_mass = (phase3.mass / phase1.mass).ln();
    let dlog_labor = (phase3.labor_production / phase1.labor_production).ln();
    let dlog_intensity = (phase3.intensity / phase1.intensity).ln();
    let dlog_avg_productivity = inv * (dlog_intensity - dlog_mass);
    // Output change computed through the decomposition so the identity
    // dlogY = (q - 1/(sigma-1)) dlogM + dlogLp + dlogZ/(sigma-1) is exact.
    let dlog_output = (params.q - inv) * dlog_mass + dlog_labor + inv * dlog_intensity;
    let q_star = match mode {
        Mode::Ge if dlog_mass != 0.0 => {
            Some(inv - (dlog_labor + inv * dlog_intensity) / dlog_mass)
        }
        _ => None,
    };
    Ok(CycleReport {
        phase1,
        phase2,
        phase3,
        dlog_mass,
        dlog_labor,
        dlog_intensity,
        dlog_avg_productivity,
        dlog_output,
        q_star,
    })
}

/// The unique love-of-variety value at which a GE cycle leaves long-run
/// output unchanged:
/// `q* = 1/(sigma-1) - (dlogLp + dlogZ/(sigma-1)) / dlogM`.
///
/// The cycle aggregates are invariant to `q`, so the root is available in
/// closed form; it always exceeds the CES benchmark because cleansing raises
/// both production labor and intensity while lowering the firm mass.
pub fn find_q_star<D: EntrantDist + Clone>(
    params: &ModelParams,
    dist: &D,
    f_low: f64,
    f_high: f64,
) -> Result<f64> {
    let report = run_three_phase_cycle(params, dist, f_low, f_high, Mode::Ge)?;
    report.q_star.ok_or(ModelError::DegenerateCycle)
}

/// One record of a crisis-depth sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DepthRecord {
    pub f_high: f64,
    pub mass_phase3: f64,
    pub dlog_mass: f64,
    pub dlog_labor: f64,
    pub dlog_intensity: f64,
    pub q_star: Option<f64>,
    /// Long-run log-output change for each requested `q`.
    pub dlog_output_at_q: Vec<f64>,
}

/// Highest crisis cost the sweep evaluates: the cost at which the phase-2
/// cutoff reaches the productivity level above which only `tail_mass` of the
/// phase-1 firm mass survives. Beyond it the "all incumbents exit" limit is
/// effectively attained.
pub fn max_crisis_cost<D: EntrantDist + Clone>(
    params: &ModelParams,
    dist: &D,
    mode: Mode,
    tail_mass: f64,
) -> Result<f64> {
    let empty = FirmDistribution::empty(dist.clone());
    let phase1 = solve(params, &empty, mode)?;
    let z_cap = phase1.distribution.survival_quantile(tail_mass);
    let survivors = phase1.distribution.truncate(z_cap);
    let intensity = survivors.market_intensity(params.sigma)?;
    let spending = match mode {
        Mode::Pe => params.market_size_i,
        Mode::Ge => {
            params.sigma / (params.sigma - 1.0)
                * (params.labor_endowment_l - survivors.mass() * params.f_c)
        }
    };
    // Invert the zero-profit condition at the capped cutoff.
    Ok((spending / params.sigma) * z_cap.powf(params.sigma - 1.0) / intensity)
}

/// Sweep the crisis depth over an ascending grid of phase-2 costs.
pub fn depth_sweep<D: EntrantDist + Clone>(
    params: &ModelParams,
    dist: &D,
    f_high_grid: &[f64],
    q_list: &[f64],
    mode: Mode,
) -> Result<Vec<DepthRecord>> {
    let inv = 1.0 / (params.sigma - 1.0);
    f_high_grid
        .iter()
        .map(|&f_high| {
            let r = run_three_phase_cycle(params, dist, params.f_c, f_high, mode)?;
            let dlog_output_at_q = q_list
                .iter()
                .map(|&q| (q - inv) * r.dlog_mass + r.dlog_labor + inv * r.dlog_intensity)
                .collect();
            Ok(DepthRecord {
                f_high,
                mass_phase3: r.phase3.mass,
                dlog_mass: r.dlog_mass,
                dlog_labor: r.dlog_labor,
                dlog_intensity: r.dlog_intensity,
                q_star: r.q_star,
                dlog_output_at_q,
            })
        })
        .collect()
}

/// Range of output-neutral `q*` values across a family of crisis depths.
///
/// Below the returned lower bound every crisis in the family raises long-run
/// output; above the upper bound every crisis lowers it. The band is defined
/// on the supplied grid (a canonical discretization of the crisis family).
pub fn find_q_band<D: EntrantDist + Clone>(
    params: &ModelParams,
    dist: &D,
    f_high_grid: &[f64],
) -> Result<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &f_high in f_high_grid {
        let q = find_q_star(params, dist, params.f_c, f_high)?;
        lo = lo.min(q);
        hi = hi.max(q);
    }
    if !lo.is_finite() {
        return Err(ModelError::DomainError("empty crisis grid".into()));
    }
    Ok((lo, hi))
}

/// Result of the aggregate-TFP cycle experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TfpCycleReport {
    pub phase1: EquilibriumState<ParetoEntrantDist>,
    pub phase2: EquilibriumState<ParetoEntrantDist>,
    pub phase3: EquilibriumState<ParetoEntrantDist>,
    /// Phase-2 output relative to phase 1 (equals the TFP multiplier).
    pub output_ratio_phase2: f64,
}

/// Temporarily scale every firm's productivity by `a_low` in phase 2 and
/// revert in phase 3 (partial equilibrium).
///
/// The multiplier cancels from both the exit and the entry margins, so the
/// phase-3 economy is identical to phase 1: pure aggregate-TFP cycles leave
/// no long-run footprint.
pub fn tfp_cycle_experiment(
    params: &ModelParams,
    dist: &ParetoEntrantDist,
    a_low: f64,
) -> Result<TfpCycleReport> {
    if !(0.0 < a_low && a_low <= 1.0) {
        return Err(ModelError::DomainError(format!(
            "productivity multiplier must lie in (0, 1], got {a_low}"
        )));
    }
    let phase1 = solve_pe(params, &FirmDistribution::empty(*dist))?;
    // Scale the economy: every z becomes a_low * z, which maps the Pareto law
    // and each cohort cutoff multiplicatively.
    let scaled_dist = ParetoEntrantDist { z_min: dist.z_min * a_low, ..*dist };
    let scaled = FirmDistribution {
        dist: scaled_dist,
        cohorts: phase1
            .distribution
            .cohorts
            .iter()
            .map(|c| crate::firm_distribution::Cohort { cutoff: c.cutoff * a_low, ..*c })
            .collect(),
    };
    let phase2 = solve_pe(params, &scaled)?;
    // Revert the multiplier.
    let reverted = FirmDistribution {
        dist: *dist,
        cohorts: phase2
            .distribution
            .cohorts
            .iter()
            .map(|c| crate::firm_distribution::Cohort { cutoff: c.cutoff / a_low, ..*c })
            .collect(),
    };
    let phase3 = solve_pe(params, &reverted)?;
    Ok(TfpCycleReport {
        output_ratio_phase2: phase2.output / phase1.output,
        phase1,
        phase2,
        phase3,
    })
}
