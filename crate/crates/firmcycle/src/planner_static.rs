//! Myopic social-planner allocations and the decentralizing fixed-cost
//! subsidy.
//!
//! The planner maximizes current real output choosing the entry mass and the
//! survival cutoff directly, subject to labor feasibility
//! `L >= Lp + f_e E + f_c M`. Relative to the market, the planner internalizes
//! the variety externality: with love-of-variety `q` above the CES knife-edge
//! `1/(sigma-1)` the market under-provides firms, below it the market
//! over-provides them. A single proportional subsidy/tax on the fixed
//! operating cost restores efficiency.

use serde::{Deserialize, Serialize};

use crate::cycle_analysis::output;
use crate::distributions::{EntrantDist, ModelParams};
use crate::equilibrium::{solve_cutoff_entry, EquilibriumState, Regime};
use crate::error::{ModelError, Result};
use crate::firm_distribution::{Cohort, FirmDistribution};
use crate::numerics::{bisect_expanding, ROOT_TOL};

/// Planner's optimum together with the implementing fiscal instrument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlannerAllocation {
    /// Socially optimal cumulative entry mass (trial draws).
    pub entry_mass_sp: f64,
    /// Socially optimal survival cutoff.
    pub cutoff_sp: f64,
    /// Fixed-cost subsidy (positive) or tax (negative) implementing the
    /// allocation in the market; always below 1.
    pub subsidy_theta: f64,
    /// Real output at the planner optimum.
    pub objective_y: f64,
    /// True when the interior entry condition called for negative entry and
    /// was clamped to zero.
    pub entry_clamped: bool,
}

/// Verify that the expected relative market share of survivors,
/// `E[(z/cutoff)^(sigma-1) | z >= cutoff]`, is non-increasing in the cutoff.
///
/// All planner first-order conditions below rely on this monotonicity (it is
/// what makes the cutoff conditions single-crossing); it holds for Pareto,
/// exponential, and most standard entrant laws. Checked on a geometric grid
/// spanning a 64-fold range above the support.
pub fn assumption_share_monotone<D: EntrantDist>(dist: &D, sigma: f64) -> Result<()> {
    let mut prev = f64::INFINITY;
    for step in 0..=24 {
        let z = dist.z_min() * 2f64.powf(step as f64 / 4.0);
        let share = dist.conditional_relative_share(z, sigma)?;
        if share > prev * (1.0 + 1e-12) {
            return Err(ModelError::Infeasible(format!(
                "conditional relative share increases at cutoff {z}: {share} > {prev}"
            )));
        }
        prev = share;
    }
    Ok(())
}

/// Planner's steady-state survival cutoff when active firms are (or will be)
/// a truncation of the entrant law.
///
/// Solves the first-order condition
/// `f_e/(f_c p_E(z) + f_e) * (sigma-1) q = 1 - 1/share(z)`,
/// where `share(z)` is the conditional relative market share of survivors.
/// The left side is the entry-cost saving from admitting the marginal firm,
/// the right side its output contribution shortfall. Clamped to the support
/// when even the lowest draw is worth keeping; decreasing in `q`.
pub fn planner_cutoff_no_incumbents<D: EntrantDist>(
    params: &ModelParams,
    dist: &D,
) -> Result<f64> {
    assumption_share_monotone(dist, params.sigma)?;
    let p = params.sigma - 1.0;
    let residual = |z: f64| -> f64 {
        let share = match dist.conditional_relative_share(z, params.sigma) {
            Ok(s) => s,
            Err(_) => return f64::NAN,
        };
        params.f_e * p * params.q / (params.f_c * dist.survival_prob(z) + params.f_e)
            - (1.0 - 1.0 / share)
    };
    let z_min = dist.z_min();
    if residual(z_min) >= 0.0 {
        return Ok(z_min);
    }
    bisect_expanding(residual, z_min, 2.0 * z_min)
}

/// Planner's steady-state cumulative entry given incumbent firms that are
/// proportional to a truncation of the entrant law.
///
/// Returns `(entry, clamped)`; the interior expression is
/// `E = (L - M_inc f_c) q / (f_c p_E(z)(1+q) + f_e)
///    - (Z_inc / I_E(z)) (f_c p_E(z) + f_e) / (f_c p_E(z)(1+q) + f_e)`
/// at the steady-state cutoff `z`, with `M_inc`, `Z_inc` the incumbent mass
/// and market intensity. Negative values are clamped to zero with a flag.
/// Increasing in `q`; weakly decreasing in the incumbent mass.
pub fn planner_entry<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
) -> Result<(f64, bool)> {
    let dist = &incumbents.dist;
    let z = planner_cutoff_no_incumbents(params, dist)?;
    let p = params.sigma - 1.0;
    let p_e = dist.survival_prob(z);
    let i_e = dist.partial_power_moment(z, p)?;
    let truncated = incumbents.truncate(z);
    let m_inc = truncated.mass();
    let z_inc = truncated.market_intensity(params.sigma)?;
    let denom = params.f_c * p_e * (1.0 + params.q) + params.f_e;
    let entry = (params.labor_endowment_l - m_inc * params.f_c) * params.q / denom
        - (z_inc / i_e) * (params.f_c * p_e + params.f_e) / denom;
    if entry < 0.0 {
        Ok((0.0, true))
    } else {
        Ok((entry, false))
    }
}

/// Planner's crisis cutoff when entry is shut down and incumbents are a
/// truncation of the entrant law with trial mass `trial_mass` at `z0`.
///
/// Solves
/// `f_c M(z) = (L - f_c M(z))/(sigma-1) * ([q(sigma-1)-1] + 1/share(z))`
/// with surviving mass `M(z) = trial_mass * p_E(z)`: the fixed-cost labor
/// released by cutting the marginal firm must equal its marginal output
/// value. Errors with `RegimeMismatch` when the root lies below `z0`, i.e.
/// when entry, not exit, is the planner's active margin.
pub fn planner_exit_cutoff<D: EntrantDist>(
    params: &ModelParams,
    dist: &D,
    trial_mass: f64,
    z0: f64,
) -> Result<f64> {
    assumption_share_monotone(dist, params.sigma)?;
    let p = params.sigma - 1.0;
    let l_bar = params.labor_endowment_l;
    let residual = |z: f64| -> f64 {
        let share = match dist.conditional_relative_share(z, params.sigma) {
            Ok(s) => s,
            Err(_) => return f64::NAN,
        };
        let bracket = params.q * p - 1.0 + 1.0 / share;
        let mass = trial_mass * dist.survival_prob(z);
        params.f_c * mass - (l_bar - params.f_c * mass) / p * bracket
    };
    // With weak love-of-variety the bracket can turn non-positive, in which
    // case shrinking the firm count raises output without bound and no
    // interior optimum exists.
    let share0 = dist.conditional_relative_share(z0, params.sigma)?;
    if params.q * p - 1.0 + 1.0 / share0 <= 0.0 {
        return Err(ModelError::Infeasible(format!(
            "no interior exit optimum: q={} is too low for this entrant law",
            params.q
        )));
    }
    if residual(z0) < -ROOT_TOL {
        return Err(ModelError::RegimeMismatch(format!(
            "planner exit cutoff lies below the incumbent truncation {z0}; \
             the entry margin is active instead"
        )));
    }
    if residual(z0) <= ROOT_TOL {
        return Ok(z0);
    }
    bisect_expanding(residual, z0, 2.0 * z0)
}

/// The fixed-cost subsidy/tax that decentralizes the planner cutoff
/// `cutoff_sp` (and, in a state of entry, the planner entry mass).
///
/// `1 - theta = [1 + (q(sigma-1) - 1) * share(cutoff_sp)]^(-1)` with
/// `share` the conditional relative market share of survivors. Derived by
/// evaluating the market zero-profit condition at the planner cutoff with
/// firms paying `f_c (1-theta)`; the same wedge aligns the free-entry margin.
/// Sign matches `q - 1/(sigma-1)`: subsidy above the CES knife-edge, tax
/// below it.
pub fn optimal_subsidy<D: EntrantDist>(
    params: &ModelParams,
    dist: &D,
    cutoff_sp: f64,
) -> Result<f64> {
    let p = params.sigma - 1.0;
    let share = dist.conditional_relative_share(cutoff_sp, params.sigma)?;
    let denom = 1.0 + (params.q * p - 1.0) * share;
    if denom <= 0.0 {
        return Err(ModelError::Infeasible(format!(
            "no decentralizing fixed-cost wedge exists: q={} is too low",
            params.q
        )));
    }
    Ok(1.0 - 1.0 / denom)
}

/// Full planner optimum in a state of entry, with the implementing subsidy
/// and the realized objective.
pub fn planner_allocation<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
) -> Result<PlannerAllocation> {
    let dist = &incumbents.dist;
    let cutoff = planner_cutoff_no_incumbents(params, dist)?;
    let (entry, clamped) = planner_entry(params, incumbents)?;
    let theta = optimal_subsidy(params, dist, cutoff)?;
    let mut fd = incumbents.truncate(cutoff);
    if entry > 0.0 {
        fd = fd.merge(Cohort::new(entry, cutoff)?)?;
    }
    let mass = fd.mass();
    let intensity = fd.market_intensity(params.sigma)?;
    // The planner pays entry costs out of current labor.
    let labor_production =
        params.labor_endowment_l - params.f_e * entry - params.f_c * mass;
    if labor_production <= 0.0 {
        return Err(ModelError::Infeasible(format!(
            "planner allocation leaves no production labor ({labor_production})"
        )));
    }
    let objective_y = output(params, mass, labor_production, intensity);
    Ok(PlannerAllocation {
        entry_mass_sp: entry,
        cutoff_sp: cutoff,
        subsidy_theta: theta,
        objective_y,
        entry_clamped: clamped,
    })
}

/// Market steady state when firms pay `f_c (1 - theta)` while the subsidy is
/// financed lump-sum, so labor clearing still charges the physical cost
/// `f_c` per firm: `(sigma-1)/sigma R = L - M f_c`.
///
/// With `theta = 0` this coincides with the plain long-run market solver.
pub fn decentralized_steady<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
    theta: f64,
) -> Result<EquilibriumState<D>> {
    let sigma = params.sigma;
    let p = sigma - 1.0;
    let f_c = params.f_c;
    let cost_eff = (1.0 - theta) * f_c;
    if cost_eff <= 0.0 {
        return Err(ModelError::NonPositiveCost(cost_eff));
    }
    let l_bar = params.labor_endowment_l;
    let cost_params = ModelParams { f_c: cost_eff, ..*params };
    let z = solve_cutoff_entry(&cost_params, &incumbents.dist)?;
    let i_e = incumbents.dist.partial_power_moment(z, p)?;
    let p_e = incumbents.dist.survival_prob(z);
    let truncated = incumbents.truncate(z);
    let m_inc = truncated.mass();
    let z_inc = truncated.market_intensity(sigma)?;
    // Zero profit at the cutoff prices revenue as
    // R = sigma * cost_eff * Z / z^(sigma-1); labor clearing with the
    // physical cost then pins entry linearly.
    let zpow = z.powf(p);
    let numer = l_bar - m_inc * f_c - p * cost_eff * z_inc / zpow;
    let denom = f_c * p_e + p * cost_eff * i_e / zpow;
    let entry = numer / denom;
    if entry > 1e-9 {
        let intensity = z_inc + entry * i_e;
        let revenue = sigma * cost_eff * intensity / zpow;
        let fd = truncated.merge(Cohort::new(entry, z)?)?;
        let mass = fd.mass();
        let intensity = fd.market_intensity(sigma)?;
        let labor_production = p / sigma * revenue;
        let out = output(params, mass, labor_production, intensity);
        return Ok(EquilibriumState {
            cutoff: z,
            entry_mass: entry,
            distribution: fd,
            mass,
            intensity,
            labor_production,
            revenue,
            output: out,
            price_index: revenue / out,
            regime: Regime::Entry,
        });
    }
    // No-entry branch: the marginal incumbent's subsidized profit is zero.
    let lo = incumbents.min_cutoff().ok_or(ModelError::EmptyEconomy)?;
    let residual = |zc: f64| -> f64 {
        let t = incumbents.truncate(zc);
        let zi = t.market_intensity(sigma).unwrap_or(f64::INFINITY);
        if zi <= 0.0 {
            return f64::INFINITY;
        }
        let revenue = sigma / p * (l_bar - t.mass() * f_c);
        (revenue / sigma) * zc.powf(p) / zi - cost_eff
    };
    let zc = if residual(lo) >= -ROOT_TOL {
        lo
    } else {
        bisect_expanding(residual, lo, 2.0 * lo)?
    };
    let fd = incumbents.truncate(zc);
    let mass = fd.mass();
    let intensity = fd.market_intensity(sigma)?;
    let revenue = sigma / p * (l_bar - mass * f_c);
    let labor_production = p / sigma * revenue;
    let out = output(params, mass, labor_production, intensity);
    Ok(EquilibriumState {
        cutoff: zc,
        entry_mass: 0.0,
        distribution: fd,
        mass,
        intensity,
        labor_production,
        revenue,
        output: out,
        price_index: revenue / out,
        regime: Regime::NoEntry,
    })
}

/// Optimal fixed-cost policy over a three-phase cost cycle
/// `f_low -> f_high -> f_low`: the subsidy implementing the planner optimum
/// of each phase, evaluated at that phase's planner cutoff.
///
/// The magnitudes are weakly counter-cyclical: `|theta2| >= |theta1|` and
/// `|theta2| >= |theta3|`. For entrant laws with a cutoff-invariant
/// conditional share (Pareto) all three coincide exactly.
pub fn cycle_policy_path<D: EntrantDist + Clone>(
    params: &ModelParams,
    dist: &D,
    f_low: f64,
    f_high: f64,
) -> Result<(f64, f64, f64)> {
    if f_low <= 0.0 || f_high < f_low {
        return Err(ModelError::DomainError(format!(
            "cycle needs 0 < f_low <= f_high, got ({f_low}, {f_high})"
        )));
    }
    let calm = ModelParams { f_c: f_low, ..*params };
    let crisis = ModelParams { f_c: f_high, ..*params };
    let z1 = planner_cutoff_no_incumbents(&calm, dist)?;
    let theta1 = optimal_subsidy(&calm, dist, z1)?;
    let empty = FirmDistribution::empty(dist.clone());
    let (e1, _) = planner_entry(&calm, &empty)?;
    let z2 = if f_high > f_low {
        planner_exit_cutoff(&crisis, dist, e1, z1)?
    } else {
        z1
    };
    let theta2 = optimal_subsidy(&crisis, dist, z2)?;
    // Entry resumes in phase 3 and the steady-state cutoff condition does not
    // depend on the surviving incumbent stock.
    let theta3 = theta1;
    debug_assert!(theta2.abs() >= theta1.abs() - 1e-12);
    debug_assert!(theta2.abs() >= theta3.abs() - 1e-12);
    Ok((theta1, theta2, theta3))
}
