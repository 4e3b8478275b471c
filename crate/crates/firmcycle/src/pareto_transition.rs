//! Closed-form transition paths for Pareto entrant laws.
//!
//! When the fixed cost jumps to `phi` times its pre-crisis value and reverts
//! geometrically over `T*` steps (`f_t = phi^(max{0, 1 - t/T*})`, pre-crisis
//! cost normalized to 1), every object along the partial-equilibrium
//! transition has a closed form: a constant flow of entrants during the
//! recovery, a smoothly declining cutoff sequence, and an end-of-crisis firm
//! mass strictly below its pre-crisis value. These formulas serve as
//! independent oracles for the step-by-step equilibrium simulator.
//!
//! The module also provides the general-equilibrium entry-decay coefficients:
//! after a crisis, GE entry shrinks geometrically because each entry cohort
//! absorbs labor that would otherwise support further entry.

use serde::{Deserialize, Serialize};

use crate::distributions::{EntrantDist, ModelParams, ParetoEntrantDist};
use crate::equilibrium::solve_cutoff_entry;
use crate::error::{ModelError, Result};
use crate::firm_distribution::FirmDistribution;

/// Closed-form description of a fixed-cost reversion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReversionPath {
    /// Crisis multiplier on the fixed cost (> 1).
    pub phi: f64,
    /// Number of reversion steps.
    pub t_star: usize,
    /// Entry flow in each recovery step `t = 1..T*` (constant across steps).
    pub entry_flows: Vec<f64>,
    /// Cutoff sequence including the impact cutoff, `t = 0..T*`; strictly
    /// decreasing back to the pre-crisis cutoff.
    pub cutoffs: Vec<f64>,
    /// Mass of active firms at the end of the crisis.
    pub m_final: f64,
    /// Market intensity at the end of the crisis (equals its pre-crisis
    /// value: the free-entry condition pins intensity independently of
    /// history).
    pub z_final: f64,
}

fn check_domain(params: &ModelParams, dist: &ParetoEntrantDist, phi: f64) -> Result<(f64, f64)> {
    let k = dist.shape_k;
    let p = params.sigma - 1.0;
    if k <= p {
        return Err(ModelError::DivergentMoment { exponent: p, shape_k: k });
    }
    if phi < 1.0 {
        return Err(ModelError::DomainError(format!("crisis multiplier must be >= 1, got {phi}")));
    }
    // The formulas are stated at a pre-crisis fixed cost of 1; rescale
    // arbitrary (f_c, f_e, I) into that normalization.
    Ok((params.f_e / params.f_c, params.market_size_i / params.f_c))
}

/// Closed-form partial-equilibrium transition through a fixed-cost crisis of
/// intensity `phi` reverting over `t_star` steps.
pub fn closed_form_transition(
    params: &ModelParams,
    dist: &ParetoEntrantDist,
    phi: f64,
    t_star: usize,
) -> Result<ReversionPath> {
    let (fe, income) = check_domain(params, dist, phi)?;
    if t_star == 0 {
        return Err(ModelError::DomainError("need at least one reversion step".into()));
    }
    let k = dist.shape_k;
    let sigma = params.sigma;
    let p = sigma - 1.0;
    let ts = t_star as f64;

    let entry = income / k * p / sigma / fe * (1.0 - phi.powf((p - k) / k / ts));
    let entry_flows = vec![entry; t_star];

    let cutoffs: Vec<f64> = (0..=t_star)
        .map(|t| {
            let f_t = phi.powf((ts - t as f64) / ts);
            dist.z_min * (f_t / fe * p / (k - p)).powf(1.0 / k)
        })
        .collect();

    let m_pre = income / sigma * (k - p) / k;
    let m_final = if phi == 1.0 {
        m_pre
    } else {
        let ratio = (1.0 - phi.powf(-(k - p) / k / ts)) / (1.0 - phi.powf(-1.0 / ts));
        m_pre * (phi.recip() + (1.0 - phi.recip()) * ratio)
    };

    // Pre-crisis intensity from the zero-profit condition at the free-entry
    // cutoff; conserved through the reversion.
    let z_pre = income / sigma * cutoffs[t_star].powf(p);
    Ok(ReversionPath { phi, t_star, entry_flows, cutoffs, m_final, z_final: z_pre })
}

/// Continuous-reversion limit of the end-of-crisis firm mass: as the number
/// of reversion steps grows, the mass falls monotonically to
/// `M_inf = (I/sigma) ((k-sigma+1)/k) [ (1-1/phi)(k-sigma+1)/k + 1/phi ]`.
pub fn limit_mass(params: &ModelParams, dist: &ParetoEntrantDist, phi: f64) -> Result<f64> {
    let (_, income) = check_domain(params, dist, phi)?;
    let k = dist.shape_k;
    let p = params.sigma - 1.0;
    let m_pre = income / params.sigma * (k - p) / k;
    Ok(m_pre * ((1.0 - phi.recip()) * (k - p) / k + phi.recip()))
}

/// Pointwise factor by which the continuous-reversion limit distribution
/// differs from the pre-crisis distribution:
/// zero below the pre-crisis cutoff, a logarithmic ramp on
/// `[z_pre, z_impact)`, and a constant thickening `1 + ((k-(sigma-1))/k) ln phi`
/// above the impact cutoff (where the density jumps up).
pub fn limit_density_factor(
    params: &ModelParams,
    dist: &ParetoEntrantDist,
    phi: f64,
    z: f64,
) -> Result<f64> {
    let (fe, _) = check_domain(params, dist, phi)?;
    let k = dist.shape_k;
    let p = params.sigma - 1.0;
    let z_pre = dist.z_min * (1.0 / fe * p / (k - p)).powf(1.0 / k);
    let z_impact = z_pre * phi.powf(1.0 / k);
    Ok(if z < z_pre {
        0.0
    } else if z < z_impact {
        (k - p) * (z / z_pre).ln()
    } else {
        1.0 + (k - p) / k * phi.ln()
    })
}

/// Geometric-decay coefficients of post-crisis general-equilibrium entry,
/// `E_t = (1 - b)^(t-1) * A` for `t = 1, 2, ...`:
///
/// ```text
/// A     = [ (Z~/(sigma-1)) (L - M0 f_c)/f_c - Z0~ ]
///         / [ 1 + (Z~/(sigma-1)) (f_e/f_c + p_E(z)) ]
/// 1 - b = (f_e/f_c)
///         / [ f_e/f_c + (share * (sigma-1) + 1) p_E(z) ]
/// ```
///
/// where `z` is the free-entry cutoff, `Z~ = z^(sigma-1) / I_E(z)` is the
/// reciprocal normalized entrant intensity, `Z0~` is the incumbent intensity
/// in the same units, and `share` is the expected relative market share of
/// successful entrants. Decay is faster when entrants out-produce the cutoff
/// firm by more and when the entry success probability `p_E` is higher.
pub fn ge_entry_decay_check<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
) -> Result<(f64, f64)> {
    let sigma = params.sigma;
    let p = sigma - 1.0;
    let z = solve_cutoff_entry(params, &incumbents.dist)?;
    let i_e = incumbents.dist.partial_power_moment(z, p)?;
    let p_e = incumbents.dist.survival_prob(z);
    let truncated = incumbents.truncate(z);
    let m0 = truncated.mass();
    let z_tilde = z.powf(p) / i_e;
    let z0_tilde = truncated.market_intensity(sigma)? / i_e;
    let fe_over_fc = params.f_e / params.f_c;
    let denom = 1.0 + z_tilde / p * (fe_over_fc + p_e);
    if denom == 0.0 {
        return Err(ModelError::DegenerateDenominator);
    }
    let a = (z_tilde / p * (params.labor_endowment_l - m0 * params.f_c) / params.f_c - z0_tilde)
        / denom;
    let share = incumbents.dist.conditional_relative_share(z, sigma)?;
    let one_minus_b = fe_over_fc / (fe_over_fc + (share * p + 1.0) * p_e);
    Ok((a, one_minus_b))
}

/// Period-by-period general-equilibrium entry path: each period entry is set
/// so the marginal firm at the (constant) free-entry cutoff breaks even,
/// with labor clearing that charges the period's entry cost,
/// `R_t = sigma/(sigma-1) (L - M_t f_c - E_t f_e)`.
///
/// Returns the entry flows `E_1..E_periods`; used to verify the geometric
/// law from [`ge_entry_decay_check`].
pub fn simulate_ge_entry<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
    periods: usize,
) -> Result<Vec<f64>> {
    let sigma = params.sigma;
    let p = sigma - 1.0;
    let f_c = params.f_c;
    let z = solve_cutoff_entry(params, &incumbents.dist)?;
    let i_e = incumbents.dist.partial_power_moment(z, p)?;
    let p_e = incumbents.dist.survival_prob(z);
    let truncated = incumbents.truncate(z);
    let mut mass = truncated.mass();
    let mut intensity = truncated.market_intensity(sigma)?;
    let zpow = z.powf(p);
    let mut flows = Vec::with_capacity(periods);
    for _ in 0..periods {
        // Linear in E_t: (1/(sigma-1))(L - (M + E p_E) f_c - E f_e)
        //              = f_c (Z + E I_E) / z^(sigma-1).
        let numer = (params.labor_endowment_l - mass * f_c) / p - f_c * intensity / zpow;
        let denom = (p_e * f_c + params.f_e) / p + f_c * i_e / zpow;
        let entry = (numer / denom).max(0.0);
        flows.push(entry);
        mass += entry * p_e;
        intensity += entry * i_e;
    }
    Ok(flows)
}
