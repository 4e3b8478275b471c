//! Static one-shot equilibrium solvers.
//!
//! Partial equilibrium (PE) takes nominal industry expenditure `I` as given;
//! general equilibrium (GE) clears the labor market at a fixed endowment.
//! Both share the same two-regime structure: if prospective entrants expect
//! profits above the entry cost, entry pins the cutoff (free entry); if the
//! incumbent stock already oversupplies the market, entry is zero and the
//! marginal exiting incumbent pins the cutoff (zero-profit condition).
//!
//! The free-entry cutoff never depends on the incumbent distribution — any
//! incumbent oversupply simply crowds out entrants one for one.

use serde::{Deserialize, Serialize};

use crate::cycle_analysis::output;
use crate::distributions::{EntrantDist, ModelParams};
use crate::error::{ModelError, Result};
use crate::firm_distribution::{Cohort, FirmDistribution};
use crate::numerics::{bisect_expanding, ROOT_TOL};

/// Which margin pins the productivity cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Positive entry; free-entry condition holds with equality.
    Entry,
    /// No entry; the marginal exiting firm is an incumbent.
    NoEntry,
}

/// One period's solved allocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumState<D> {
    pub cutoff: f64,
    pub entry_mass: f64,
    /// Post-entry/exit firm distribution.
    pub distribution: FirmDistribution<D>,
    /// Mass of active varieties.
    pub mass: f64,
    /// Market intensity.
    pub intensity: f64,
    /// Production labor.
    pub labor_production: f64,
    /// Nominal revenue (= nominal GDP).
    pub revenue: f64,
    /// Real aggregate output.
    pub output: f64,
    /// Price index, revenue per unit of output.
    pub price_index: f64,
    pub regime: Regime,
}

/// Entry indifference threshold: entry masses within this absolute tolerance
/// of zero are tie-broken to the no-entry regime (entrants are indifferent,
/// which occurs structurally for Pareto laws in crisis phases).
const ENTRY_TIE_TOL: f64 = 1e-9;

/// Solve the free-entry cutoff: the productivity at which expected entrant
/// profits net of the operating cost just cover the entry cost,
/// `f_e / f_c = ∫_z [(x/z)^(sigma-1) - 1] dμ(x)`, clamped to the support.
///
/// Independent of the incumbent distribution.
pub fn solve_cutoff_entry<D: EntrantDist>(params: &ModelParams, dist: &D) -> Result<f64> {
    let ratio = params.f_e / params.f_c;
    if let Some(z) = dist.free_entry_cutoff(params.sigma, ratio) {
        return Ok(z);
    }
    let p = params.sigma - 1.0;
    let excess = |z: f64| -> f64 {
        // ∫_z [(x/z)^(sigma-1) - 1] dμ = I_E(z)/z^(sigma-1) - p_E(z),
        // strictly decreasing in z.
        let moment = dist.partial_power_moment(z, p).unwrap_or(f64::INFINITY);
        moment / z.powf(p) - dist.survival_prob(z) - ratio
    };
    let z_min = dist.z_min();
    if excess(z_min) <= 0.0 {
        // Entry is so cheap that even the lowest draw is worth keeping.
        return Ok(z_min);
    }
    bisect_expanding(excess, z_min, 2.0 * z_min)
}

/// Cutoff at which the marginal incumbent earns zero profit given spending
/// level `spending` and per-period fixed cost `f`, with the distribution
/// truncated at the cutoff itself: `(spending/sigma) z^(sigma-1) / Z(z) = f`.
///
/// Returns the lowest existing truncation point if no incumbent needs to
/// exit. The left side is strictly increasing in the cutoff.
fn zpc_cutoff<D: EntrantDist + Clone>(
    incumbents: &FirmDistribution<D>,
    sigma: f64,
    spending: f64,
    f: f64,
) -> Result<f64> {
    let lo = incumbents.min_cutoff().ok_or(ModelError::EmptyEconomy)?;
    let residual = |z: f64| -> f64 {
        let zi = incumbents
            .truncate(z)
            .market_intensity(sigma)
            .unwrap_or(f64::INFINITY);
        if zi <= 0.0 {
            return f64::INFINITY;
        }
        (spending / sigma) * z.powf(sigma - 1.0) / zi - f
    };
    if residual(lo) >= -ROOT_TOL {
        return Ok(lo);
    }
    bisect_expanding(residual, lo, 2.0 * lo)
}

fn assemble<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
    cutoff: f64,
    entry: f64,
    revenue: f64,
    regime: Regime,
) -> Result<EquilibriumState<D>> {
    let mut fd = incumbents.truncate(cutoff);
    if entry > 0.0 {
        fd = fd.merge(Cohort::new(entry, cutoff)?)?;
    }
    let mass = fd.mass();
    let intensity = fd.market_intensity(params.sigma)?;
    let labor_production = (params.sigma - 1.0) / params.sigma * revenue;
    let out = output(params, mass, labor_production, intensity);
    let price_index = if out > 0.0 { revenue / out } else { f64::NAN };
    Ok(EquilibriumState {
        cutoff,
        entry_mass: entry,
        distribution: fd,
        mass,
        intensity,
        labor_production,
        revenue,
        output: out,
        price_index,
        regime,
    })
}

/// Partial-equilibrium solve at nominal industry expenditure
/// `params.market_size_i`.
///
/// Attempts the entry regime first: with the free-entry cutoff `z`, the
/// entry mass is
/// `E = (I/(sigma f_c)) z^(sigma-1) / I_E(z) - Z_incumbent(z) / I_E(z)`.
/// A negative (or indifferent) `E` switches to the no-entry branch, where the
/// cutoff is the zero-profit root against the truncated incumbents.
pub fn solve_pe<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
) -> Result<EquilibriumState<D>> {
    solve_pe_at_cost(params, incumbents, params.f_c)
}

/// PE solve with the cutoff-relevant per-period cost overridden to
/// `f_cut` while spending-side accounting still uses `params`. The static
/// model sets `f_cut = f_c`; the forward-looking quantitative model passes
/// the annuitized net-present-value cost instead.
pub fn solve_pe_at_cost<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
    f_cut: f64,
) -> Result<EquilibriumState<D>> {
    let sigma = params.sigma;
    let spend = params.market_size_i;
    let cost_params = ModelParams { f_c: f_cut, ..*params };
    let z = solve_cutoff_entry(&cost_params, &incumbents.dist)?;
    let p = sigma - 1.0;
    let i_e = incumbents.dist.partial_power_moment(z, p)?;
    let z_inc = incumbents.truncate(z).market_intensity(sigma)?;
    let entry = (spend / (sigma * f_cut)) * z.powf(p) / i_e - z_inc / i_e;
    if entry > ENTRY_TIE_TOL {
        assemble(params, incumbents, z, entry, spend, Regime::Entry)
    } else {
        let z = zpc_cutoff(incumbents, sigma, spend, f_cut)?;
        assemble(params, incumbents, z, 0.0, spend, Regime::NoEntry)
    }
}

/// Long-run general-equilibrium steady state at labor endowment
/// `params.labor_endowment_l`.
///
/// Entry regime: the free-entry cutoff plus labor clearing
/// `R = sigma/(sigma-1) (L - M f_c)` and the zero-profit condition pin entry
/// linearly. Labor clearing here excludes entry costs: the entry burst is a
/// transitional expense, and excluding it makes nominal GDP satisfy
/// `R = sigma/(sigma-1) (L - M f_c)` exactly across cycle phases.
pub fn solve_ge_steady<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
) -> Result<EquilibriumState<D>> {
    let sigma = params.sigma;
    let f_c = params.f_c;
    let l_bar = params.labor_endowment_l;
    let z = solve_cutoff_entry(params, &incumbents.dist)?;
    let p = sigma - 1.0;
    let i_e = incumbents.dist.partial_power_moment(z, p)?;
    let p_e = incumbents.dist.survival_prob(z);
    let truncated = incumbents.truncate(z);
    let m_inc = truncated.mass();
    let z_inc = truncated.market_intensity(sigma)?;
    // Substituting R = sigma f_c Z / z^(sigma-1) (zero-profit condition)
    // into R = sigma/(sigma-1) (L - M f_c) and splitting M, Z into incumbent
    // and entrant parts leaves one linear equation in the entry mass.
    let zpow = z.powf(p);
    let numer = (l_bar - m_inc * f_c) / (sigma - 1.0) - f_c * z_inc / zpow;
    let denom = f_c * p_e / (sigma - 1.0) + f_c * i_e / zpow;
    let entry = numer / denom;
    if entry > ENTRY_TIE_TOL {
        let intensity = z_inc + entry * i_e;
        let revenue = sigma * f_c * intensity / zpow;
        return assemble(params, incumbents, z, entry, revenue, Regime::Entry);
    }
    // No-entry branch: one-dimensional root in the cutoff with revenue tied
    // to the surviving mass through labor clearing.
    let lo = incumbents.min_cutoff().ok_or(ModelError::EmptyEconomy)?;
    let residual = |zc: f64| -> f64 {
        let t = incumbents.truncate(zc);
        let zi = t.market_intensity(sigma).unwrap_or(f64::INFINITY);
        if zi <= 0.0 {
            return f64::INFINITY;
        }
        let revenue = sigma / (sigma - 1.0) * (l_bar - t.mass() * f_c);
        (revenue / sigma) * zc.powf(p) / zi - f_c
    };
    let zc = if residual(lo) >= -ROOT_TOL {
        lo
    } else {
        bisect_expanding(residual, lo, 2.0 * lo)?
    };
    let t = incumbents.truncate(zc);
    let revenue = sigma / (sigma - 1.0) * (l_bar - t.mass() * f_c);
    assemble(params, incumbents, zc, 0.0, revenue, Regime::NoEntry)
}

/// Iterative entry-game oracle for the PE solver.
///
/// Repeatedly admits entrant batches of size `batch_size` while a
/// prospective entrant's expected profit exceeds the entry cost; after every
/// batch, unprofitable firms exit. The limit point as the batch shrinks is
/// the simultaneous solution of [`solve_pe`].
pub fn iterative_entry_oracle<D: EntrantDist + Clone>(
    params: &ModelParams,
    incumbents: &FirmDistribution<D>,
    batch_size: f64,
) -> Result<EquilibriumState<D>> {
    const BATCH_CAP: usize = 1_000_000;
    let sigma = params.sigma;
    let spend = params.market_size_i;
    let p = sigma - 1.0;
    // Exit stage followed by the expected profit of one more prospective
    // entrant: draws below the cutoff exit immediately and earn zero.
    let settle = |fd: &FirmDistribution<D>| -> Result<(FirmDistribution<D>, f64, f64)> {
        let cutoff = if fd.is_empty() {
            fd.dist.z_min()
        } else {
            zpc_cutoff(fd, sigma, spend, params.f_c)?
        };
        let fd = fd.truncate(cutoff);
        let intensity = fd.market_intensity(sigma)?;
        let expected = if intensity <= 0.0 {
            f64::INFINITY
        } else {
            (spend / sigma) * fd.dist.partial_power_moment(cutoff, p)? / intensity
                - params.f_c * fd.dist.survival_prob(cutoff)
        };
        Ok((fd, cutoff, expected))
    };
    let mut fd = incumbents.clone();
    let mut total_entry = 0.0;
    for _ in 0..=BATCH_CAP {
        let (settled, cutoff, expected) = settle(&fd)?;
        fd = settled;
        if expected <= params.f_e {
            let regime = if total_entry > 0.0 { Regime::Entry } else { Regime::NoEntry };
            let mut state = assemble(params, &fd, cutoff, 0.0, spend, regime)?;
            state.entry_mass = total_entry;
            return Ok(state);
        }
        // Would a full batch overshoot entrant indifference? If so, admit
        // only the fractional batch that restores equality — the game's
        // limit point is then reached exactly instead of to O(batch).
        let after_full = fd.merge(Cohort::new(batch_size, cutoff)?)?;
        if settle(&after_full)?.2 >= params.f_e {
            fd = after_full;
            total_entry += batch_size;
            continue;
        }
        let gap = |x: f64| -> f64 {
            let trial = fd.merge(Cohort::new(x, cutoff).unwrap()).unwrap();
            match settle(&trial) {
                Ok((_, _, e)) => e - params.f_e,
                Err(_) => f64::NAN,
            }
        };
        let x = crate::numerics::bisect(gap, 0.0, batch_size)?;
        fd = fd.merge(Cohort::new(x, cutoff)?)?;
        total_entry += x;
    }
    Err(ModelError::IterationCap(BATCH_CAP))
}
