//! Small numerical kernels: bracketed root finding and bounded scalar
//! maximization. All solvers are deterministic and allocation-free.

use crate::error::{ModelError, Result};

/// Absolute residual tolerance used by the equilibrium solvers.
pub const ROOT_TOL: f64 = 1e-12;
/// Iteration cap for bracketed searches.
pub const MAX_ITER: usize = 200;

/// Find a root of `f` in `[lo, hi]` by bisection.
///
/// Requires a sign change over the bracket. Converges to `ROOT_TOL` on the
/// bracket width or on `|f|`, whichever comes first.
///
/// ```
/// use firmcycle::numerics::bisect;
/// let r = bisect(|x| x * x - 2.0, 0.0, 2.0).unwrap();
/// assert!((r - 2f64.sqrt()).abs() < 1e-10);
/// ```
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(ModelError::NoRoot(format!(
            "no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )));
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid.abs() < ROOT_TOL || (hi - lo) < ROOT_TOL * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Expand `hi` geometrically until `f` changes sign, then bisect.
///
/// `lo` is kept fixed; the caller guarantees the root (if any) lies above it.
pub fn bisect_expanding<F: Fn(f64) -> f64>(f: F, lo: f64, hi0: f64) -> Result<f64> {
    let flo = f(lo);
    let mut hi = hi0;
    for _ in 0..MAX_ITER {
        if f(hi).signum() != flo.signum() || f(hi) == 0.0 {
            return bisect(f, lo, hi);
        }
        hi *= 2.0;
    }
    Err(ModelError::NonConvergence(format!(
        "bracket expansion from [{lo}, {hi0}] found no sign change"
    )))
}

/// Maximize a unimodal function on `[lo, hi]` by golden-section search.
///
/// Returns the argmax. Objective tolerance is taken on the interval width.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    const INVPHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a) > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Ordinary least squares without intercept restriction: fits
/// `y = a + b x` and returns `(a, b, r_squared)`.
///
/// Closed-form two-variable least squares; deterministic and dependency-free.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (a, b, r2)
}
