//! Principal-branch Lambert W on [0, inf) and the peak-location solver for
//! r e^r = n. The two solvers are deliberately independent: one checks the
//! other in the test suites.

use crate::error::{Error, Result};

const W_TOL: f64 = 1e-12;

/// Principal branch W(x) for x >= 0, accurate to |W e^W - x| <= 1e-12 max(1, x).
///
/// f(w) = w e^w - x is convex on w >= 0, so Newton from a point above the
/// root converges monotonically; ln(1 + x) is such a point.
pub fn lambert_w(x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::LambertDomain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = (1.0 + x).ln();
    for _ in 0..200 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= W_TOL * x.max(1.0) {
            return Ok(w);
        }
        w -= f / (ew * (w + 1.0));
    }
    Ok(w)
}

/// Solves r e^r = n by safeguarded Newton and returns e^r - 1, the quantity
/// whose two nearest integers locate the Stirling-row peak.
///
/// The bracket [ln n - ln ln n, ln n] contains the root for n >= 3; smaller
/// arguments fall back to [0, max(1, ln n)].
pub fn stirling_peak_approx_real(n: f64) -> f64 {
    assert!(n >= 2.0, "peak approximation defined for n >= 2");
    let (mut lo, mut hi) = if n >= 3.0 {
        ((n.ln() - n.ln().ln()).max(0.0), n.ln())
    } else {
        (0.0, n.ln().max(1.0))
    };
    let f = |r: f64| r * r.exp() - n;
    // Widen defensively if rounding put the root outside.
    while f(lo) > 0.0 {
        lo *= 0.5;
    }
    while f(hi) < 0.0 {
        hi += 1.0;
    }
    let mut r = 0.5 * (lo + hi);
    for _ in 0..200 {
        let er = r.exp();
        let fr = r * er - n;
        if fr.abs() <= 1e-12 * n.max(1.0) && (hi - lo) <= 1e-12 * r.abs().max(1.0) {
            break;
        }
        if fr > 0.0 {
            hi = r;
        } else {
            lo = r;
        }
        let step = fr / (er * (r + 1.0));
        let newton = r - step;
        r = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
    }
    r.exp() - 1.0
}

/// Integer-argument convenience wrapper.
pub fn stirling_peak_approx(n: usize) -> f64 {
    stirling_peak_approx_real(n as f64)
}

/// (n - 1/2) / W(n - 1/2): the Lambert-form peak approximation.
pub fn peak_approx_lambert(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("peak approximation needs n >= 2".into()));
    }
    let x = n as f64 - 0.5;
    Ok(x / lambert_w(x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    // Slow but simple oracle: bisection on w e^w = x.
    fn lambert_bisect(x: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, x.max(2.0));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid.exp() > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    }

    #[test]
    fn lambert_known_points() {
        assert!((lambert_w(E).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(1.0).unwrap() - 0.5671432904097838).abs() < 1e-12);
        assert!(lambert_w(-0.5).is_err());
    }

    #[test]
    fn lambert_matches_bisection_oracle() {
        for x in [0.1, 1.0, 2.5, 10.0, 99.5, 1234.5] {
            let w = lambert_w(x).unwrap();
            assert!((w - lambert_bisect(x)).abs() < 1e-9, "x={x}");
            assert!((w * w.exp() - x).abs() <= 1e-12 * x.max(1.0));
        }
    }

    #[test]
    fn peak_solver_at_e() {
        // r e^r = e has the root r = 1, so the result is e - 1.
        let v = stirling_peak_approx_real(E);
        assert!((v - (E - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn peak_solver_matches_fixed_point_oracle() {
        // Independent fixed-point iteration r <- ln n - ln r.
        let n: f64 = 50.0;
        let mut r = n.ln();
        for _ in 0..500 {
            r = n.ln() - r.ln();
        }
        let v = stirling_peak_approx_real(n);
        assert!((v - (r.exp() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn lambert_peak_formula() {
        let v = peak_approx_lambert(2).unwrap();
        let w = lambert_w(1.5).unwrap();
        assert!((v - 1.5 / w).abs() < 1e-12);
        // The two approximations track each other: lambert ~ stirling + 1.
        let lam = peak_approx_lambert(200).unwrap();
        let stir = stirling_peak_approx(200);
        assert!((lam - (stir + 1.0)).abs() < 2.0);
    }
}
