//! Adaptive Simpson quadrature.
//!
//! Standard recursive bisection with the 15× error rule. The caller supplies
//! a relative tolerance; an initial coarse pass sets the absolute budget.
//! Integrands with an integrable endpoint singularity are expected to be
//! regularized by substitution before they reach this module (see
//! `field::flux_in_quadrature`); a genuinely divergent integrand exhausts the
//! recursion depth and is reported as non-convergent.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 60;

/// ∫_a^b f(x) dx to relative tolerance `rel_tol`, b ≥ a.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson_step(&f, a, fa, b, fb);
    // One refinement to estimate the magnitude before fixing the budget.
    let (_, _, left) = simpson_step(&f, a, fa, m, fm);
    let (_, _, right) = simpson_step(&f, m, fm, b, fb);
    let scale = (left + right).abs().max(whole.abs()).max(1e-300);
    let eps = scale * rel_tol;
    let v = recurse(&f, a, fa, m, fm, b, fb, whole, eps, MAX_DEPTH)?;
    Ok(v)
}

/// Simpson rule on [a, b]; returns the midpoint, f(midpoint) and the estimate.
fn simpson_step<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> Result<f64> {
    let (lm, flm, left) = simpson_step(f, a, fa, m, fm);
    let (rm, frm, right) = simpson_step(f, m, fm, b, fb);
    let refined = left + right;
    let err = refined - whole;
    if !refined.is_finite() {
        return Err(Error::QuadratureDiverged(format!(
            "non-finite integrand near [{a}, {b}]"
        )));
    }
    if err.abs() <= 15.0 * eps || b - a < 1e-15 * (a.abs() + b.abs() + 1.0) {
        return Ok(refined + err / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureDiverged(format!(
            "refinement depth exhausted on [{a}, {b}] with residual {err:e}"
        )));
    }
    let l = recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1)?;
    let r = recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // Simpson is exact on cubics.
        let v = adaptive_simpson(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - (4.0 - 4.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn smooth_integrand() {
        let v = adaptive_simpson(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn substituted_singularity() {
        // ∫_0^1 cos(x)/√x dx via x = t², integrand 2 cos(t²). Reference value
        // from the alternating series Σ (-1)^k / ((2k)! (2k + 1/2)).
        let mut reference = 0.0;
        let mut fact = 1.0;
        for k in 0..12u32 {
            if k > 0 {
                fact *= (2 * k - 1) as f64 * (2 * k) as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            reference += sign / (fact * (2.0 * k as f64 + 0.5));
        }
        let v = adaptive_simpson(|t| 2.0 * (t * t).cos(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - reference).abs() < 1e-11, "v = {v}, ref = {reference}");
    }

    #[test]
    fn divergent_integral_is_detected() {
        let r = adaptive_simpson(|x| if x == 0.0 { 0.0 } else { 1.0 / x }, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::QuadratureDiverged(_))));
    }

    #[test]
    fn empty_interval() {
        assert_eq!(adaptive_simpson(|x| x, 1.0, 1.0, 1e-10).unwrap(), 0.0);
    }
}
