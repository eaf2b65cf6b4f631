//! Evaluation of J_m and its positive zeros, independent of the solver.
//!
//! Two evaluation routes: the ascending power series where it is free of
//! cancellation (x ≤ 12 in double precision) and the normalized downward
//! recurrence (Miller's algorithm) above that, using J_0 + 2Σ J_{2k} = 1.
//! Zeros come from a sign-change scan with step 0.25 — consecutive zeros of
//! J_m are more than 3 apart — followed by bisection to 1e−12.

/// Largest x where the ascending series keeps ~10⁻¹⁵ absolute accuracy.
pub(crate) const SERIES_LIMIT: f64 = 12.0;

const ZERO_TOL: f64 = 1e-12;

/// J_m(x) for integer m ≥ 0 and x ≥ 0.
pub(crate) fn bessel_j(m: u32, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT {
        series(m, x)
    } else {
        miller(m, x)
    }
}

/// Ascending series Σ (−1)^j (x/2)^{2j+m} / (j! (j+m)!).
pub(crate) fn series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    let q = half * half;
    let mut sum = term;
    for j in 1..200 {
        let jf = j as f64;
        term *= -q / (jf * (jf + m as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) && jf > half {
            break;
        }
    }
    sum
}

/// Miller's normalized downward recurrence.
fn miller(m: u32, x: f64) -> f64 {
    let base = x.max(m as f64).ceil();
    let start = (base + 20.0 + (40.0 * base).sqrt()) as i64;
    let mut f_up = 0.0_f64; // J_{n+1} direction
    let mut f = 1e-300_f64; // J_n seed at n = start
    let mut norm = 0.0;
    let mut result = 0.0;
    let mut captured = false;
    let mut n = start;
    loop {
        if n == 0 {
            norm += f;
        } else if n % 2 == 0 {
            norm += 2.0 * f;
        }
        if n as u32 == m {
            result = f;
            captured = true;
        }
        if n == 0 {
            break;
        }
        let f_down = (2.0 * n as f64 / x) * f - f_up;
        f_up = f;
        f = f_down;
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_up *= 1e-250;
            norm *= 1e-250;
            if captured {
                result *= 1e-250;
            }
        }
        n -= 1;
    }
    result / norm
}

/// The first `count` positive zeros of J_m, or fewer if `x_max` is reached
/// first. Scan starts below the first zero (j_{m,1} > m always holds).
pub(crate) fn zeros(m: u32, count: usize, x_max: f64) -> Vec<f64> {
    let mut found = Vec::with_capacity(count);
    let step = 0.25;
    let mut x = if m == 0 { 0.5 } else { m as f64 };
    let mut fx = bessel_j(m, x);
    while found.len() < count && x < x_max + 1.0 {
        let x_next = x + step;
        let fx_next = bessel_j(m, x_next);
        if fx == 0.0 {
            found.push(x);
        } else if fx.signum() != fx_next.signum() && fx_next != 0.0 {
            found.push(bisect_zero(m, x, fx, x_next));
        }
        x = x_next;
        fx = fx_next;
    }
    found
}

fn bisect_zero(m: u32, mut lo: f64, mut f_lo: f64, mut hi: f64) -> f64 {
    while hi - lo > ZERO_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = bessel_j(m, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_argument_values() {
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
        // J_0(1) and J_1(1) reference values (Abramowitz & Stegun 9.4).
        assert!((bessel_j(0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-14);
        assert!((bessel_j(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-14);
    }

    #[test]
    fn series_and_recurrence_agree_on_overlap() {
        for m in 0..=20u32 {
            for i in 0..=16 {
                let x = 8.0 + 0.25 * i as f64;
                let a = series(m, x);
                let b = miller(m, x);
                assert!(
                    (a - b).abs() < 1e-12,
                    "m = {m}, x = {x}: series {a} vs recurrence {b}"
                );
            }
        }
    }

    #[test]
    fn large_argument_asymptotics() {
        // J_m(x) ≈ √(2/(πx)) cos(x − mπ/2 − π/4) for large x.
        for &(m, x) in &[(0u32, 50.0f64), (5, 120.0), (20, 180.0)] {
            let approx = (2.0 / (std::f64::consts::PI * x)).sqrt()
                * (x - m as f64 * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4).cos();
            let v = bessel_j(m, x);
            assert!(
                (v - approx).abs() < 2.0 / x,
                "m = {m}, x = {x}: {v} vs asymptotic {approx}"
            );
        }
    }

    #[test]
    fn zero_scan_finds_known_zeros() {
        let z = zeros(0, 3, f64::INFINITY);
        assert!((z[0] - 2.404825557695773).abs() < 1e-10);
        assert!((z[1] - 5.520078110286311).abs() < 1e-10);
        assert!((z[2] - 8.653727912911013).abs() < 1e-10);
    }
}
