//! Sturm-sequence bisection eigensolver for symmetric tridiagonal matrices.
//!
//! Bisection is the only algorithm here on purpose: the spectra we need are
//! always the part below a threshold, the counts must be certified for
//! inequality checking, and independent brackets bisect concurrently.
//!
//! The count uses the LDLᵀ pivots of T − xI,
//!
//! ```text
//! d_1 = a_1 − x,   d_i = a_i − x − b_{i-1}² / d_{i-1},
//! ```
//!
//! whose number of negative entries equals #{λ < x} (Sylvester inertia).
//! Pivots smaller in magnitude than an ulp-scale floor are replaced by the
//! negative floor, the standard robustness fix that keeps counts consistent
//! through exact ties.

use crate::discretize::SymTridiagonal;

/// Absolute bracket width for eigenvalues extracted below threshold `x`.
pub fn default_tol(x: f64) -> f64 {
    1e-10 * x.abs().max(1.0)
}

fn pivot_floor(diag: &[f64], offdiag: &[f64]) -> f64 {
    let mut scale = 0.0f64;
    for (i, &a) in diag.iter().enumerate() {
        let mut row = a.abs();
        if i > 0 {
            row += offdiag[i - 1].abs();
        }
        if i < offdiag.len() {
            row += offdiag[i].abs();
        }
        scale = scale.max(row);
    }
    (f64::EPSILON * scale).max(f64::MIN_POSITIVE)
}

fn sturm_count(diag: &[f64], offdiag: &[f64], x: f64, floor: f64) -> usize {
    let mut count = 0;
    let mut prev = 1.0f64;
    for (i, &a) in diag.iter().enumerate() {
        let mut d = a - x;
        if i > 0 {
            let b = offdiag[i - 1];
            d -= b * b / prev;
        }
        if d.abs() < floor {
            d = -floor;
        }
        if d < 0.0 {
            count += 1;
        }
        prev = d;
    }
    count
}

/// Number of eigenvalues of `t` strictly below `x`.
pub fn count_below(t: &SymTridiagonal, x: f64) -> usize {
    let floor = pivot_floor(&t.diag, &t.offdiag);
    sturm_count(&t.diag, &t.offdiag, x, floor)
}

/// Gershgorin interval certainly containing the whole spectrum.
pub fn gershgorin_bounds(t: &SymTridiagonal) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, &a) in t.diag.iter().enumerate() {
        let mut radius = 0.0;
        if i > 0 {
            radius += t.offdiag[i - 1].abs();
        }
        if i < t.offdiag.len() {
            radius += t.offdiag[i].abs();
        }
        lo = lo.min(a - radius);
        hi = hi.max(a + radius);
    }
    (lo, hi)
}

/// The i-th smallest eigenvalue (1-based), bracketed to width `tol`.
///
/// Maintains count(lo) < i ≤ count(hi) and bisects; the result is certified
/// to within tol/2 regardless of clustering.
pub fn eigenvalue_by_index(t: &SymTridiagonal, index: usize, tol: f64) -> f64 {
    assert!(index >= 1 && index <= t.n(), "index {index} out of 1..={}", t.n());
    let floor = pivot_floor(&t.diag, &t.offdiag);
    let (glo, ghi) = gershgorin_bounds(t);
    bisect(&t.diag, &t.offdiag, index, glo, ghi + default_tol(ghi), tol, floor)
}

fn bisect(
    diag: &[f64],
    offdiag: &[f64],
    index: usize,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    floor: f64,
) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket at ulp resolution
        }
        if sturm_count(diag, offdiag, mid, floor) >= index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All eigenvalues strictly below `x`, ascending, each bracketed to `tol`.
/// The length equals `count_below(t, x)`.
pub fn eigenvalues_below(t: &SymTridiagonal, x: f64, tol: f64) -> Vec<f64> {
    assert!(tol > 0.0, "tolerance must be positive");
    let floor = pivot_floor(&t.diag, &t.offdiag);
    let k = sturm_count(&t.diag, &t.offdiag, x, floor);
    let (glo, _) = gershgorin_bounds(t);
    let mut out = Vec::with_capacity(k);
    for i in 1..=k {
        // count(x) ≥ i, so x is a valid upper bracket for λ_i.
        out.push(bisect(&t.diag, &t.offdiag, i, glo, x, tol, floor));
    }
    out
}

/// Smallest eigenvalue, bisected between the Gershgorin bounds.
///
/// The Gershgorin interval of a fine-grid discretization spans many orders
/// of magnitude, so the stop rule is relative to the shrinking bracket
/// rather than to the initial interval.
pub fn ground_state(t: &SymTridiagonal) -> f64 {
    let floor = pivot_floor(&t.diag, &t.offdiag);
    let (mut lo, mut hi) = gershgorin_bounds(t);
    hi += 1e-12 * hi.abs().max(1.0);
    while hi - lo > 1e-13 * lo.abs().max(hi.abs()).max(1e-300) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(&t.diag, &t.offdiag, mid, floor) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
