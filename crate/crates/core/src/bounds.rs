//! Closed-form bound ingredients and the five-term right-hand side.
//!
//! The semiclassical constant is
//!
//! ```text
//! L^cl_{σ,d} = Γ(σ+1) / ((4π)^{d/2} Γ(σ+1+d/2))
//! ```
//!
//! and the assembled right-hand side for threshold Λ, exponent σ ≥ 3/2 is
//!
//! ```text
//! ½ tr(Λ−outer)₊^σ + ½ tr(Λ−inner)₊^σ
//!   + (2 L^cl_{σ,1} r0^{2σ+1}/(2σ+1)) [F] Λ^{σ+1/2}
//!   ± ½ tr(Λ−l)₊^σ + ½ tr(Λ−l̃)₊^σ
//! ```
//!
//! with the sign of the l-term (+ for F ∉ ℤ, − for F ∈ ℤ) and [F] the
//! integer part. F = 0 and near-integer flux evaluate both displays: the
//! branches are discontinuous in F, so ambiguity is surfaced, not decided.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldProfile, FluxIntegrality, INTEGER_FLUX_TOL};
use crate::spectral::{self, AuxKind, Trace};
use crate::OperatorKind;

/// Lanczos coefficients for g = 7, accurate to ~15 digits on x > 0.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0 via the fixed-coefficient Lanczos approximation; only the
/// principal branch is needed here, so no reflection formula.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("gamma_fn needs x > 0, got {x}")));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the argument in the fitted range.
        return Ok(gamma_lanczos(x + 1.0) / x);
    }
    Ok(gamma_lanczos(x))
}

fn gamma_lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// L^cl_{σ,d} for d ∈ {1, 2}.
pub fn semiclassical_constant(sigma: f64, d: u8) -> Result<f64> {
    if sigma < 0.0 {
        return Err(Error::Domain(format!("σ must be >= 0, got {sigma}")));
    }
    let d = match d {
        1 => 1.0,
        2 => 2.0,
        other => return Err(Error::Domain(format!("dimension must be 1 or 2, got {other}"))),
    };
    Ok(gamma_fn(sigma + 1.0)?
        / ((4.0 * std::f64::consts::PI).powf(d / 2.0) * gamma_fn(sigma + 1.0 + d / 2.0)?))
}

/// L^cl_{σ,2} · πr0² · Λ^{σ+1}, valid against arbitrary fields for σ ≥ 3/2
/// and constant fields for σ ≥ 1.
pub fn berezin_rhs(sigma: f64, lambda: f64, r0: f64) -> Result<f64> {
    let l = semiclassical_constant(sigma, 2)?;
    Ok(l * std::f64::consts::PI * r0 * r0 * lambda.powf(sigma + 1.0))
}

/// 2(σ/(σ+1))^σ · L^cl_{σ,2} · πr0² · Λ^{σ+1} for 0 ≤ σ < 1 (constant
/// fields); at σ = 0 the prefactor limit (σ/(σ+1))^σ → 1 applies.
pub fn laptev_rhs(sigma: f64, lambda: f64, r0: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&sigma) {
        return Err(Error::Domain(format!(
            "Laptev bound needs 0 <= σ < 1, got {sigma} (use berezin_rhs)"
        )));
    }
    // f64: 0^0 = 1, which is the correct limit at σ = 0.
    let prefactor = 2.0 * (sigma / (sigma + 1.0)).powf(sigma);
    Ok(prefactor * berezin_rhs(sigma, lambda, r0)?)
}

/// Integer part used by the bound assembly: round when the flux sits within
/// the integer tolerance, floor otherwise.
fn int_part(f: f64) -> f64 {
    if (f - f.round()).abs() < INTEGER_FLUX_TOL {
        f.round()
    } else {
        f.floor()
    }
}

/// The middle-mode term (2 L^cl_{σ,1} r0^{2σ+1}/(2σ+1)) [F] Λ^{σ+1/2}.
pub fn middle_term(sigma: f64, lambda: f64, r0: f64, total_flux: f64) -> Result<f64> {
    if lambda < 0.0 || !total_flux.is_finite() || total_flux < 0.0 {
        return Err(Error::Domain(format!(
            "middle_term needs Λ >= 0 and finite F >= 0, got Λ = {lambda}, F = {total_flux}"
        )));
    }
    Ok(middle_unit(sigma, lambda, r0)? * int_part(total_flux))
}

/// The middle term per unit of [F].
fn middle_unit(sigma: f64, lambda: f64, r0: f64) -> Result<f64> {
    let l1 = semiclassical_constant(sigma, 1)?;
    Ok(2.0 * l1 * r0.powf(2.0 * sigma + 1.0) / (2.0 * sigma + 1.0) * lambda.powf(sigma + 0.5))
}

/// Which display of the bound applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    NonIntegerFlux,
    IntegerFlux,
    /// Zero or near-integer flux: both displays are evaluated; the reported
    /// total is the one valid regardless of the true branch (the larger).
    Both,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::NonIntegerFlux => "noninteger",
            Branch::IntegerFlux => "integer",
            Branch::Both => "both",
        })
    }
}

/// Itemized right-hand side of the eigenvalue-moment bound.
#[derive(Debug, Clone, Serialize)]
pub struct BoundBreakdown {
    pub sigma: f64,
    pub lambda: f64,
    pub branch: Branch,
    /// Full traces (not halved); the grid-N/2N values feed the error proxy.
    pub outer: Trace,
    pub inner: Trace,
    pub l: Trace,
    pub ltilde: Trace,
    /// Middle term entering `rhs_total`.
    pub middle: f64,
    pub rhs_total: f64,
    /// The other display's total when `branch == Both`.
    pub middle_alt: Option<f64>,
    pub rhs_total_alt: Option<f64>,
    pub berezin_rhs: f64,
    pub laptev_rhs: Option<f64>,
}

impl BoundBreakdown {
    pub fn outer_half(&self) -> f64 {
        0.5 * self.outer.value
    }

    pub fn inner_half(&self) -> f64 {
        0.5 * self.inner.value
    }

    /// The signed l-term as it enters `rhs_total`.
    pub fn l_half_signed(&self) -> f64 {
        match self.branch {
            Branch::IntegerFlux => -0.5 * self.l.value,
            _ => 0.5 * self.l.value,
        }
    }

    pub fn ltilde_half(&self) -> f64 {
        0.5 * self.ltilde.value
    }

    /// Σ over the four computed traces of ½|value(N) − value(2N)|.
    pub fn rhs_error_proxy(&self) -> f64 {
        0.5 * (self.outer.error_proxy()
            + self.inner.error_proxy()
            + self.l.error_proxy()
            + self.ltilde.error_proxy())
    }
}

/// Assemble the breakdown from already-computed traces.
pub fn assemble_breakdown(
    field: &FieldProfile,
    sigma: f64,
    lambda: f64,
    outer: Trace,
    inner: Trace,
    l: Trace,
    ltilde: Trace,
) -> Result<BoundBreakdown> {
    if sigma < 1.5 {
        return Err(Error::Domain(format!(
            "the bound requires σ >= 3/2, got {sigma}"
        )));
    }
    if lambda < 0.0 {
        return Err(Error::Domain(format!("Λ must be >= 0, got {lambda}")));
    }
    let (f, flag) = field.total_flux()?;
    let r0 = field.r0();
    let unit = middle_unit(sigma, lambda, r0)?;

    let non_integer_total = |middle: f64| {
        0.5 * outer.value + 0.5 * inner.value + middle + 0.5 * l.value + 0.5 * ltilde.value
    };

    let middle_floor = unit * f.floor();
    let middle_round = unit * f.round();
    let ni_total = non_integer_total(middle_floor);
    // The integer display flips the sign of the l-term.
    let int_total = non_integer_total(middle_round) - l.value;

    let branch = match flag {
        FluxIntegrality::Integer if f < INTEGER_FLUX_TOL => Branch::Both,
        FluxIntegrality::Integer => Branch::IntegerFlux,
        FluxIntegrality::NonInteger => Branch::NonIntegerFlux,
        FluxIntegrality::NearBoundaryAmbiguous => Branch::Both,
    };

    let (middle, rhs_total, middle_alt, rhs_total_alt) = match branch {
        Branch::NonIntegerFlux => (middle_floor, ni_total, None, None),
        Branch::IntegerFlux => (middle_round, int_total, None, None),
        Branch::Both => {
            // Whichever display is larger holds regardless of the true branch.
            if ni_total >= int_total {
                (middle_floor, ni_total, Some(middle_round), Some(int_total))
            } else {
                (middle_round, int_total, Some(middle_floor), Some(ni_total))
            }
        }
    };

    Ok(BoundBreakdown {
        sigma,
        lambda,
        branch,
        outer,
        inner,
        l,
        ltilde,
        middle,
        rhs_total,
        middle_alt,
        rhs_total_alt,
        berezin_rhs: berezin_rhs(sigma, lambda, r0)?,
        laptev_rhs: if sigma < 1.0 {
            Some(laptev_rhs(sigma, lambda, r0)?)
        } else {
            None
        },
    })
}

/// Compute every trace on the right-hand side and assemble the bound.
pub fn theorem_rhs(
    field: &FieldProfile,
    sigma: f64,
    lambda: f64,
    n_grid: usize,
) -> Result<BoundBreakdown> {
    if sigma < 1.5 {
        return Err(Error::Domain(format!(
            "the bound requires σ >= 3/2, got {sigma}"
        )));
    }
    let outer_modes = spectral::aux_mode_spectra(field, AuxKind::Outer, lambda, n_grid)?;
    let inner_modes = spectral::aux_mode_spectra(field, AuxKind::Inner, lambda, n_grid)?;
    let outer = spectral::aux_trace(&outer_modes, lambda, sigma)?;
    let inner = spectral::aux_trace(&inner_modes, lambda, sigma)?;
    let (l, _) = spectral::operator_trace_1d_detailed(field, OperatorKind::LOp, lambda, sigma, n_grid)?;
    let (ltilde, _) =
        spectral::operator_trace_1d_detailed(field, OperatorKind::LTildeOp, lambda, sigma, n_grid)?;
    assemble_breakdown(field, sigma, lambda, outer, inner, l, ltilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn gamma_examples() {
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-13);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-13);
        let g35 = 15.0 / 8.0 * PI.sqrt();
        assert!((gamma_fn(3.5).unwrap() - g35).abs() < g35 * 1e-13);
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.0).is_err());
    }

    #[test]
    fn gamma_recurrence() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..100 {
            let x = rng.gen_range(0.5..20.0);
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs(), "x = {x}");
        }
    }

    #[test]
    fn semiclassical_closed_forms() {
        let v = semiclassical_constant(1.5, 1).unwrap();
        assert!((v - 3.0 / 16.0).abs() < 1e-12 * (3.0 / 16.0));
        let v = semiclassical_constant(1.0, 2).unwrap();
        assert!((v - 1.0 / (8.0 * PI)).abs() < 1e-12 / (8.0 * PI));
        let v = semiclassical_constant(1.5, 2).unwrap();
        assert!((v - 1.0 / (10.0 * PI)).abs() < 1e-12 / (10.0 * PI));
        assert!(semiclassical_constant(1.0, 3).is_err());
        assert!(semiclassical_constant(-0.5, 1).is_err());
    }

    #[test]
    fn berezin_examples() {
        let v = berezin_rhs(1.5, 30.0, 1.0).unwrap();
        let expect = 30.0f64.powf(2.5) / 10.0;
        assert!((v - expect).abs() < 1e-12 * expect);
        assert_eq!(berezin_rhs(1.5, 0.0, 1.0).unwrap(), 0.0);
        let v = berezin_rhs(1.0, 10.0, 2.0).unwrap();
        assert!((v - 50.0).abs() < 1e-12 * 50.0);
    }

    #[test]
    fn laptev_examples() {
        let v = laptev_rhs(0.0, 10.0, 1.0).unwrap();
        assert!((v - 5.0).abs() < 1e-12 * 5.0);
        // σ = 1/2 prefactor is 2/√3.
        let pre = 2.0 * (0.5f64 / 1.5).powf(0.5);
        assert!((pre - 2.0 / 3.0f64.sqrt()).abs() < 1e-14);
        assert_eq!(laptev_rhs(0.5, 0.0, 1.0).unwrap(), 0.0);
        assert!(laptev_rhs(1.0, 10.0, 1.0).is_err());
        assert!(laptev_rhs(1.5, 10.0, 1.0).is_err());
    }

    #[test]
    fn middle_term_examples() {
        let v = middle_term(1.5, 10.0, 1.0, 4.0 / 3.0).unwrap();
        assert!((v - 9.375).abs() < 1e-12 * 9.375);
        assert_eq!(middle_term(1.5, 50.0, 1.0, 0.7).unwrap(), 0.0);
        assert_eq!(middle_term(2.0, 17.0, 1.0, 0.0).unwrap(), 0.0);
        let v = middle_term(1.5, 10.0, 1.0, 2.5).unwrap();
        assert!((v - 18.75).abs() < 1e-12 * 18.75);
        // Round-off just below an integer still counts the full block.
        let v = middle_term(1.5, 10.0, 1.0, 2.0 - 1e-12).unwrap();
        assert!((v - 18.75).abs() < 1e-12 * 18.75);
    }

    #[test]
    fn scaling_in_lambda() {
        for &(sigma, lambda) in &[(1.5, 7.0), (2.0, 3.0), (3.0, 11.0)] {
            let b1 = berezin_rhs(sigma, lambda, 1.3).unwrap();
            let b2 = berezin_rhs(sigma, 2.0 * lambda, 1.3).unwrap();
            let factor = 2.0f64.powf(sigma + 1.0);
            assert!((b2 - factor * b1).abs() <= 1e-13 * b2.abs());

            let m1 = middle_term(sigma, lambda, 1.3, 2.0).unwrap();
            let m2 = middle_term(sigma, 2.0 * lambda, 1.3, 2.0).unwrap();
            let factor = 2.0f64.powf(sigma + 0.5);
            assert!((m2 - factor * m1).abs() <= 1e-13 * m2.abs());
        }
    }

    #[test]
    fn sigma_below_three_halves_rejected() {
        let field = FieldProfile::constant(1.0, 1.0).unwrap();
        assert!(matches!(
            theorem_rhs(&field, 1.0, 10.0, 64),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zero_lambda_gives_zero_total() {
        let field = FieldProfile::constant(1.0, 1.0).unwrap();
        let b = theorem_rhs(&field, 1.5, 0.0, 64).unwrap();
        assert_eq!(b.rhs_total, 0.0);
        assert_eq!(b.middle, 0.0);
    }

    #[test]
    fn branch_selection() {
        let half = FieldProfile::constant(1.0, 1.0).unwrap(); // F = 0.5
        let b = theorem_rhs(&half, 1.5, 10.0, 64).unwrap();
        assert_eq!(b.branch, Branch::NonIntegerFlux);
        assert!(b.l_half_signed() >= 0.0);
        assert!(b.rhs_total_alt.is_none());

        let unit = FieldProfile::constant(2.0, 1.0).unwrap(); // F = 1
        let b = theorem_rhs(&unit, 1.5, 10.0, 64).unwrap();
        assert_eq!(b.branch, Branch::IntegerFlux);
        assert!(b.l_half_signed() <= 0.0);
        assert!((b.middle - middle_term(1.5, 10.0, 1.0, 1.0).unwrap()).abs() < 1e-12);

        let zero = FieldProfile::constant(0.0, 1.0).unwrap();
        let b = theorem_rhs(&zero, 1.5, 10.0, 64).unwrap();
        assert_eq!(b.branch, Branch::Both);
        let alt = b.rhs_total_alt.unwrap();
        assert!(b.rhs_total >= alt);
        // The two displays differ by exactly the l-trace.
        assert!(
            ((b.rhs_total - alt) - b.l.value).abs() <= 1e-12 * b.l.value.max(1.0),
            "Δ = {}, l = {}",
            b.rhs_total - alt,
            b.l.value
        );
    }

    #[test]
    fn integer_branch_total_differs_by_l_trace() {
        let field = FieldProfile::constant(2.0, 1.0).unwrap(); // F = 1 exactly
        let b = theorem_rhs(&field, 2.0, 20.0, 64).unwrap();
        assert_eq!(b.branch, Branch::IntegerFlux);
        let ni_total = 0.5 * b.outer.value
            + 0.5 * b.inner.value
            + b.middle
            + 0.5 * b.l.value
            + 0.5 * b.ltilde.value;
        assert!(
            ((ni_total - b.rhs_total) - b.l.value).abs() <= 1e-12 * ni_total.abs().max(1.0)
        );
    }
}
