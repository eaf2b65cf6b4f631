//! Independent oracles and end-to-end inequality checks.
//!
//! The zero-field disk spectrum is known exactly — eigenvalues (j_{m,k}/r0)²
//! with multiplicity 2 for m ≥ 1 — so a Bessel-zero oracle pins down every
//! solver tolerance. On top of it sit the bound checks: the five-term
//! right-hand side with branch selection, the classical Berezin/Laptev
//! comparisons, the diamagnetic and form lower bounds for λ₁, and the
//! spectral-threshold estimate for sub-unit flux.
//!
//! A margin is only trusted against the numerical error proxy
//! Σ |value(N) − value(2N)| over the computed traces: `Holds` means the
//! margin clears the proxy, `Violated` means it clears it on the wrong side,
//! anything else stays `HoldsWithinError`.

mod bessel;

use serde::Serialize;

use crate::bounds::{self, BoundBreakdown};
use crate::error::{Error, Result};
use crate::field::FieldProfile;
use crate::spectral::{self, AuxKind, DiskSpectrum, ModeSpectrum, Trace};
use crate::OperatorKind;

/// Certified range of the Bessel oracle.
pub const ORACLE_MAX_ORDER: u32 = 20;
pub const ORACLE_MAX_INDEX: u32 = 50;

/// Absolute tolerance for the λ₁ comparisons (diamagnetic and form bounds).
pub const GROUND_STATE_TOL: f64 = 1e-8;

/// k-th positive zero of J_m, for m ≤ 20 and 1 ≤ k ≤ 50, to 1e−12.
pub fn bessel_zero(m: u32, k: u32) -> Result<f64> {
    if m > ORACLE_MAX_ORDER || k == 0 || k > ORACLE_MAX_INDEX {
        return Err(Error::OracleRange(format!(
            "bessel_zero(m={m}, k={k}) outside m <= {ORACLE_MAX_ORDER}, 1 <= k <= {ORACLE_MAX_INDEX}"
        )));
    }
    let zs = bessel::zeros(m, k as usize, f64::INFINITY);
    Ok(zs[k as usize - 1])
}

/// Exact spectrum of the zero-field Dirichlet disk below Λ: all
/// (j_{m,k}/r0)² < Λ with multiplicity 2 for m ≥ 1, ascending.
pub fn zero_field_oracle(r0: f64, lambda: f64) -> Result<Vec<f64>> {
    if !(r0 > 0.0) || !(lambda >= 0.0) {
        return Err(Error::Domain(format!(
            "zero_field_oracle needs r0 > 0 and Λ >= 0, got r0 = {r0}, Λ = {lambda}"
        )));
    }
    let j_limit = lambda.sqrt() * r0;
    let mut eigenvalues = Vec::new();
    let mut m = 0u32;
    // j_{m,1} > m, so orders at or beyond j_limit cannot contribute.
    while (m as f64) < j_limit {
        if m > ORACLE_MAX_ORDER {
            return Err(Error::OracleRange(format!(
                "Λ = {lambda} needs Bessel orders beyond {ORACLE_MAX_ORDER}"
            )));
        }
        let zs = bessel::zeros(m, ORACLE_MAX_INDEX as usize + 1, j_limit);
        let mut count = 0usize;
        for z in zs {
            if z >= j_limit {
                break;
            }
            count += 1;
            if count > ORACLE_MAX_INDEX as usize {
                return Err(Error::OracleRange(format!(
                    "Λ = {lambda} needs more than {ORACLE_MAX_INDEX} zeros of J_{m}"
                )));
            }
            let ev = (z / r0) * (z / r0);
            eigenvalues.push(ev);
            if m >= 1 {
                eigenvalues.push(ev);
            }
        }
        if count == 0 {
            break; // j_{m,1} ≥ j_limit, and first zeros increase with m
        }
        m += 1;
    }
    eigenvalues.sort_by(f64::total_cmp);
    Ok(eigenvalues)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    HoldsWithinError,
    Violated,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWithinError => "holds_within_error",
            Verdict::Violated => "violated",
        })
    }
}

fn classify(margin: f64, error: f64) -> Verdict {
    if margin > error {
        Verdict::Holds
    } else if margin < -error {
        Verdict::Violated
    } else {
        Verdict::HoldsWithinError
    }
}

/// One (σ, Λ) point of the eigenvalue-moment bound.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub field: String,
    pub sigma: f64,
    pub lambda: f64,
    pub lhs: Trace,
    pub breakdown: BoundBreakdown,
    /// rhs_total − lhs.
    pub margin: f64,
    /// Σ |value(N) − value(2N)| over the lhs and the four rhs traces.
    pub error_estimate: f64,
    pub verdict: Verdict,
    /// Whether the N-doubling refinement ran for this point.
    pub refined: bool,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str =
        "sigma,lambda,branch,outer,inner,middle,l,ltilde,rhs,lhs,margin";

    /// Terms as they enter the sum: halves, with the l-term signed.
    pub fn csv_row(&self) -> String {
        let b = &self.breakdown;
        format!(
            "{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.sigma,
            self.lambda,
            b.branch,
            b.outer_half(),
            b.inner_half(),
            b.middle,
            b.l_half_signed(),
            b.ltilde_half(),
            b.rhs_total,
            self.lhs.value,
            self.margin
        )
    }
}

/// Eigendata for every operator in the bound at one grid size, shared
/// across a Λ grid.
struct TheoremData {
    mag: DiskSpectrum,
    outer: Vec<ModeSpectrum>,
    inner: Vec<ModeSpectrum>,
    l: ModeSpectrum,
    ltilde: ModeSpectrum,
}

fn theorem_data(field: &FieldProfile, lambda_max: f64, n_grid: usize) -> Result<TheoremData> {
    Ok(TheoremData {
        mag: spectral::magnetic_spectrum(field, lambda_max, n_grid)?,
        outer: spectral::aux_mode_spectra(field, AuxKind::Outer, lambda_max, n_grid)?,
        inner: spectral::aux_mode_spectra(field, AuxKind::Inner, lambda_max, n_grid)?,
        l: spectral::operator_mode_spectrum(field, OperatorKind::LOp, lambda_max, n_grid)?,
        ltilde: spectral::operator_mode_spectrum(field, OperatorKind::LTildeOp, lambda_max, n_grid)?,
    })
}

fn evaluate_point(
    data: &TheoremData,
    field: &FieldProfile,
    sigma: f64,
    lambda: f64,
) -> Result<(Trace, BoundBreakdown)> {
    let lhs = data.mag.riesz_trace(lambda, sigma)?;
    let outer = spectral::aux_trace(&data.outer, lambda, sigma)?;
    let inner = spectral::aux_trace(&data.inner, lambda, sigma)?;
    let l = spectral::mode_trace(&data.l, lambda, sigma)?;
    let ltilde = spectral::mode_trace(&data.ltilde, lambda, sigma)?;
    let breakdown = bounds::assemble_breakdown(field, sigma, lambda, outer, inner, l, ltilde)?;
    Ok((lhs, breakdown))
}

/// Check the eigenvalue-moment bound at each Λ of the grid.
///
/// Eigendata is computed once at max(Λ) and reused across the grid. A point
/// whose margin lands inside the error proxy is refined once at grid 2N.
pub fn check_theorem(
    field: &FieldProfile,
    sigma: f64,
    lambdas: &[f64],
    n_grid: usize,
) -> Result<Vec<BoundReport>> {
    if sigma < 1.5 {
        return Err(Error::Domain(format!(
            "the bound requires σ >= 3/2, got {sigma}"
        )));
    }
    if lambdas.is_empty() {
        return Err(Error::Domain("empty Λ grid".into()));
    }
    if let Some(bad) = lambdas.iter().find(|l| !l.is_finite() || **l < 0.0) {
        return Err(Error::Domain(format!("Λ grid entry {bad} is not a finite nonnegative number")));
    }
    let lambda_max = lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let data = theorem_data(field, lambda_max, n_grid)?;
    let mut refined_data: Option<TheoremData> = None;

    let mut reports = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let (mut lhs, mut breakdown) = evaluate_point(&data, field, sigma, lambda)?;
        let mut margin = breakdown.rhs_total - lhs.value;
        let mut error = lhs.error_proxy() + breakdown.rhs_error_proxy();
        let mut refined = false;
        if classify(margin, error) == Verdict::HoldsWithinError && lambda > 0.0 {
            if refined_data.is_none() {
                refined_data = Some(theorem_data(field, lambda_max, 2 * n_grid)?);
            }
            let fine = refined_data.as_ref().unwrap();
            let (lhs2, breakdown2) = evaluate_point(fine, field, sigma, lambda)?;
            lhs = lhs2;
            breakdown = breakdown2;
            margin = breakdown.rhs_total - lhs.value;
            error = lhs.error_proxy() + breakdown.rhs_error_proxy();
            refined = true;
        }
        let verdict = classify(margin, error);
        reports.push(BoundReport {
            field: field.label().to_string(),
            sigma,
            lambda,
            lhs,
            breakdown,
            margin,
            error_estimate: error,
            verdict,
            refined,
        });
    }
    Ok(reports)
}

/// Classical comparisons: Riesz mean against the sharp semiclassical bound,
/// plus the diamagnetic and field-strength lower bounds for λ₁.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalReport {
    pub field: String,
    pub sigma: f64,
    pub lambda: f64,
    pub lhs: f64,
    /// "berezin" (σ ≥ 3/2 any field; σ ≥ 1 constant) or "laptev"
    /// (σ < 1, constant field).
    pub bound_name: String,
    pub classical_rhs: f64,
    pub bound_ok: bool,
    pub lambda1: f64,
    pub lambda1_mode: i64,
    pub lambda1_zero_field: f64,
    pub diamagnetic_ok: bool,
    pub inf_b: f64,
    pub form_bound_ok: bool,
    pub error_estimate: f64,
}

pub fn check_classical(
    field: &FieldProfile,
    sigma: f64,
    lambda: f64,
    n_grid: usize,
) -> Result<ClassicalReport> {
    let constant = field.is_constant();
    let r0 = field.r0();
    let (bound_name, classical_rhs) = if sigma >= 1.5 || (constant && sigma >= 1.0) {
        ("berezin", bounds::berezin_rhs(sigma, lambda, r0)?)
    } else if constant {
        ("laptev", bounds::laptev_rhs(sigma, lambda, r0)?)
    } else {
        return Err(Error::Domain(format!(
            "classical bound needs σ >= 3/2 for nonconstant fields, got {sigma}"
        )));
    };

    let spectrum = spectral::magnetic_spectrum(field, lambda, n_grid)?;
    let lhs = spectrum.riesz_trace(lambda, sigma)?;
    let (lambda1_mode, lambda1) = spectral::magnetic_ground_state(field, n_grid)?;
    let validation = field.validate()?;
    let j01 = bessel_zero(0, 1)?;
    let lambda1_zero_field = (j01 / r0) * (j01 / r0);

    Ok(ClassicalReport {
        field: field.label().to_string(),
        sigma,
        lambda,
        lhs: lhs.value,
        bound_name: bound_name.to_string(),
        classical_rhs,
        bound_ok: lhs.value <= classical_rhs + lhs.error_proxy(),
        lambda1: lambda1.value,
        lambda1_mode,
        lambda1_zero_field,
        diamagnetic_ok: lambda1.value >= lambda1_zero_field - GROUND_STATE_TOL,
        inf_b: validation.inf_b,
        form_bound_ok: lambda1.value >= validation.inf_b - GROUND_STATE_TOL,
        error_estimate: lhs.error_proxy() + lambda1.error_proxy(),
    })
}

/// Spectral-threshold comparison for sub-unit flux: λ₁ of the magnetic
/// operator against the smallest threshold of the four comparison operators.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub field: String,
    pub total_flux: f64,
    pub lambda1: f64,
    pub lambda1_mode: i64,
    pub outer_threshold: f64,
    pub inner_threshold: f64,
    pub l_threshold: f64,
    pub ltilde_threshold: f64,
    /// min of the four thresholds.
    pub t_star: f64,
    /// λ₁ − t*.
    pub margin: f64,
    pub error_estimate: f64,
    /// margin ≥ −error_estimate.
    pub ok: bool,
}

pub fn threshold_bound(field: &FieldProfile, n_grid: usize) -> Result<ThresholdReport> {
    let (f, _) = field.total_flux()?;
    if !(f < 1.0) {
        return Err(Error::Precondition(format!(
            "threshold bound needs total flux < 1, got F = {f}"
        )));
    }
    let (lambda1_mode, lambda1) = spectral::magnetic_ground_state(field, n_grid)?;
    let (_, outer) = spectral::aux_ground_state(field, AuxKind::Outer, n_grid)?;
    let (_, inner) = spectral::aux_ground_state(field, AuxKind::Inner, n_grid)?;
    let l = spectral::ground_state_trace(field, OperatorKind::LOp, n_grid)?;
    let ltilde = spectral::ground_state_trace(field, OperatorKind::LTildeOp, n_grid)?;

    let t_star = [outer, inner, l, ltilde]
        .into_iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .unwrap();
    let margin = lambda1.value - t_star.value;
    let error = lambda1.error_proxy() + t_star.error_proxy();

    Ok(ThresholdReport {
        field: field.label().to_string(),
        total_flux: f,
        lambda1: lambda1.value,
        lambda1_mode,
        outer_threshold: outer.value,
        inner_threshold: inner.value,
        l_threshold: l.value,
        ltilde_threshold: ltilde.value,
        t_star: t_star.value,
        margin,
        error_estimate: error,
        ok: margin >= -error,
    })
}
