//! Assembly of disk spectra from angular modes, and Riesz means.
//!
//! The disk operator is a direct sum over angular modes, so its spectrum
//! below a threshold Λ is the multiset union of per-mode spectra. A mode
//! window certified by potential lower bounds truncates the sum:
//!
//! - magnetic modes: λ₁(h_m) ≥ ((m−F)/r0)² for m ≥ F and ≥ (m/r0)² for
//!   m ≤ 0, giving m ∈ [⌈−r0√Λ⌉−1, ⌊F+r0√Λ⌋+1];
//! - auxiliary modes: λ₁ ≥ (n/r0)², giving |n| ≤ ⌊r0√Λ⌋+1.
//!
//! The same lower bounds hold for the discretized matrices (the stencil part
//! is positive semidefinite and the potential enters on the diagonal), so
//! modes outside the window contribute nothing at any grid size.
//!
//! Every reported eigenvalue is Richardson-extrapolated from grids N and 2N;
//! the plain-grid values are kept so callers can form the |value(N) −
//! value(2N)| error proxy. An eigenvalue enters a spectrum iff its
//! extrapolated value is strictly below Λ.

use rayon::prelude::*;
use serde::Serialize;

use crate::discretize::{discretize, OperatorKind, RadialOperatorSpec, SymTridiagonal};
use crate::eigensolve;
use crate::error::{Error, Result};
use crate::field::FieldProfile;

/// Extra eigenvalue indices bracketed above the raw count, so values that
/// extrapolate below Λ from just above are not missed.
const INDEX_GUARD: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Magnetic,
    Auxiliary,
}

/// Which auxiliary 2-D Schrödinger operator: outer flux Ψ²/r² or inner Φ²/r².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxKind {
    Outer,
    Inner,
}

/// A value computed at grids N and 2N together with its extrapolation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Trace {
    pub value: f64,
    pub coarse: f64,
    pub fine: f64,
}

impl Trace {
    pub fn error_proxy(&self) -> f64 {
        (self.coarse - self.fine).abs()
    }
}

/// Eigenvalues of one angular mode below the threshold.
#[derive(Debug, Clone, Serialize)]
pub struct ModeSpectrum {
    pub mode: i64,
    /// Richardson-extrapolated eigenvalues < Λ, ascending.
    pub eigenvalues: Vec<f64>,
    /// Plain grid-N eigenvalues < Λ.
    #[serde(skip)]
    pub coarse: Vec<f64>,
    /// Plain grid-2N eigenvalues < Λ.
    #[serde(skip)]
    pub fine: Vec<f64>,
    pub grid_n: usize,
    pub richardson: bool,
}

/// The certified reason modes outside the window were dropped.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TruncationCertificate {
    pub below_mode: i64,
    pub below_bound: f64,
    pub above_mode: i64,
    pub above_bound: f64,
}

/// Spectrum of the magnetic disk operator below Λ.
#[derive(Debug, Clone, Serialize)]
pub struct DiskSpectrum {
    pub lambda: f64,
    pub window: (i64, i64),
    pub grid_n: usize,
    pub richardson: bool,
    pub modes: Vec<ModeSpectrum>,
    pub truncation: TruncationCertificate,
}

/// Range of modes that can possibly carry an eigenvalue ≤ Λ.
pub fn mode_window(field: &FieldProfile, lambda: f64, kind: WindowKind) -> Result<(i64, i64)> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!("mode window needs Λ >= 0, got {lambda}")));
    }
    let r0 = field.r0();
    let reach = r0 * lambda.sqrt();
    Ok(match kind {
        WindowKind::Magnetic => {
            let (f, _) = field.total_flux()?;
            (((-reach).ceil() as i64) - 1, ((f + reach).floor() as i64) + 1)
        }
        WindowKind::Auxiliary => {
            let n = (reach.floor() as i64) + 1;
            (-n, n)
        }
    })
}

/// Σ (Λ − λ)₊^σ over a sorted eigenvalue slice, summed ascending in λ.
pub fn riesz_mean(eigenvalues: &[f64], lambda: f64, sigma: f64) -> Result<f64> {
    if sigma < 0.0 {
        return Err(Error::Domain(format!("Riesz exponent must be >= 0, got {sigma}")));
    }
    let mut sum = 0.0;
    for &ev in eigenvalues {
        if ev < lambda {
            sum += (lambda - ev).powf(sigma);
        }
    }
    Ok(sum)
}

/// Indexed eigenvalues 1..=k of `t`: the ones certified below `lambda` use
/// the threshold as their upper bracket, the rest fall back to Gershgorin.
fn indexed_eigenvalues(t: &SymTridiagonal, lambda: f64, tol: f64, k: usize) -> Vec<f64> {
    let mut vals = eigensolve::eigenvalues_below(t, lambda, tol);
    vals.truncate(k);
    for i in vals.len() + 1..=k {
        vals.push(eigensolve::eigenvalue_by_index(t, i, tol));
    }
    vals
}

/// Eigenvalues of one radial operator below Λ at grids (n, 2n) with
/// Richardson extrapolation.
fn mode_spectrum(
    kind: OperatorKind,
    mode: i64,
    field: &FieldProfile,
    lambda: f64,
    n: usize,
) -> Result<ModeSpectrum> {
    let spec = RadialOperatorSpec::new(kind, field)?;
    let t1 = discretize(&spec, n)?;
    let t2 = discretize(&spec, 2 * n)?;
    let tol = eigensolve::default_tol(lambda);
    let k1 = eigensolve::count_below(&t1, lambda);
    let k2 = eigensolve::count_below(&t2, lambda);
    let k = (k1.max(k2) + INDEX_GUARD).min(n);

    let c = indexed_eigenvalues(&t1, lambda, tol, k);
    let f = indexed_eigenvalues(&t2, lambda, tol, k);

    let mut eigenvalues: Vec<f64> = c
        .iter()
        .zip(&f)
        .map(|(&a, &b)| (4.0 * b - a) / 3.0)
        .filter(|&v| v < lambda)
        .collect();
    eigenvalues.sort_by(f64::total_cmp);

    Ok(ModeSpectrum {
        mode,
        eigenvalues,
        coarse: c.into_iter().filter(|&v| v < lambda).collect(),
        fine: f.into_iter().filter(|&v| v < lambda).collect(),
        grid_n: n,
        richardson: true,
    })
}

/// Full spectrum of the magnetic disk operator below Λ.
pub fn magnetic_spectrum(field: &FieldProfile, lambda: f64, n: usize) -> Result<DiskSpectrum> {
    magnetic_spectrum_with_margin(field, lambda, n, 0)
}

/// [`magnetic_spectrum`] with the certified window enlarged by `margin`
/// modes on each side (for truncation-safety checks).
pub fn magnetic_spectrum_with_margin(
    field: &FieldProfile,
    lambda: f64,
    n: usize,
    margin: i64,
) -> Result<DiskSpectrum> {
    let (f, _) = field.total_flux()?;
    let (m_lo, m_hi) = mode_window(field, lambda, WindowKind::Magnetic)?;
    let (m_lo, m_hi) = (m_lo - margin, m_hi + margin);
    let r0 = field.r0();

    let modes: Vec<ModeSpectrum> = (m_lo..=m_hi)
        .collect::<Vec<i64>>()
        .par_iter()
        .map(|&m| mode_spectrum(OperatorKind::MagneticMode(m), m, field, lambda, n))
        .collect::<Result<_>>()?;

    let below = ((m_lo - 1) as f64 / r0).powi(2);
    let above = (((m_hi + 1) as f64 - f) / r0).powi(2);
    Ok(DiskSpectrum {
        lambda,
        window: (m_lo, m_hi),
        grid_n: n,
        richardson: true,
        modes,
        truncation: TruncationCertificate {
            below_mode: m_lo - 1,
            below_bound: below,
            above_mode: m_hi + 1,
            above_bound: above,
        },
    })
}

/// Per-mode spectra of an auxiliary operator for n = 0..=n_max; the n < 0
/// modes coincide with their mirrors because the potential depends on n².
pub fn aux_mode_spectra(
    field: &FieldProfile,
    which: AuxKind,
    lambda: f64,
    n_grid: usize,
) -> Result<Vec<ModeSpectrum>> {
    let (_, n_hi) = mode_window(field, lambda, WindowKind::Auxiliary)?;
    let kind = |n: i64| match which {
        AuxKind::Outer => OperatorKind::AuxOuterMode(n),
        AuxKind::Inner => OperatorKind::AuxInnerMode(n),
    };
    (0..=n_hi)
        .collect::<Vec<i64>>()
        .par_iter()
        .map(|&n| mode_spectrum(kind(n), n, field, lambda, n_grid))
        .collect()
}

#[derive(Debug, Clone, Copy)]
enum GridSel {
    Extrapolated,
    Coarse,
    Fine,
}

fn mode_riesz(mode: &ModeSpectrum, lambda: f64, sigma: f64, sel: GridSel) -> Result<f64> {
    let list = match sel {
        GridSel::Extrapolated => &mode.eigenvalues,
        GridSel::Coarse => &mode.coarse,
        GridSel::Fine => &mode.fine,
    };
    riesz_mean(list, lambda, sigma)
}

/// Riesz mean of a single mode at `lambda` ≤ the Λ it was computed for.
pub fn mode_trace(mode: &ModeSpectrum, lambda: f64, sigma: f64) -> Result<Trace> {
    Ok(Trace {
        value: mode_riesz(mode, lambda, sigma, GridSel::Extrapolated)?,
        coarse: mode_riesz(mode, lambda, sigma, GridSel::Coarse)?,
        fine: mode_riesz(mode, lambda, sigma, GridSel::Fine)?,
    })
}

/// 2Σ_{n≥1} tr_n + tr_0 over auxiliary modes, per grid selection.
fn aux_trace_sum(modes: &[ModeSpectrum], lambda: f64, sigma: f64, sel: GridSel) -> Result<f64> {
    let mode0 = mode_riesz(&modes[0], lambda, sigma, sel)?;
    let mut positive = 0.0;
    for mode in &modes[1..] {
        positive += mode_riesz(mode, lambda, sigma, sel)?;
    }
    Ok(2.0 * positive + mode0)
}

/// Riesz mean of a 2-D auxiliary Schrödinger operator assembled from its
/// radial modes by the n ↔ −n symmetry.
pub fn schrodinger_trace(
    field: &FieldProfile,
    which: AuxKind,
    lambda: f64,
    sigma: f64,
    n_grid: usize,
) -> Result<f64> {
    let modes = aux_mode_spectra(field, which, lambda, n_grid)?;
    Ok(aux_trace(&modes, lambda, sigma)?.value)
}

/// Trace of an auxiliary operator from precomputed mode spectra.
pub fn aux_trace(modes: &[ModeSpectrum], lambda: f64, sigma: f64) -> Result<Trace> {
    Ok(Trace {
        value: aux_trace_sum(modes, lambda, sigma, GridSel::Extrapolated)?,
        coarse: aux_trace_sum(modes, lambda, sigma, GridSel::Coarse)?,
        fine: aux_trace_sum(modes, lambda, sigma, GridSel::Fine)?,
    })
}

/// Riesz mean of one of the 1-D operators l(B) or l̃(B).
pub fn operator_trace_1d(
    field: &FieldProfile,
    kind: OperatorKind,
    lambda: f64,
    sigma: f64,
    n_grid: usize,
) -> Result<f64> {
    Ok(operator_trace_1d_detailed(field, kind, lambda, sigma, n_grid)?.0.value)
}

/// As [`operator_trace_1d`] but keeping the plain-grid values and the mode.
pub fn operator_trace_1d_detailed(
    field: &FieldProfile,
    kind: OperatorKind,
    lambda: f64,
    sigma: f64,
    n_grid: usize,
) -> Result<(Trace, ModeSpectrum)> {
    let mode = operator_mode_spectrum(field, kind, lambda, n_grid)?;
    let trace = mode_trace(&mode, lambda, sigma)?;
    Ok((trace, mode))
}

/// Eigenvalues below Λ of one of the 1-D operators l(B) or l̃(B).
pub fn operator_mode_spectrum(
    field: &FieldProfile,
    kind: OperatorKind,
    lambda: f64,
    n_grid: usize,
) -> Result<ModeSpectrum> {
    match kind {
        OperatorKind::LOp | OperatorKind::LTildeOp => {}
        other => {
            return Err(Error::Domain(format!(
                "operator_mode_spectrum expects LOp or LTildeOp, got {other:?}"
            )))
        }
    }
    mode_spectrum(kind, 0, field, lambda, n_grid)
}

/// Ground state of a single radial operator, Richardson-extrapolated.
pub fn ground_state_trace(
    field: &FieldProfile,
    kind: OperatorKind,
    n_grid: usize,
) -> Result<Trace> {
    let spec = RadialOperatorSpec::new(kind, field)?;
    let c = eigensolve::ground_state(&discretize(&spec, n_grid)?);
    let f = eigensolve::ground_state(&discretize(&spec, 2 * n_grid)?);
    Ok(Trace {
        value: (4.0 * f - c) / 3.0,
        coarse: c,
        fine: f,
    })
}

/// λ₁ of the magnetic disk operator: the minimum over a certified mode
/// window of per-mode ground states. Returns the attaining mode.
pub fn magnetic_ground_state(field: &FieldProfile, n_grid: usize) -> Result<(i64, Trace)> {
    let (f, _) = field.total_flux()?;
    let probe_mode = f.round().max(0.0) as i64;
    let probe = ground_state_trace(field, OperatorKind::MagneticMode(probe_mode), n_grid)?;
    let (m_lo, m_hi) = mode_window(field, probe.value + 1.0, WindowKind::Magnetic)?;

    let traces: Vec<(i64, Trace)> = (m_lo..=m_hi)
        .collect::<Vec<i64>>()
        .par_iter()
        .map(|&m| {
            ground_state_trace(field, OperatorKind::MagneticMode(m), n_grid).map(|t| (m, t))
        })
        .collect::<Result<_>>()?;
    Ok(traces
        .into_iter()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value))
        .expect("nonempty mode window"))
}

/// Spectral threshold (smallest eigenvalue) of an auxiliary 2-D operator:
/// minimum over its certified mode window of per-mode ground states.
pub fn aux_ground_state(field: &FieldProfile, which: AuxKind, n_grid: usize) -> Result<(i64, Trace)> {
    let kind = |n: i64| match which {
        AuxKind::Outer => OperatorKind::AuxOuterMode(n),
        AuxKind::Inner => OperatorKind::AuxInnerMode(n),
    };
    let gs0 = ground_state_trace(field, kind(0), n_grid)?;
    let (_, n_hi) = mode_window(field, gs0.value + 1.0, WindowKind::Auxiliary)?;
    let mut best = (0i64, gs0);
    for n in 1..=n_hi {
        let t = ground_state_trace(field, kind(n), n_grid)?;
        if t.value < best.1.value {
            best = (n, t);
        }
    }
    Ok(best)
}

impl DiskSpectrum {
    /// Multiset union over modes, ascending.
    pub fn merged(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .modes
            .iter()
            .flat_map(|m| m.eigenvalues.iter().copied())
            .collect();
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn count(&self) -> usize {
        self.modes.iter().map(|m| m.eigenvalues.len()).sum()
    }

    /// Riesz mean tr(Λ − H)₊^σ over the merged spectrum, at any Λ not above
    /// the threshold the spectrum was assembled for.
    pub fn riesz_mean(&self, lambda: f64, sigma: f64) -> Result<f64> {
        debug_assert!(lambda <= self.lambda);
        riesz_mean(&self.merged(), lambda, sigma)
    }

    /// Riesz mean with the plain-grid values for the error proxy.
    pub fn riesz_trace(&self, lambda: f64, sigma: f64) -> Result<Trace> {
        debug_assert!(lambda <= self.lambda);
        let collect = |sel: GridSel| -> Vec<f64> {
            let mut all: Vec<f64> = self
                .modes
                .iter()
                .flat_map(|m| {
                    match sel {
                        GridSel::Extrapolated => &m.eigenvalues,
                        GridSel::Coarse => &m.coarse,
                        GridSel::Fine => &m.fine,
                    }
                    .iter()
                    .copied()
                })
                .collect();
            all.sort_by(f64::total_cmp);
            all
        };
        Ok(Trace {
            value: riesz_mean(&collect(GridSel::Extrapolated), lambda, sigma)?,
            coarse: riesz_mean(&collect(GridSel::Coarse), lambda, sigma)?,
            fine: riesz_mean(&collect(GridSel::Fine), lambda, sigma)?,
        })
    }

    /// CSV export, `mode,index,eigenvalue`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mode,index,eigenvalue\n");
        for mode in &self.modes {
            for (i, ev) in mode.eigenvalues.iter().enumerate() {
                out.push_str(&format!("{},{},{:.16e}\n", mode.mode, i + 1, ev));
            }
        }
        out
    }

    /// Canonical JSON (sorted keys) with window, Λ and grid metadata.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self)
            .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
        serde_json::to_string_pretty(&value)
            .map_err(|e| Error::Parse(format!("serialization failed: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_field() -> FieldProfile {
        FieldProfile::constant(0.0, 1.0).unwrap()
    }

    #[test]
    fn window_examples() {
        let zf = zero_field();
        assert_eq!(mode_window(&zf, 30.0, WindowKind::Magnetic).unwrap(), (-6, 6));
        let f1 = FieldProfile::constant(1.0, 1.0).unwrap();
        assert_eq!(mode_window(&f1, 100.0, WindowKind::Magnetic).unwrap(), (-11, 11));
        assert_eq!(mode_window(&zf, 0.0, WindowKind::Magnetic).unwrap(), (-1, 1));
        assert_eq!(mode_window(&zf, 30.0, WindowKind::Auxiliary).unwrap(), (-6, 6));
        assert!(mode_window(&zf, -1.0, WindowKind::Magnetic).is_err());
    }

    #[test]
    fn riesz_mean_examples() {
        assert_eq!(riesz_mean(&[1.0, 3.0], 2.0, 1.0).unwrap(), 1.0);
        assert_eq!(riesz_mean(&[], 100.0, 1.5).unwrap(), 0.0);
        assert!(riesz_mean(&[1.0], 2.0, -0.5).is_err());
        // σ = 0 counts eigenvalues strictly below Λ.
        assert_eq!(riesz_mean(&[1.0, 2.0, 3.0], 3.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn empty_spectrum_at_zero_threshold() {
        let spec = magnetic_spectrum(&zero_field(), 0.0, 64).unwrap();
        assert_eq!(spec.count(), 0);
        assert_eq!(spec.riesz_mean(0.0, 1.5).unwrap(), 0.0);
    }

    #[test]
    fn zero_field_mode_degeneracy() {
        // ±m spectra coincide for zero field and split for a real field.
        let spec = magnetic_spectrum(&zero_field(), 30.0, 256).unwrap();
        let by_mode = |m: i64| {
            spec.modes
                .iter()
                .find(|s| s.mode == m)
                .map(|s| s.eigenvalues.clone())
                .unwrap()
        };
        let plus = by_mode(1);
        let minus = by_mode(-1);
        assert_eq!(plus.len(), minus.len());
        for (a, b) in plus.iter().zip(&minus) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }

        let field = FieldProfile::constant(2.0, 1.0).unwrap();
        let spec_b = magnetic_spectrum(&field, 30.0, 256).unwrap();
        let m1: Vec<f64> = spec_b
            .modes
            .iter()
            .find(|s| s.mode == 1)
            .unwrap()
            .eigenvalues
            .clone();
        let m_minus1: Vec<f64> = spec_b
            .modes
            .iter()
            .find(|s| s.mode == -1)
            .unwrap()
            .eigenvalues
            .clone();
        let differs = m1.len() != m_minus1.len()
            || m1.iter().zip(&m_minus1).any(|(a, b)| (a - b).abs() > 1e-3);
        assert!(differs, "magnetic field should break ±m symmetry");
    }

    #[test]
    fn constant_field_ground_state_bounds() {
        // Diamagnetic + form bound: λ₁(B) ≥ max(λ₁(0), inf B) for B₀ = 2.
        let field = FieldProfile::constant(2.0, 1.0).unwrap();
        let spec = magnetic_spectrum(&field, 30.0, 512).unwrap();
        let merged = spec.merged();
        assert!(!merged.is_empty());
        assert!(merged[0] >= 5.78, "λ₁ = {}", merged[0]);
        assert!(merged[0] >= 2.0);
    }

    #[test]
    fn zero_field_traces_coincide() {
        // With B = 0 all four operator families reduce to the Dirichlet disk.
        let zf = zero_field();
        let lambda = 30.0;
        let sigma = 1.5;
        let n = 256;
        let mag = magnetic_spectrum(&zf, lambda, n)
            .unwrap()
            .riesz_mean(lambda, sigma)
            .unwrap();
        let outer = schrodinger_trace(&zf, AuxKind::Outer, lambda, sigma, n).unwrap();
        let inner = schrodinger_trace(&zf, AuxKind::Inner, lambda, sigma, n).unwrap();
        assert!((mag - outer).abs() < 1e-9 * mag, "{mag} vs {outer}");
        assert!((outer - inner).abs() < 1e-12 * outer);
        let l = operator_trace_1d(&zf, OperatorKind::LOp, lambda, sigma, n).unwrap();
        let lt = operator_trace_1d(&zf, OperatorKind::LTildeOp, lambda, sigma, n).unwrap();
        assert_eq!(l, lt);
    }

    #[test]
    fn decomposition_identity_is_exact() {
        let field = FieldProfile::constant(1.0, 1.0).unwrap();
        let (lambda, sigma, n) = (25.0, 1.5, 128);
        let modes = aux_mode_spectra(&field, AuxKind::Outer, lambda, n).unwrap();
        let total = aux_trace(&modes, lambda, sigma).unwrap().value;
        let mut positive = 0.0;
        for mode in &modes[1..] {
            positive += riesz_mean(&mode.eigenvalues, lambda, sigma).unwrap();
        }
        let (l_trace, _) =
            operator_trace_1d_detailed(&field, OperatorKind::LOp, lambda, sigma, n).unwrap();
        // Same code path ⇒ bit-identical assembly.
        assert_eq!(total, 2.0 * positive + l_trace.value);
    }

    #[test]
    fn window_safety_margin() {
        let field = FieldProfile::constant(1.0, 1.0).unwrap();
        let base = magnetic_spectrum(&field, 30.0, 128).unwrap();
        let wide = magnetic_spectrum_with_margin(&field, 30.0, 128, 5).unwrap();
        let a = base.riesz_mean(30.0, 1.5).unwrap();
        let b = wide.riesz_mean(30.0, 1.5).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{a} vs {b}");
        assert_eq!(base.count(), wide.count());
    }

    #[test]
    fn riesz_continuity_across_eigenvalue() {
        // The m=0 ground state sits near j₀₁² ≈ 5.7832; the Riesz mean must
        // rise continuously from 0 as Λ crosses it.
        let zf = zero_field();
        let spec128 = |lambda: f64| {
            magnetic_spectrum(&zf, lambda, 128)
                .unwrap()
                .riesz_mean(lambda, 1.5)
                .unwrap()
        };
        let j01_sq = 5.783185962946785;
        let below = spec128(j01_sq - 0.01);
        let just_above = spec128(j01_sq + 0.01);
        let above = spec128(j01_sq + 0.5);
        assert_eq!(below, 0.0);
        assert!(
            just_above < 0.01,
            "just-crossed contribution should be tiny, got {just_above}"
        );
        assert!(above > just_above);
    }

    #[test]
    fn determinism_across_thread_counts() {
        let field = FieldProfile::constant(1.0, 1.0).unwrap();
        let run = |threads: usize| -> String {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| magnetic_spectrum(&field, 30.0, 128).unwrap().to_csv())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one, four);
    }

    #[test]
    fn csv_and_json_shape() {
        let spec = magnetic_spectrum(&zero_field(), 10.0, 64).unwrap();
        let csv = spec.to_csv();
        assert!(csv.starts_with("mode,index,eigenvalue\n"));
        assert!(csv.lines().count() >= 2);
        let json = spec.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(value.get("window").is_some());
        assert!(value.get("lambda").is_some());
        assert!(value.get("grid_n").is_some());
    }
}
