//! Radially symmetric magnetic field profiles on the disk of radius `r0`.
//!
//! A profile evaluates `B(r)` on `(0, r0)` and its flux integrals
//!
//! ```text
//! Φ(r) = ∫_0^r s B(s) ds        (inner flux)
//! Ψ(r) = ∫_r^{r0} s B(s) ds     (outer flux)
//! F    = Φ(r0)                  (total flux)
//! ```
//!
//! Everything downstream (operator potentials, bound branches) is a function
//! of Φ, Ψ and F alone. The total flux is computed once at construction;
//! profiles are immutable afterwards and safe to share across threads.

use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;

/// |F − round(F)| below this counts as integer flux.
pub const INTEGER_FLUX_TOL: f64 = 1e-9;
/// |F − round(F)| in [INTEGER_FLUX_TOL, this) is surfaced as ambiguous.
pub const AMBIGUOUS_FLUX_TOL: f64 = 1e-6;

const VALIDATE_SAMPLES: usize = 1 << 14;

/// Classification of the total flux against the integers.
///
/// The bound assembly branches discontinuously on F ∈ ℤ, so near-integer
/// flux is reported as ambiguous rather than silently classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum FluxIntegrality {
    Integer,
    NonInteger,
    NearBoundaryAmbiguous,
}

#[derive(Debug, Clone)]
enum ProfileKind {
    /// B(r) = B₀
    Constant { b0: f64 },
    /// B(r) = c·r^p, p > −1
    PowerLaw { c: f64, p: f64 },
    /// B(r) = c·(r0 − r)^{−γ}; the flux is finite only for γ < 1
    BoundaryBlowup { c: f64, gamma: f64 },
    /// Piecewise-linear interpolation of sampled (r, B) pairs, extended as a
    /// constant beyond the first and last sample.
    Tabulated {
        r: Vec<f64>,
        b: Vec<f64>,
        /// Φ at each sample radius, so lookups stay O(log n).
        phi_at: Vec<f64>,
    },
}

/// A radially symmetric field B(|x|) ≥ 0 on the disk of radius `r0`.
#[derive(Debug, Clone)]
pub struct FieldProfile {
    kind: ProfileKind,
    r0: f64,
    blows_up: bool,
    /// Total flux F; `None` when the integral diverges.
    total: Option<f64>,
    label: String,
}

/// Diagnostics from [`FieldProfile::validate`].
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub nonnegative: bool,
    pub finite_flux: bool,
    /// Estimated inf B over (0, r0).
    pub inf_b: f64,
    /// Whether B blows up at the boundary with a positive infimum.
    pub blow_up_regime: bool,
    pub total_flux: f64,
}

impl FieldProfile {
    pub fn constant(b0: f64, r0: f64) -> Result<Self> {
        check_radius(r0)?;
        if !(b0 >= 0.0) || !b0.is_finite() {
            return Err(Error::InvalidField(format!("constant B0 must be >= 0, got {b0}")));
        }
        Ok(Self {
            kind: ProfileKind::Constant { b0 },
            r0,
            blows_up: false,
            total: Some(b0 * r0 * r0 / 2.0),
            label: format!("constant:{b0}"),
        })
    }

    pub fn power_law(c: f64, p: f64, r0: f64) -> Result<Self> {
        check_radius(r0)?;
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::InvalidField(format!("power-law c must be >= 0, got {c}")));
        }
        if !(p > -1.0) || !p.is_finite() {
            return Err(Error::InvalidField(format!("power-law exponent must be > -1, got {p}")));
        }
        Ok(Self {
            kind: ProfileKind::PowerLaw { c, p },
            r0,
            blows_up: false,
            total: Some(c * r0.powf(p + 2.0) / (p + 2.0)),
            label: format!("power:{c},{p}"),
        })
    }

    /// `gamma >= 1` is accepted so the divergent-flux diagnostics can run;
    /// the total flux is then recorded as infinite.
    pub fn boundary_blowup(c: f64, gamma: f64, r0: f64) -> Result<Self> {
        check_radius(r0)?;
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidField(format!("blow-up c must be > 0, got {c}")));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidField(format!("blow-up gamma must be > 0, got {gamma}")));
        }
        let total = if gamma < 1.0 {
            // ∫_0^{r0} s (r0−s)^{−γ} ds = r0^{2−γ} / ((1−γ)(2−γ))
            Some(c * r0.powf(2.0 - gamma) / ((1.0 - gamma) * (2.0 - gamma)))
        } else {
            None
        };
        Ok(Self {
            kind: ProfileKind::BoundaryBlowup { c, gamma },
            r0,
            blows_up: true,
            total,
            label: format!("blowup:{c},{gamma}"),
        })
    }

    /// Sampled (r, B) pairs, strictly increasing in r with
    /// `0 <= r.first()` and `r.last() <= r0`. B is interpolated linearly and
    /// extended as a constant outside the sampled range, which keeps B >= 0
    /// and makes every flux integral a piecewise polynomial.
    pub fn tabulated(points: &[(f64, f64)], r0: f64) -> Result<Self> {
        check_radius(r0)?;
        if points.len() < 2 {
            return Err(Error::InvalidField(format!(
                "tabulated profile needs at least 2 samples, got {}",
                points.len()
            )));
        }
        for &(r, b) in points {
            if !r.is_finite() || !b.is_finite() {
                return Err(Error::InvalidField("non-finite table entry".into()));
            }
            if b < 0.0 {
                return Err(Error::InvalidField(format!("negative B = {b} at r = {r}")));
            }
        }
        let r: Vec<f64> = points.iter().map(|p| p.0).collect();
        let b: Vec<f64> = points.iter().map(|p| p.1).collect();
        if r[0] < 0.0 || *r.last().unwrap() > r0 {
            return Err(Error::InvalidField(format!(
                "sample radii must lie in [0, {r0}], got [{}, {}]",
                r[0],
                r.last().unwrap()
            )));
        }
        if r.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidField("sample radii must be strictly increasing".into()));
        }

        // Φ at each knot: constant extension up to r[0], linear pieces after.
        let mut phi_at = Vec::with_capacity(r.len());
        let mut acc = b[0] * r[0] * r[0] / 2.0;
        phi_at.push(acc);
        for i in 0..r.len() - 1 {
            acc += segment_flux(r[i], b[i], r[i + 1], b[i + 1], r[i], r[i + 1]);
            phi_at.push(acc);
        }
        let total = acc + b[b.len() - 1] * (r0 * r0 - r.last().unwrap().powi(2)) / 2.0;

        Ok(Self {
            kind: ProfileKind::Tabulated { r, b, phi_at },
            r0,
            blows_up: false,
            total: Some(total),
            label: "table".into(),
        })
    }

    /// Parse a profile spec string: `constant:B0`, `power:c,p`,
    /// `blowup:c,gamma` or `table:path.csv` (CSV columns `r,B`).
    pub fn from_spec(spec: &str, r0: f64) -> Result<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("field spec `{spec}` has no `kind:` prefix")))?;
        let mut profile = match kind {
            "constant" => Self::constant(parse_num(rest)?, r0)?,
            "power" => {
                let (c, p) = parse_pair(rest)?;
                Self::power_law(c, p, r0)?
            }
            "blowup" => {
                let (c, gamma) = parse_pair(rest)?;
                Self::boundary_blowup(c, gamma, r0)?
            }
            "table" => {
                let points = read_table(rest)?;
                Self::tabulated(&points, r0)?
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown field kind `{other}` (expected constant/power/blowup/table)"
                )))
            }
        };
        profile.label = spec.to_string();
        Ok(profile)
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// Whether B(r) → ∞ as r → r0.
    pub fn blows_up(&self) -> bool {
        self.blows_up
    }

    /// Short spec-style descriptor for reports.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Constant-field profiles get the wider σ range of the classical bounds.
    pub fn is_constant(&self) -> bool {
        matches!(self.kind, ProfileKind::Constant { .. })
    }

    /// B(r) for r strictly inside (0, r0).
    pub fn eval_b(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r < self.r0) {
            return Err(Error::Domain(format!(
                "eval_b: r = {r} outside (0, {})",
                self.r0
            )));
        }
        Ok(self.eval_b_interior(r))
    }

    fn eval_b_interior(&self, r: f64) -> f64 {
        match &self.kind {
            ProfileKind::Constant { b0 } => *b0,
            ProfileKind::PowerLaw { c, p } => c * r.powf(*p),
            ProfileKind::BoundaryBlowup { c, gamma } => c * (self.r0 - r).powf(-gamma),
            ProfileKind::Tabulated { r: rs, b, .. } => interp_clamped(rs, b, r),
        }
    }

    /// B at distance `d` from the boundary, written so that blow-up profiles
    /// never subtract `r0 - r` (the substituted quadrature passes exact
    /// boundary distances).
    fn b_at_boundary_distance(&self, d: f64) -> f64 {
        match &self.kind {
            ProfileKind::BoundaryBlowup { c, gamma } => c * d.powf(-gamma),
            _ => self.eval_b_interior(self.r0 - d),
        }
    }

    /// s·B(s) on the closed interval [0, r0], with the limits filled in where
    /// the factors alone are singular.
    fn integrand_s_b(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            ProfileKind::Constant { b0 } => b0 * s,
            // c·s^{p+1} avoids ∞·0 at the origin for p < 0.
            ProfileKind::PowerLaw { c, p } => c * s.powf(p + 1.0),
            ProfileKind::BoundaryBlowup { c, gamma } => {
                if s >= self.r0 {
                    f64::INFINITY
                } else {
                    c * s * (self.r0 - s).powf(-gamma)
                }
            }
            ProfileKind::Tabulated { r, b, .. } => s * interp_clamped(r, b, s.min(self.r0)),
        }
    }

    /// Inner flux Φ(r) = ∫_0^r s B(s) ds for 0 ≤ r ≤ r0, by closed form.
    pub fn flux_in(&self, r: f64) -> Result<f64> {
        self.check_flux_radius(r)?;
        match &self.kind {
            ProfileKind::Constant { b0 } => Ok(b0 * r * r / 2.0),
            ProfileKind::PowerLaw { c, p } => Ok(c * r.powf(p + 2.0) / (p + 2.0)),
            ProfileKind::BoundaryBlowup { c, gamma } => {
                if let Some(total) = self.total {
                    // Ψ is the cancellation-free quantity near the boundary.
                    Ok(total - psi_blowup(*c, *gamma, self.r0, r))
                } else if r < self.r0 {
                    Ok(phi_blowup_direct(*c, *gamma, self.r0, r))
                } else {
                    Err(Error::InfiniteFlux(format!(
                        "Φ(r0) diverges for blow-up exponent gamma = {gamma} >= 1"
                    )))
                }
            }
            ProfileKind::Tabulated { r: rs, b, phi_at } => {
                Ok(phi_tabulated(rs, b, phi_at, r))
            }
        }
    }

    /// Outer flux Ψ(r) = F − Φ(r) for 0 ≤ r ≤ r0.
    pub fn flux_out(&self, r: f64) -> Result<f64> {
        self.check_flux_radius(r)?;
        match &self.kind {
            ProfileKind::BoundaryBlowup { c, gamma } => {
                if self.total.is_some() {
                    Ok(psi_blowup(*c, *gamma, self.r0, r))
                } else {
                    Err(Error::InfiniteFlux(
                        "outer flux diverges for gamma >= 1".into(),
                    ))
                }
            }
            _ => {
                let total = self.require_total()?;
                Ok(total - self.flux_in(r)?)
            }
        }
    }

    /// Total flux F with its integrality classification.
    pub fn total_flux(&self) -> Result<(f64, FluxIntegrality)> {
        let f = self.require_total()?;
        Ok((f, classify_flux(f)))
    }

    fn require_total(&self) -> Result<f64> {
        self.total.ok_or_else(|| {
            Error::InfiniteFlux(format!("∫ s B(s) ds diverges for profile {}", self.label))
        })
    }

    /// Generic adaptive-quadrature route for Φ(r), independent of the closed
    /// forms above. Blow-up profiles get the substitution s = r0 − t^k on the
    /// final subinterval and every profile gets s = t^4 near the origin, so
    /// integrable endpoint singularities converge at full order. A divergent
    /// integral (γ ≥ 1 at r = r0) exhausts refinement and is reported as an
    /// infinite-flux error.
    pub fn flux_in_quadrature(&self, r: f64) -> Result<f64> {
        self.check_flux_radius(r)?;
        if r == 0.0 {
            return Ok(0.0);
        }
        let rel_tol = 1e-12;
        let map_err = |e: Error| match e {
            Error::QuadratureDiverged(msg) => Error::InfiniteFlux(msg),
            other => other,
        };

        // Origin piece [0, a] via s = t^4: ds = 4 t^3 dt.
        let a = 0.25 * r;
        let ta = a.powf(0.25);
        let mut value = adaptive_simpson(
            |t| 4.0 * t.powi(3) * self.integrand_s_b(t * t * t * t),
            0.0,
            ta,
            rel_tol,
        )
        .map_err(map_err)?;

        // Boundary piece via s = r0 − t^k when the profile blows up there.
        let split = if self.blows_up {
            (0.75 * self.r0).max(a)
        } else {
            r
        };
        let mid_end = r.min(split);
        value += adaptive_simpson(|s| self.integrand_s_b(s), a, mid_end, rel_tol).map_err(map_err)?;

        if r > mid_end {
            let k = match &self.kind {
                ProfileKind::BoundaryBlowup { gamma, .. } if *gamma < 1.0 => {
                    ((2.0 / (1.0 - gamma)).ceil() as i32 + 1).max(3)
                }
                _ => 8,
            };
            let kf = f64::from(k);
            let t_hi = (self.r0 - mid_end).powf(1.0 / kf);
            let t_lo = (self.r0 - r).max(0.0).powf(1.0 / kf);
            let g = |t: f64| {
                let d = t.powi(k);
                if d == 0.0 {
                    // Underflow deep in the boundary layer; the true
                    // integrand is O(t^{k(1-γ)-1}) → 0 there.
                    return 0.0;
                }
                kf * t.powi(k - 1) * (self.r0 - d) * self.b_at_boundary_distance(d)
            };
            value += adaptive_simpson(g, t_lo, t_hi, rel_tol).map_err(map_err)?;
        }
        Ok(value)
    }

    /// Diagnostic scan: nonnegativity, flux finiteness, inf B and whether the
    /// boundary blow-up regime applies.
    pub fn validate(&self) -> Result<ValidationReport> {
        // Closed-form infimum where monotonicity settles it; sampling as a
        // backstop and for tabulated data.
        let closed_inf = match &self.kind {
            ProfileKind::Constant { b0 } => Some(*b0),
            ProfileKind::PowerLaw { c, p } => Some(if *p > 0.0 {
                0.0
            } else if *p == 0.0 {
                *c
            } else {
                c * self.r0.powf(*p)
            }),
            ProfileKind::BoundaryBlowup { c, gamma } => Some(c * self.r0.powf(-gamma)),
            ProfileKind::Tabulated { b, .. } => {
                b.iter().copied().reduce(f64::min)
            }
        };

        let mut sampled_inf = f64::INFINITY;
        let mut nonnegative = true;
        for i in 0..VALIDATE_SAMPLES {
            let r = self.r0 * (i as f64 + 0.5) / VALIDATE_SAMPLES as f64;
            let v = self.eval_b_interior(r);
            if v < 0.0 || v.is_nan() {
                nonnegative = false;
            }
            sampled_inf = sampled_inf.min(v);
        }
        if let Some(ci) = closed_inf {
            if ci < 0.0 {
                nonnegative = false;
            }
            sampled_inf = sampled_inf.min(ci);
        }
        if !nonnegative {
            return Err(Error::InvalidField(format!(
                "B takes negative values for profile {}",
                self.label
            )));
        }
        let total = self.require_total()?;
        Ok(ValidationReport {
            nonnegative,
            finite_flux: true,
            inf_b: sampled_inf,
            blow_up_regime: self.blows_up && sampled_inf > 0.0,
            total_flux: total,
        })
    }

    fn check_flux_radius(&self, r: f64) -> Result<()> {
        if !(0.0..=self.r0).contains(&r) {
            return Err(Error::Domain(format!(
                "flux radius r = {r} outside [0, {}]",
                self.r0
            )));
        }
        Ok(())
    }
}

fn classify_flux(f: f64) -> FluxIntegrality {
    let nearest = f.round();
    let dist = (f - nearest).abs();
    if dist < INTEGER_FLUX_TOL && (nearest >= 1.0 || f < INTEGER_FLUX_TOL) {
        FluxIntegrality::Integer
    } else if dist < AMBIGUOUS_FLUX_TOL {
        FluxIntegrality::NearBoundaryAmbiguous
    } else {
        FluxIntegrality::NonInteger
    }
}

fn check_radius(r0: f64) -> Result<()> {
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::InvalidField(format!("disk radius must be > 0, got {r0}")));
    }
    Ok(())
}

/// Ψ(r) for B = c (r0 − s)^{−γ}, γ < 1: with u = r0 − s,
/// Ψ(r) = c [ r0 d^{1−γ}/(1−γ) − d^{2−γ}/(2−γ) ], d = r0 − r.
fn psi_blowup(c: f64, gamma: f64, r0: f64, r: f64) -> f64 {
    let d = (r0 - r).max(0.0);
    c * (r0 * d.powf(1.0 - gamma) / (1.0 - gamma) - d.powf(2.0 - gamma) / (2.0 - gamma))
}

/// Φ(r) for blow-up profiles with divergent total flux (γ ≥ 1), r < r0.
fn phi_blowup_direct(c: f64, gamma: f64, r0: f64, r: f64) -> f64 {
    let d = r0 - r;
    if gamma == 1.0 {
        c * (r0 * (r0 / d).ln() - r)
    } else {
        c * (r0 * (r0.powf(1.0 - gamma) - d.powf(1.0 - gamma)) / (1.0 - gamma)
            - (r0.powf(2.0 - gamma) - d.powf(2.0 - gamma)) / (2.0 - gamma))
    }
}

/// ∫_x^y s·B(s) ds for B linear between (ra, ba) and (rb, bb), [x, y] ⊆ [ra, rb].
fn segment_flux(ra: f64, ba: f64, rb: f64, bb: f64, x: f64, y: f64) -> f64 {
    let slope = (bb - ba) / (rb - ra);
    let c0 = ba - slope * ra;
    c0 * (y * y - x * x) / 2.0 + slope * (y * y * y - x * x * x) / 3.0
}

fn phi_tabulated(rs: &[f64], bs: &[f64], phi_at: &[f64], r: f64) -> f64 {
    if r <= rs[0] {
        return bs[0] * r * r / 2.0;
    }
    let last = rs.len() - 1;
    if r >= rs[last] {
        return phi_at[last] + bs[last] * (r * r - rs[last] * rs[last]) / 2.0;
    }
    // rs[i] < r <= rs[i+1]
    let i = rs.partition_point(|&x| x < r) - 1;
    phi_at[i] + segment_flux(rs[i], bs[i], rs[i + 1], bs[i + 1], rs[i], r)
}

fn interp_clamped(rs: &[f64], bs: &[f64], r: f64) -> f64 {
    if r <= rs[0] {
        return bs[0];
    }
    let last = rs.len() - 1;
    if r >= rs[last] {
        return bs[last];
    }
    let i = rs.partition_point(|&x| x < r) - 1;
    let w = (r - rs[i]) / (rs[i + 1] - rs[i]);
    bs[i] + w * (bs[i + 1] - bs[i])
}

fn parse_num(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("expected a number, got `{s}`")))
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected `a,b`, got `{s}`")))?;
    Ok((parse_num(a)?, parse_num(b)?))
}

fn read_table(path: &str) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path)?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (a, b) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("{path}:{}: expected `r,B`", lineno + 1)))?;
        match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(r), Ok(bv)) => points.push((r, bv)),
            _ if points.is_empty() => continue, // header row
            _ => {
                return Err(Error::Parse(format!(
                    "{path}:{}: malformed row `{line}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(points)
}
