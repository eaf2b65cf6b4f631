//! Radial operators on (0, r0) and their tridiagonal discretization.
//!
//! Every operator handled here has the divergence form
//!
//! ```text
//! (L u)(r) = -u'' - u'/r + V(r) u     in L²((0, r0), r dr)
//! ```
//!
//! with a Dirichlet condition at r0, and differs only in the potential:
//!
//! | kind             | V(r)                    |
//! |------------------|-------------------------|
//! | MagneticMode(m)  | ((m − Φ(r)) / r)²       |
//! | AuxOuterMode(n)  | (n² + Ψ(r)²) / r²       |
//! | AuxInnerMode(n)  | (n² + Φ(r)²) / r²       |
//! | LOp              | AuxOuterMode(0)         |
//! | LTildeOp         | AuxInnerMode(0)         |
//!
//! Discretization is finite-volume on the offset grid r_j = (j − ½)h,
//! h = r0/N. The flux through the inner face of the first cell carries the
//! factor r_{1/2} = 0, which encodes the natural boundary behaviour at the
//! origin without evaluating anything at r = 0; dropping the u_{N+1}
//! coupling imposes Dirichlet at r0. Conjugating by diag(√r_j) makes the
//! stencil symmetric while keeping the same spectrum.

use crate::error::{Error, Result};
use crate::field::FieldProfile;

/// Which 1-D radial operator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// Angular mode h_m of the magnetic disk operator.
    MagneticMode(i64),
    /// Angular mode l_n of the outer-flux Schrödinger operator.
    AuxOuterMode(i64),
    /// Angular mode of the inner-flux Schrödinger operator.
    AuxInnerMode(i64),
    /// l(B) = AuxOuterMode(0).
    LOp,
    /// l̃(B) = AuxInnerMode(0).
    LTildeOp,
}

/// A radial operator bound to a field profile.
#[derive(Debug, Clone, Copy)]
pub struct RadialOperatorSpec<'a> {
    kind: OperatorKind,
    field: &'a FieldProfile,
}

impl<'a> RadialOperatorSpec<'a> {
    /// Requires finite total flux so every potential below is well defined.
    pub fn new(kind: OperatorKind, field: &'a FieldProfile) -> Result<Self> {
        field.total_flux()?;
        Ok(Self { kind, field })
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn field(&self) -> &'a FieldProfile {
        self.field
    }

    pub fn r0(&self) -> f64 {
        self.field.r0()
    }

    /// The potential V(r), 0 < r < r0.
    pub fn potential(&self, r: f64) -> Result<f64> {
        Ok(match self.kind {
            OperatorKind::MagneticMode(m) => {
                let t = (m as f64 - self.field.flux_in(r)?) / r;
                t * t
            }
            OperatorKind::AuxOuterMode(n) => {
                let psi = self.field.flux_out(r)?;
                ((n * n) as f64 + psi * psi) / (r * r)
            }
            OperatorKind::LOp => {
                let psi = self.field.flux_out(r)?;
                psi * psi / (r * r)
            }
            OperatorKind::AuxInnerMode(n) => {
                let phi = self.field.flux_in(r)?;
                ((n * n) as f64 + phi * phi) / (r * r)
            }
            OperatorKind::LTildeOp => {
                let phi = self.field.flux_in(r)?;
                phi * phi / (r * r)
            }
        })
    }
}

/// Symmetric tridiagonal matrix, either from [`discretize`] (then `h` and
/// `weight` describe the grid) or assembled directly for tests and utilities.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    /// Grid step r0/N; 0 for hand-assembled matrices.
    pub h: f64,
    /// √r_j similarity factors, kept for eigenvector back-transforms.
    pub weight: Vec<f64>,
}

impl SymTridiagonal {
    pub fn from_parts(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(offdiag.len() + 1, diag.len(), "offdiag length mismatch");
        let n = diag.len();
        Self {
            diag,
            offdiag,
            h: 0.0,
            weight: vec![1.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }
}

/// Finite-volume discretization of `spec` on N offset grid points.
///
/// Row j of the raw stencil (1-based, u_{N+1} = 0, r_{1/2} = 0):
///
/// ```text
/// (A u)_j = -[ r_{j+1/2}(u_{j+1}-u_j) - r_{j-1/2}(u_j-u_{j-1}) ] / (r_j h²) + V(r_j) u_j
/// ```
///
/// symmetrized by diag(√r_j):
///
/// ```text
/// diag_j    = (r_{j-1/2} + r_{j+1/2}) / (r_j h²) + V(r_j)
/// offdiag_j = -r_{j+1/2} / (h² √(r_j r_{j+1}))
/// ```
pub fn discretize(spec: &RadialOperatorSpec, n: usize) -> Result<SymTridiagonal> {
    if n < 16 {
        return Err(Error::Domain(format!("grid size must be >= 16, got {n}")));
    }
    discretize_any(spec, n)
}

/// [`discretize`] without the production lower bound on N, for stencil
/// diagnostics and small-matrix cross-checks.
pub fn discretize_any(spec: &RadialOperatorSpec, n: usize) -> Result<SymTridiagonal> {
    if n == 0 {
        return Err(Error::Domain("grid size must be >= 1".into()));
    }
    let r0 = spec.r0();
    let h = r0 / n as f64;
    let h2 = h * h;
    let mut diag = Vec::with_capacity(n);
    let mut offdiag = Vec::with_capacity(n - 1);
    let mut weight = Vec::with_capacity(n);

    for j in 1..=n {
        let r_j = (j as f64 - 0.5) * h;
        let r_minus = (j - 1) as f64 * h;
        let r_plus = j as f64 * h;
        let v = spec.potential(r_j)?;
        if !v.is_finite() {
            return Err(Error::Discretization {
                index: j,
                radius: r_j,
                value: v,
            });
        }
        diag.push((r_minus + r_plus) / (r_j * h2) + v);
        weight.push(r_j.sqrt());
        if j < n {
            let r_next = (j as f64 + 0.5) * h;
            offdiag.push(-r_plus / (h2 * (r_j * r_next).sqrt()));
        }
    }
    Ok(SymTridiagonal {
        diag,
        offdiag,
        h,
        weight,
    })
}
