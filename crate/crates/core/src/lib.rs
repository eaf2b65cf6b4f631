//! Spectral analysis of the magnetic Dirichlet Laplacian on a disk with a
//! radially symmetric field.
//!
//! The disk operator decomposes into angular modes, each a singular radial
//! Sturm–Liouville problem. This crate builds those 1-D operators from a
//! field profile, discretizes them to symmetric tridiagonal matrices on an
//! offset grid, extracts eigenvalues below a threshold with certified Sturm
//! counts, and evaluates eigenvalue-moment (Riesz mean) bounds: the Berezin
//! and Laptev bounds, and a five-term bound combining two auxiliary
//! Schrödinger traces, two 1-D traces and a semiclassical flux term, with
//! branch selection on the integrality of the total flux.
//!
//! Module map:
//! - [`field`]: radial field profiles `B(r)` and their flux integrals
//! - [`quad`]: adaptive quadrature with endpoint-singularity substitution
//! - [`discretize`]: radial operators and their tridiagonal discretization
//! - [`eigensolve`]: Sturm-sequence bisection eigensolver
//! - [`spectral`]: mode windows, disk spectra, Riesz means and traces
//! - [`bounds`]: semiclassical constants and closed-form bound assembly
//! - [`verify`]: Bessel-zero oracle and end-to-end inequality checks

pub mod bounds;
pub mod discretize;
pub mod eigensolve;
mod error;
pub mod field;
pub mod quad;
pub mod spectral;
pub mod verify;

pub use bounds::{BoundBreakdown, Branch};
pub use discretize::{OperatorKind, RadialOperatorSpec, SymTridiagonal};
pub use error::{Error, Result};
pub use field::{FieldProfile, FluxIntegrality, ValidationReport};
pub use spectral::{AuxKind, DiskSpectrum, ModeSpectrum, Trace, WindowKind};
pub use verify::{BoundReport, ClassicalReport, ThresholdReport, Verdict};
