//! Numerical toolkit for the complex A-field form of Maxwell's equations.
//!
//! The electromagnetic field is packed into a single complex 3-vector
//! `A = √ε E + i √μ H` which satisfies the first-order equation
//! `−c⁻¹ ∂t A − i rot A = j` with complex current `j = √μ jᴱ − i √ε jᴴ`.
//! Everything in this crate is built around that formulation:
//!
//! * [`field`] — field conversions, energy density, Poynting vector, and
//!   pointwise conservation-law residuals;
//! * [`shock`] — jump conditions and surface densities on wave fronts;
//! * [`kernels`] — retarded, Helmholtz and Newtonian potentials plus the
//!   causal Green-tensor convolution;
//! * [`solvers`] — the Cauchy, monochromatic and stationary solution
//!   regimes, with closed-form reference fields;
//! * [`spectral`] — an independent brute-force oracle evolving the field
//!   equation on a periodic grid with exact per-mode integration.

pub mod error;
pub mod fd;
pub mod field;
pub mod kernels;
pub mod medium;
pub mod quad;
pub mod shock;
pub mod snapshot;
pub mod solvers;
pub mod source;
pub mod spectral;
pub mod vec3;

pub use error::{Error, Result};
pub use medium::Medium;
pub use num_complex::Complex64;
pub use vec3::{ComplexVec3, Vec3};
