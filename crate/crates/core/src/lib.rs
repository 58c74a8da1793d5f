//! Casimir pressure and energy in planar multilayers of dispersive,
//! absorbing media.
//!
//! The force per unit area in a lossless layer `j` of a stack is an
//! imaginary-frequency integral over the round-trip denominators
//! `D_q = 1 - r_{j-} r_{j+} exp(-2 kappa_j d_j)` built from the generalized
//! Fresnel coefficients of the two bounding sub-stacks:
//!
//! - [`materials`]: dielectric response on both frequency axes.
//! - [`fresnel`]: kinematics, interface coefficients and the stack recursion.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration on half-lines.
//! - [`casimir`]: force, energy, inter-layer relations, slab in a cavity.
//! - [`greens`]: real-frequency check of the equal-point Green function.
//! - [`io`] and [`cli`]: stack files, CSV output and the `casimir` binary.

pub mod casimir;
pub mod cli;
pub mod error;
pub mod fresnel;
pub mod greens;
pub mod io;
pub mod materials;
pub mod quadrature;
pub mod stack;

pub use error::{Error, Result};
pub use fresnel::{Polarization, Side, SpectralPoint};
pub use materials::MaterialModel;
pub use quadrature::{QuadratureResult, QuadratureSpec};
pub use stack::{Layer, Stack, Thickness};

/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054571817e-34;

/// Speed of light in vacuum [m/s].
pub const C_LIGHT: f64 = 2.99792458e8;
