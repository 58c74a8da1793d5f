//! One-dimensional reduction: only normal incidence contributes.
//!
//! ```text
//! f_1d = (2 hbar / pi) int_0^inf dxi kappa_0 a/(1 - a),
//! a = r_- r_+ exp(-2 kappa_0 d),  kappa_0 = sqrt(eps) xi / c
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fresnel::{Polarization, Profile, Side};
use crate::materials::MaterialModel;
use crate::quadrature::{integrate_halfline, QuadratureResult, QuadratureSpec};
use crate::stack::Stack;
use crate::{C_LIGHT, HBAR};

const PREFACTOR: f64 = 2.0 * HBAR / PI;

/// One-dimensional force for imaginary-axis reflection functions
/// `r_-(xi)`, `r_+(xi)` on either side of a gap of width `d` filled with a
/// lossless `medium`.
pub fn force_1d<A, B>(
    r_minus: A,
    r_plus: B,
    medium: &MaterialModel,
    d: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    A: Fn(f64) -> Result<f64> + Sync,
    B: Fn(f64) -> Result<f64> + Sync,
{
    if medium.is_perfect_conductor() || !medium.is_lossless() {
        return Err(Error::InvalidGeometry(
            "the gap medium must be vacuum or a constant dielectric".into(),
        ));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidGeometry(format!(
            "gap width must be positive and finite, got {d}"
        )));
    }
    let integrand = |xi: f64| -> Result<f64> {
        let kappa0 = medium.epsilon_imag_axis(xi)?.sqrt() * xi / C_LIGHT;
        let a = r_minus(xi)? * r_plus(xi)? * (-2.0 * kappa0 * d).exp();
        Ok(kappa0 * a / (1.0 - a))
    };
    Ok(integrate_halfline(integrand, C_LIGHT / (2.0 * d), &spec.for_raw_integral(PREFACTOR))?.scaled(PREFACTOR))
}

/// [`force_1d`] with the normal-incidence reflections of the stacks
/// bounding layer `j`.
pub fn force_1d_for_stack(stack: &Stack, j: usize, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    let d = stack.probe(j)?;
    let r = |side: Side| {
        move |xi: f64| Profile::imaginary(stack, xi, 0.0)?.reflection(j, side, Polarization::S)
    };
    force_1d(r(Side::Minus), r(Side::Plus), &stack.layers()[j].material, d, spec)
}

/// `-2 Re[a/(1 - a)]`.
pub fn round_trip_form(a: Complex64) -> f64 {
    -2.0 * (a / (1.0 - a)).re
}

/// `1 - (1 - |a|^2)/|1 - a|^2`.
pub fn modulus_form(a: Complex64) -> f64 {
    1.0 - (1.0 - a.norm_sqr()) / (1.0 - a).norm_sqr()
}
