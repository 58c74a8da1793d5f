//! Casimir pressure and energy per unit area in a lossless layer.
//!
//! With `a_q = r_{j-} r_{j+} exp(-2 kappa_j d_j)` and `D_q = 1 - a_q`,
//!
//! ```text
//! f_{j-} = hbar/(2 pi^2) int dxi int dk k kappa_j sum_q (1 - D_q)/D_q
//! E_j    = hbar/(4 pi^2) int dxi int dk k        sum_q ln D_q
//! ```
//!
//! `f_{j-}` is the force per unit area on the left bounding stack along `+z`
//! (positive when the two stacks attract) and `f_{j+} = -f_{j-}`.

mod cavity;
mod one_d;
mod relations;

use std::f64::consts::PI;

use crate::error::Result;
use crate::fresnel::{Polarization, Profile};
use crate::quadrature::{integrate_xi_kappa, ImagMode, QuadratureResult, QuadratureSpec};
use crate::stack::Stack;
use crate::{C_LIGHT, HBAR};

pub use cavity::{ideal_cavity_force, slab_in_cavity_force, CavityConfig, IdealCavityForce, Mirror, Slab};
pub use one_d::{force_1d, force_1d_for_stack, modulus_form, round_trip_form};
pub use relations::{energy_via_relation, force_via_relation};

/// `hbar / (2 pi^2)`
pub(crate) const FORCE_PREFACTOR: f64 = HBAR / (2.0 * PI * PI);
/// `hbar / (4 pi^2)`
pub(crate) const ENERGY_PREFACTOR: f64 = HBAR / (4.0 * PI * PI);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// Pressure on the left bounding stack along `+z` [N/m^2].
    pub f_minus: f64,
    /// Pressure on the right bounding stack, `-f_minus`.
    pub f_plus: f64,
    pub quadrature: QuadratureResult,
}

impl ForceResult {
    pub(crate) fn from_quadrature(quadrature: QuadratureResult) -> Self {
        ForceResult {
            f_minus: quadrature.value,
            f_plus: -quadrature.value,
            quadrature,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    /// Areal energy density [J/m^2].
    pub energy: f64,
    pub quadrature: QuadratureResult,
}

/// `kappa_0(xi) = sqrt(eps(i xi)) xi / c` of layer `j`.
pub(crate) fn light_line(stack: &Stack, j: usize) -> impl Fn(f64) -> Result<f64> + Sync + '_ {
    move |xi| {
        let eps = stack.layers()[j].material.epsilon_imag_axis(xi)?;
        Ok(eps.sqrt() * xi / C_LIGHT)
    }
}

/// `a_q = r_{j-} r_{j+} exp(-2 kappa_j d_j)` for both polarizations.
pub(crate) fn round_trip_products(profile: &Profile<f64>, j: usize) -> Result<[f64; 2]> {
    let mut out = [0.0; 2];
    for (slot, pol) in out.iter_mut().zip(Polarization::BOTH) {
        let pair = profile.reflection_pair(j, pol)?;
        *slot = pair.r_minus * pair.r_plus * profile.round_trip(j)?;
    }
    Ok(out)
}

pub fn force_per_area(stack: &Stack, j: usize, spec: &QuadratureSpec) -> Result<ForceResult> {
    let d = stack.probe(j)?;
    let integrand = |m: ImagMode| -> Result<f64> {
        let profile = Profile::imaginary(stack, m.xi, m.k_sq)?;
        let sum: f64 = round_trip_products(&profile, j)?
            .iter()
            .map(|a| a / (1.0 - a))
            .sum();
        Ok(m.kappa * sum)
    };
    let raw = integrate_xi_kappa(
        light_line(stack, j),
        integrand,
        d,
        &spec.for_raw_integral(FORCE_PREFACTOR),
    )?;
    Ok(ForceResult::from_quadrature(raw.scaled(FORCE_PREFACTOR)))
}

pub fn energy_per_area(stack: &Stack, j: usize, spec: &QuadratureSpec) -> Result<EnergyResult> {
    let d = stack.probe(j)?;
    let integrand = |m: ImagMode| -> Result<f64> {
        let profile = Profile::imaginary(stack, m.xi, m.k_sq)?;
        Ok(round_trip_products(&profile, j)?
            .iter()
            .map(|a| (-a).ln_1p())
            .sum())
    };
    let raw = integrate_xi_kappa(
        light_line(stack, j),
        integrand,
        d,
        &spec.for_raw_integral(ENERGY_PREFACTOR),
    )?;
    let quadrature = raw.scaled(ENERGY_PREFACTOR);
    Ok(EnergyResult {
        energy: quadrature.value,
        quadrature,
    })
}
