//! Force and energy in one layer expressed through another.
//!
//! For layers `j < l` the round-trip denominators obey
//! `D_l (1 - r_{j/l} r_{j-} e_j) = D_j (1 - r_{l/j} r_{l+} e_l)`, where
//! `r_{j/l}` is the reflection seen from `j` of the layers strictly between
//! `j` and `l` terminated by `l`, and `e_m = exp(-2 kappa_m d_m)`.

use super::{light_line, EnergyResult, ForceResult, ENERGY_PREFACTOR, FORCE_PREFACTOR};
use crate::error::{Error, Result};
use crate::fresnel::{Polarization, Profile, Side};
use crate::quadrature::{integrate_xi_kappa, ImagMode, QuadratureSpec};
use crate::stack::Stack;

/// `(x_j, x_l, D_j)` with `x_j = r_{j/l} r_{j-} e_j` and
/// `x_l = r_{l/j} r_{l+} e_l`.
fn cross_terms(profile: &Profile<f64>, j: usize, l: usize, pol: Polarization) -> Result<(f64, f64, f64)> {
    let x_j = profile.reflection_between(j, l, pol)? * profile.reflection(j, Side::Minus, pol)? * profile.round_trip(j)?;
    let x_l = profile.reflection_between(l, j, pol)? * profile.reflection(l, Side::Plus, pol)? * profile.round_trip(l)?;
    Ok((x_j, x_l, profile.d_function(j, pol)?))
}

fn check_pair(stack: &Stack, j: usize, l: usize) -> Result<(f64, f64)> {
    if j > l {
        return Err(Error::LayerOrder { j, l });
    }
    Ok((stack.probe(j)?, stack.probe(l)?))
}

/// `E_l = E_j + hbar/(4 pi^2) int dxi int dk k sum_q ln[(1 - x_l)/(1 - x_j)]`.
pub fn energy_via_relation(
    stack: &Stack,
    j: usize,
    l: usize,
    energy_j: &EnergyResult,
    spec: &QuadratureSpec,
) -> Result<EnergyResult> {
    let (d_j, d_l) = check_pair(stack, j, l)?;
    if j == l {
        return Ok(*energy_j);
    }
    let integrand = |m: ImagMode| -> Result<f64> {
        let profile = Profile::imaginary(stack, m.xi, m.k_sq)?;
        let mut sum = 0.0;
        for pol in Polarization::BOTH {
            let (x_j, x_l, _) = cross_terms(&profile, j, l, pol)?;
            sum += (-x_l).ln_1p() - (-x_j).ln_1p();
        }
        Ok(sum)
    };
    let raw = integrate_xi_kappa(
        light_line(stack, j),
        integrand,
        d_j.min(d_l),
        &spec.for_raw_integral(ENERGY_PREFACTOR),
    )?;
    let quadrature = energy_j.quadrature.combined(raw.scaled(ENERGY_PREFACTOR));
    Ok(EnergyResult {
        energy: quadrature.value,
        quadrature,
    })
}

/// For two layers of the same medium,
/// `f_{l-} = f_{j-} + hbar/(2 pi^2) int dxi int dk k kappa sum_q (1/D_j) [(1 - x_j)/(1 - x_l) - 1]`.
pub fn force_via_relation(
    stack: &Stack,
    j: usize,
    l: usize,
    force_j: &ForceResult,
    spec: &QuadratureSpec,
) -> Result<ForceResult> {
    let (d_j, d_l) = check_pair(stack, j, l)?;
    if stack.layers()[j].material != stack.layers()[l].material {
        return Err(Error::MismatchedMedia { j, l });
    }
    if j == l {
        return Ok(*force_j);
    }
    let integrand = |m: ImagMode| -> Result<f64> {
        let profile = Profile::imaginary(stack, m.xi, m.k_sq)?;
        let mut sum = 0.0;
        for pol in Polarization::BOTH {
            let (x_j, x_l, d) = cross_terms(&profile, j, l, pol)?;
            sum += (x_l - x_j) / (d * (1.0 - x_l));
        }
        Ok(m.kappa * sum)
    };
    let raw = integrate_xi_kappa(
        light_line(stack, j),
        integrand,
        d_j.min(d_l),
        &spec.for_raw_integral(FORCE_PREFACTOR),
    )?;
    Ok(ForceResult::from_quadrature(
        force_j.quadrature.combined(raw.scaled(FORCE_PREFACTOR)),
    ))
}
