//! A slab inside a planar cavity, and the ideal-mirror cavity.

use std::f64::consts::PI;

use super::{light_line, FORCE_PREFACTOR};
use crate::error::{Error, Result};
use crate::fresnel::{interface_coeffs, perfect_conductor_coeffs, Polarization, Profile, Side};
use crate::materials::MaterialModel;
use crate::quadrature::{integrate_halfline, integrate_xi_kappa, ImagMode, QuadratureResult, QuadratureSpec};
use crate::stack::{Layer, Stack, Thickness};
use crate::{C_LIGHT, HBAR};

/// A bounding mirror of the cavity.
#[derive(Debug, Clone, PartialEq)]
pub enum Mirror {
    PerfectConductor,
    /// Layers in stack order (`+z`). The outermost one must be
    /// semi-infinite or a perfect conductor.
    Stack(Vec<Layer>),
}

impl Mirror {
    fn layers(&self) -> Vec<Layer> {
        match self {
            Mirror::PerfectConductor => vec![Layer::mirror()],
            Mirror::Stack(layers) => layers.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slab {
    pub material: MaterialModel,
    pub thickness: f64,
}

/// `left | medium (d1) | slab | medium (d2) | right`.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityConfig {
    pub medium: MaterialModel,
    pub slab: Slab,
    pub d1: f64,
    pub d2: f64,
    pub left_mirror: Mirror,
    pub right_mirror: Mirror,
}

fn positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidGeometry(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}

impl CavityConfig {
    pub fn validate(&self) -> Result<()> {
        positive("d1", self.d1)?;
        positive("d2", self.d2)?;
        positive("slab thickness", self.slab.thickness)?;
        self.slab.material.validate()?;
        if self.medium.is_perfect_conductor() || !self.medium.is_lossless() {
            return Err(Error::InvalidGeometry(
                "the cavity medium must be vacuum or a constant dielectric".into(),
            ));
        }
        self.assembled().map(|_| ())
    }

    /// Indices of the two gaps in [`CavityConfig::assembled`].
    pub fn gap_indices(&self) -> (usize, usize) {
        let left = self.left_mirror.layers().len();
        (left, left + 2)
    }

    /// The full multilayer `left, medium(d1), slab, medium(d2), right`.
    pub fn assembled(&self) -> Result<Stack> {
        let mut layers = self.left_mirror.layers();
        layers.push(Layer::finite(self.medium, self.d1));
        layers.push(Layer::finite(self.slab.material, self.slab.thickness));
        layers.push(Layer::finite(self.medium, self.d2));
        layers.extend(self.right_mirror.layers());
        Stack::new(layers)
    }

    fn left_stack(&self) -> Result<Stack> {
        let mut layers = self.left_mirror.layers();
        layers.push(Layer::half_space(self.medium));
        Stack::new(layers)
    }

    fn right_stack(&self) -> Result<Stack> {
        let mut layers = vec![Layer::half_space(self.medium)];
        layers.extend(self.right_mirror.layers());
        Stack::new(layers)
    }
}

/// Reflection and transmission of the isolated slab seen from the medium.
fn slab_coefficients(
    config: &CavityConfig,
    pol: Polarization,
    eps: f64,
    kappa: f64,
    xi: f64,
    k_sq: f64,
) -> Result<(f64, f64)> {
    if config.slab.material.is_perfect_conductor() {
        return Ok((perfect_conductor_coeffs::<f64>(pol).r, 0.0));
    }
    let eps_s = config.slab.material.epsilon_imag_axis(xi)?;
    let q = xi / C_LIGHT;
    let kappa_s = (eps_s * q * q + k_sq).sqrt();
    let rho = interface_coeffs(pol, eps, eps_s, kappa, kappa_s)?.r;
    let l = config.slab.thickness;
    let e = (-2.0 * kappa_s * l).exp();
    let den = 1.0 - rho * rho * e;
    Ok((
        rho * (1.0 - e) / den,
        (1.0 - rho * rho) * (-kappa_s * l).exp() / den,
    ))
}

/// Net pressure on the slab along `+z` [N/m^2].
pub fn slab_in_cavity_force(config: &CavityConfig, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    config.validate()?;
    let left = config.left_stack()?;
    let right = config.right_stack()?;
    let gap = left.n();
    let (d1, d2) = (config.d1, config.d2);
    let integrand = |m: ImagMode| -> Result<f64> {
        let lp = Profile::imaginary(&left, m.xi, m.k_sq)?;
        let rp = Profile::imaginary(&right, m.xi, m.k_sq)?;
        let eps = config.medium.epsilon_imag_axis(m.xi)?;
        let e1 = (-2.0 * m.kappa * d1).exp();
        let e2 = (-2.0 * m.kappa * d2).exp();
        let mut sum = 0.0;
        for pol in Polarization::BOTH {
            let r1 = lp.reflection(gap, Side::Minus, pol)?;
            let r2 = rp.reflection(0, Side::Plus, pol)?;
            let (r, t) = slab_coefficients(config, pol, eps, m.kappa, m.xi, m.k_sq)?;
            let den = 1.0 - r * (r1 * e1 + r2 * e2) + (r * r - t * t) * r1 * r2 * e1 * e2;
            sum += r * (r2 * e2 - r1 * e1) / den;
        }
        Ok(m.kappa * sum)
    };
    let raw = integrate_xi_kappa(
        light_line(&left, gap),
        integrand,
        d1.min(d2),
        &spec.for_raw_integral(FORCE_PREFACTOR),
    )?;
    Ok(raw.scaled(FORCE_PREFACTOR))
}

/// Pressure between two ideal mirrors computed in two independent ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealCavityForce {
    /// From the double integral over `xi` and `k`.
    pub pressure: f64,
    pub double: QuadratureResult,
    /// From the single integral over `xi` with the `k` integral done in
    /// closed form.
    pub single: QuadratureResult,
}

/// Ideal mirrors separated by `d` of a lossless `medium`.
///
/// Fails with [`Error::FormMismatch`] when both forms converge but differ
/// by more than `10 rel_tol`.
pub fn ideal_cavity_force(medium: &MaterialModel, d: f64, spec: &QuadratureSpec) -> Result<IdealCavityForce> {
    positive("d", d)?;
    if medium.is_perfect_conductor() || !medium.is_lossless() {
        return Err(Error::InvalidGeometry(
            "the cavity medium must be vacuum or a constant dielectric".into(),
        ));
    }
    let stack = Stack::new(vec![
        Layer::mirror(),
        Layer {
            material: *medium,
            thickness: Thickness::Finite(d),
        },
        Layer::mirror(),
    ])?;
    let double = integrate_xi_kappa(
        light_line(&stack, 1),
        |m: ImagMode| Ok(m.kappa * 2.0 / (2.0 * m.kappa * d).exp_m1()),
        d,
        &spec.for_raw_integral(FORCE_PREFACTOR),
    )?
    .scaled(FORCE_PREFACTOR);

    let prefactor = HBAR / (3.0 * PI * PI * C_LIGHT.powi(3));
    let single = integrate_halfline(
        |xi| {
            let eps = medium.epsilon_imag_axis(xi)?;
            let n = eps.sqrt();
            let dn = medium.epsilon_imag_axis_derivative(xi)? / (2.0 * n);
            let nx = n * xi;
            let growth = 3.0 * nx * nx * (n + xi * dn);
            Ok(xi * growth / (2.0 * nx * d / C_LIGHT).exp_m1())
        },
        C_LIGHT / (2.0 * d),
        &spec.for_raw_integral(prefactor),
    )?
    .scaled(prefactor);

    if double.converged
        && single.converged
        && (double.value - single.value).abs() > 10.0 * spec.rel_tol * double.value.abs()
    {
        return Err(Error::FormMismatch {
            double: double.value,
            single: single.value,
        });
    }
    Ok(IdealCavityForce {
        pressure: double.value,
        double,
        single,
    })
}
