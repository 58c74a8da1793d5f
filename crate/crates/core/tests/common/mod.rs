#![allow(dead_code)]

use casimir_core::casimir::{CavityConfig, Mirror, Slab};
use casimir_core::fresnel::Polarization;
use casimir_core::{Layer, MaterialModel, Stack, C_LIGHT, HBAR};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

pub fn lossless_material(rng: &mut ChaCha8Rng) -> MaterialModel {
    if rng.random_bool(0.4) {
        MaterialModel::Vacuum
    } else {
        MaterialModel::Constant {
            epsilon: rng.random_range(1.0..8.0),
        }
    }
}

pub fn absorbing_material(rng: &mut ChaCha8Rng) -> MaterialModel {
    match rng.random_range(0..4) {
        0 => lossless_material(rng),
        1 | 2 => MaterialModel::Drude {
            omega_p: log_uniform(rng, 1e15, 2e16),
            gamma: log_uniform(rng, 1e13, 1e15),
        },
        _ => MaterialModel::Lorentz {
            omega_0: log_uniform(rng, 1e14, 1e16),
            omega_p: log_uniform(rng, 1e14, 1e16),
            gamma: log_uniform(rng, 1e12, 1e15),
        },
    }
}

/// `layers` layers with absorbing half-spaces; the interior indices in
/// `lossless` are vacuum or constant dielectrics.
pub fn absorbing_stack(rng: &mut ChaCha8Rng, layers: usize, lossless: &[usize]) -> Stack {
    let mut out = Vec::with_capacity(layers);
    for i in 0..layers {
        let material = if lossless.contains(&i) {
            lossless_material(rng)
        } else {
            absorbing_material(rng)
        };
        if i == 0 || i == layers - 1 {
            out.push(Layer::half_space(material));
        } else {
            out.push(Layer::finite(material, log_uniform(rng, 2e-8, 8e-7)));
        }
    }
    Stack::new(out).unwrap()
}

pub fn random_cavity(rng: &mut ChaCha8Rng) -> CavityConfig {
    let mirror = |rng: &mut ChaCha8Rng| {
        let mut layers = vec![Layer::half_space(absorbing_material(rng))];
        if rng.random_bool(0.5) {
            layers.push(Layer::finite(absorbing_material(rng), log_uniform(rng, 1e-8, 2e-7)));
        }
        layers
    };
    let left = mirror(rng);
    let mut right = mirror(rng);
    right.reverse();
    CavityConfig {
        medium: lossless_material(rng),
        slab: Slab {
            material: absorbing_material(rng),
            thickness: log_uniform(rng, 2e-8, 5e-7),
        },
        d1: log_uniform(rng, 2e-7, 1.5e-6),
        d2: log_uniform(rng, 2e-7, 1.5e-6),
        left_mirror: Mirror::Stack(left),
        right_mirror: Mirror::Stack(right),
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Spectral axis of the independent oracles.
#[derive(Debug, Clone, Copy)]
pub enum Freq {
    Real(f64),
    Imaginary(f64),
}

fn layer_eps(m: &MaterialModel, f: Freq) -> Complex64 {
    match f {
        Freq::Real(w) => m.epsilon_real_axis(w).unwrap(),
        Freq::Imaginary(xi) => Complex64::new(m.epsilon_imag_axis(xi).unwrap(), 0.0),
    }
}

/// Perpendicular wavenumber with the decaying branch on either axis.
fn layer_beta(eps: Complex64, f: Freq, k: f64) -> Complex64 {
    match f {
        Freq::Real(w) => {
            let q = w / C_LIGHT;
            let b = (eps * q * q - k * k).sqrt();
            if b.im < 0.0 || (b.im == 0.0 && b.re < 0.0) {
                -b
            } else {
                b
            }
        }
        Freq::Imaginary(xi) => {
            let q = xi / C_LIGHT;
            Complex64::new(0.0, (eps.re * q * q + k * k).sqrt())
        }
    }
}

/// Characteristic-matrix (Abeles) reflection seen from the first layer of
/// `layers`, the last layer acting as the substrate. Thicknesses of the
/// first and last entries are ignored.
pub fn transfer_matrix_reflection(layers: &[(MaterialModel, f64)], pol: Polarization, f: Freq, k: f64) -> Complex64 {
    let i = Complex64::i();
    let admittance = |m: &MaterialModel| {
        let eps = layer_eps(m, f);
        let b = layer_beta(eps, f, k);
        let y = match pol {
            Polarization::S => b,
            Polarization::P => b / eps,
        };
        (b, y)
    };
    let n = layers.len() - 1;
    let (_, y_sub) = admittance(&layers[n].0);
    let mut e = Complex64::new(1.0, 0.0);
    let mut h = y_sub;
    for (m, d) in layers[1..n].iter().rev() {
        let (b, y) = admittance(m);
        let delta = b * *d;
        let (c, s) = (delta.cos(), delta.sin());
        let e_new = c * e - i * s / y * h;
        let h_new = -i * y * s * e + c * h;
        e = e_new;
        h = h_new;
    }
    let (_, y0) = admittance(&layers[0].0);
    (y0 * e - h) / (y0 * e + h)
}

/// `(material, thickness)` of every layer; half-spaces get 0.
pub fn layer_list(stack: &Stack) -> Vec<(MaterialModel, f64)> {
    stack
        .layers()
        .iter()
        .map(|l| match l.thickness {
            casimir_core::Thickness::Finite(d) => (l.material, d),
            casimir_core::Thickness::SemiInfinite => (l.material, 0.0),
        })
        .collect()
}

/// Pressure between two half-spaces of constant `eps` across a vacuum gap
/// `d`, on a fixed trapezoidal grid.
///
/// With `xi = c kappa t` the measure `dxi dk k kappa` becomes
/// `c kappa^3 dkappa dt`, `t in [0, 1]`, and the reflection coefficients
/// depend on `t` only.
pub fn lifshitz_brute_force(eps: f64, d: f64, n: usize) -> f64 {
    let x_max = 80.0;
    let hx = x_max / n as f64;
    let ht = 1.0 / n as f64;
    let t_integral = |x: f64| -> f64 {
        let e = (-x).exp();
        let mut acc = 0.0;
        for it in 0..=n {
            let t = it as f64 * ht;
            let root = (1.0 + (eps - 1.0) * t * t).sqrt();
            let rs = (1.0 - root) / (1.0 + root);
            let rp = (eps - root) / (eps + root);
            let mut v = 0.0;
            for r in [rs, rp] {
                let a = r * r * e;
                v += a / (1.0 - a);
            }
            let w = if it == 0 || it == n { 0.5 } else { 1.0 };
            acc += w * v;
        }
        acc * ht
    };
    let sum: f64 = (1..=n)
        .into_par_iter()
        .map(|ix| {
            let x = ix as f64 * hx;
            let w = if ix == n { 0.5 } else { 1.0 };
            w * x.powi(3) * t_integral(x)
        })
        .sum();
    // kappa = x / (2d)
    let kappa_integral = sum * hx / (2.0 * d).powi(4);
    HBAR * C_LIGHT / (2.0 * std::f64::consts::PI.powi(2)) * kappa_integral
}

/// Largest deviation between the recursion and the characteristic-matrix
/// oracle for `r_{j-}` and `r_{j+}` of every layer, over `draws` random
/// absorbing stacks at random points on both frequency axes.
pub fn max_transfer_matrix_deviation(seed: u64, draws: usize) -> f64 {
    use casimir_core::fresnel::{stack_reflection, Side, SpectralPoint};
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let layers = rng.random_range(2..7);
        let stack = absorbing_stack(&mut rng, layers, &[]);
        let w = log_uniform(&mut rng, 1e13, 3e15);
        let k = rng.random_range(0.0..3.0) * w / C_LIGHT;
        let list = layer_list(&stack);
        for (sp, f) in [
            (SpectralPoint::real(w, k), Freq::Real(w)),
            (SpectralPoint::imaginary(w, k), Freq::Imaginary(w)),
        ] {
            for pol in Polarization::BOTH {
                for j in 0..stack.len() {
                    if j < stack.n() {
                        let ours = stack_reflection(&stack, j, Side::Plus, pol, sp).unwrap();
                        let oracle = transfer_matrix_reflection(&list[j..], pol, f, k);
                        worst = worst.max((ours - oracle).norm() / oracle.norm().max(1.0));
                    }
                    if j > 0 {
                        let ours = stack_reflection(&stack, j, Side::Minus, pol, sp).unwrap();
                        let mut rev = list[..=j].to_vec();
                        rev.reverse();
                        let oracle = transfer_matrix_reflection(&rev, pol, f, k);
                        worst = worst.max((ours - oracle).norm() / oracle.norm().max(1.0));
                    }
                }
            }
        }
    }
    worst
}
