//! Equal-point scattered Green function in a lossless layer on the real
//! frequency axis.
//!
//! All quantities are per mode: the common measure `(i/2 pi) int d^2k` is
//! stripped, so every function here is pointwise in `(omega, k)`. With
//! `R_q = r_{q-} r_{q+} exp(2 i beta d)` and `e_{-/+} = exp(2 i beta z_{-/+})`,
//! `z_- = z`, `z_+ = d - z`:
//!
//! ```text
//! g_kk = beta/(kt^2 D_p)      [2 R_p - r_{p-} e_- - r_{p+} e_+]
//! g_nn = 1/(beta D_s)         [2 R_s + r_{s-} e_- + r_{s+} e_+]
//! g_zz = k^2/(kt^2 beta D_p)  [2 R_p + r_{p-} e_- + r_{p+} e_+]
//! ```
//!
//! The magnetic components are `kt^2` times the same expressions with
//! `p <-> s`. The stress combination
//! `kt^2 (g_zz - g_kk - g_nn) + gB_zz - gB_kk - gB_nn` is independent of `z`
//! and equals `-4 beta sum_q R_q / D_q`.

use num_complex::{Complex, Complex64};
use num_traits::Num;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::fresnel::{Polarization, Profile};
use crate::materials::MaterialModel;
use crate::stack::{Layer, Stack};
use crate::C_LIGHT;

/// Relative tolerance of the built-in verification.
pub const VERIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensDiagonal {
    pub g_kk: Complex64,
    pub g_nn: Complex64,
    pub g_zz: Complex64,
    pub gb_kk: Complex64,
    pub gb_nn: Complex64,
    pub gb_zz: Complex64,
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct PolData<T = Complex64> {
    r_minus: T,
    r_plus: T,
    d: T,
}

/// `exp(2 i beta d)`, `exp(2 i beta z_-)`, `exp(2 i beta z_+)`.
struct Phases<T = Complex64> {
    round_trip: T,
    minus: T,
    plus: T,
}

/// Scalar of the component formulas.
trait Scalar: Copy + Num + std::ops::Neg<Output = Self> {
    fn recip(self) -> Self;
}

impl Scalar for f64 {
    fn recip(self) -> Self {
        1.0 / self
    }
}

impl Scalar for TwoFloat {
    // `TwoFloat` division is only accurate to about one ulp of `f64`; one
    // Newton step on the `f64` reciprocal restores full precision.
    fn recip(self) -> Self {
        let y = TwoFloat::from(1.0 / self.hi());
        y + y * (TwoFloat::from(1.0) - self * y)
    }
}

fn div<T: Scalar>(a: Complex<T>, b: Complex<T>) -> Complex<T> {
    a * b.conj() * b.norm_sqr().recip()
}

/// `[kk, nn, zz]` with `kk`, `zz` built from `tm` and `nn` from `te`.
fn electric<T: Scalar>(
    beta: Complex<T>,
    k_sq: Complex<T>,
    kt_sq: Complex<T>,
    ph: &Phases<Complex<T>>,
    tm: &PolData<Complex<T>>,
    te: &PolData<Complex<T>>,
) -> [Complex<T>; 3] {
    let two = Complex::new(T::one() + T::one(), T::zero());
    let rr_tm = two * tm.r_minus * tm.r_plus * ph.round_trip;
    let rr_te = two * te.r_minus * te.r_plus * ph.round_trip;
    let sum_tm = tm.r_minus * ph.minus + tm.r_plus * ph.plus;
    let sum_te = te.r_minus * ph.minus + te.r_plus * ph.plus;
    [
        div(beta * (rr_tm - sum_tm), kt_sq * tm.d),
        div(rr_te + sum_te, beta * te.d),
        div(k_sq * (rr_tm + sum_tm), kt_sq * beta * tm.d),
    ]
}

#[derive(Debug, Clone, Copy)]
struct Mode {
    beta: Complex64,
    k: f64,
    /// `kt^2 = eps omega^2 / c^2`.
    kt_sq: f64,
    width: f64,
    /// `exp(i beta d)`.
    single_pass: Complex64,
    p: PolData,
    s: PolData,
}

impl Mode {
    fn new(stack: &Stack, j: usize, z: f64, omega: f64, k: f64) -> Result<Mode> {
        let width = stack.probe(j)?;
        if !(0.0..=width).contains(&z) {
            return Err(Error::PositionOutsideLayer { z, thickness: width });
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::NonPositiveFrequency(omega));
        }
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::InvalidSpectralPoint(format!(
                "k must be non-negative and finite, got {k}"
            )));
        }
        let profile = Profile::real(stack, omega, k)?;
        let (eps, beta) = profile.medium(j)?;
        if beta == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidSpectralPoint(
                "beta vanishes at the light line".into(),
            ));
        }
        let pol = |q: Polarization| -> Result<PolData> {
            let pair = profile.reflection_pair(j, q)?;
            Ok(PolData {
                r_minus: pair.r_minus,
                r_plus: pair.r_plus,
                d: pair.d,
            })
        };
        let q = omega / C_LIGHT;
        Ok(Mode {
            beta,
            k,
            kt_sq: eps.re * q * q,
            width,
            single_pass: (Complex64::i() * beta * width).exp(),
            p: pol(Polarization::P)?,
            s: pol(Polarization::S)?,
        })
    }

    fn round_trip(&self) -> Complex64 {
        self.single_pass * self.single_pass
    }

    fn phases(&self, z: f64) -> Phases {
        let i = Complex64::i();
        Phases {
            round_trip: self.round_trip(),
            minus: (2.0 * i * self.beta * z).exp(),
            plus: (2.0 * i * self.beta * (self.width - z)).exp(),
        }
    }

    fn diagonal(&self, z: f64) -> GreensDiagonal {
        let kt_sq = Complex64::new(self.kt_sq, 0.0);
        let ph = self.phases(z);
        let k_sq = Complex64::new(self.k * self.k, 0.0);
        let [g_kk, g_nn, g_zz] = electric(self.beta, k_sq, kt_sq, &ph, &self.p, &self.s);
        let [gb_kk, gb_nn, gb_zz] = electric(self.beta, k_sq, kt_sq, &ph, &self.s, &self.p).map(|g| g * kt_sq);
        GreensDiagonal {
            g_kk,
            g_nn,
            g_zz,
            gb_kk,
            gb_nn,
            gb_zz,
            z,
        }
    }

    /// The stress combination of the diagonal components, evaluated in
    /// double-double arithmetic with `kt^2 = beta^2 + k^2`. The combination
    /// cancels terms that exceed the result by up to `1/|r_- r_+ R|`.
    fn bracket(&self, z: f64) -> Complex64 {
        let up = |c: Complex64| Complex::new(TwoFloat::from(c.re), TwoFloat::from(c.im));
        let pol = |q: &PolData| PolData {
            r_minus: up(q.r_minus),
            r_plus: up(q.r_plus),
            d: up(q.d),
        };
        let ph = self.phases(z);
        let ph = Phases {
            round_trip: up(ph.round_trip),
            minus: up(ph.minus),
            plus: up(ph.plus),
        };
        let beta = up(self.beta);
        let k = TwoFloat::from(self.k);
        let k_sq = Complex::new(k * k, TwoFloat::from(0.0));
        let kt_sq = beta * beta + k_sq;
        let (p, s) = (pol(&self.p), pol(&self.s));
        let [kk, nn, zz] = electric(beta, k_sq, kt_sq, &ph, &p, &s);
        let [bkk, bnn, bzz] = electric(beta, k_sq, kt_sq, &ph, &s, &p);
        let total = kt_sq * (zz - kk - nn) + kt_sq * (bzz - bkk - bnn);
        Complex64::new(f64::from(total.re), f64::from(total.im))
    }

    fn closed_form(&self) -> Complex64 {
        let e = self.round_trip();
        let term = |q: &PolData| q.r_minus * q.r_plus * e / q.d;
        -4.0 * self.beta * (term(&self.p) + term(&self.s))
    }
}

pub fn greens_diagonal(stack: &Stack, j: usize, z: f64, omega: f64, k: f64) -> Result<GreensDiagonal> {
    Ok(Mode::new(stack, j, z, omega, k)?.diagonal(z))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressBracket {
    /// `kt^2 (g_zz - g_kk - g_nn) + gB_zz - gB_kk - gB_nn`.
    pub from_greens: Complex64,
    /// `-4 beta sum_q R_q / D_q`.
    pub closed_form: Complex64,
}

pub fn stress_bracket(stack: &Stack, j: usize, z: f64, omega: f64, k: f64) -> Result<StressBracket> {
    let mode = Mode::new(stack, j, z, omega, k)?;
    Ok(StressBracket {
        from_greens: mode.bracket(z),
        closed_form: mode.closed_form(),
    })
}

pub type Dyadic = [[Complex64; 3]; 3];

/// Electric and magnetic equal-point dyadics assembled term by term from
/// the polarization vectors and averaged over `k^ = +x^` and `-x^`, so
/// that `xx`, `yy`, `zz` are the `kk`, `nn`, `zz` components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualPointDyadics {
    pub electric: Dyadic,
    pub magnetic: Dyadic,
}

type Vec3 = [Complex64; 3];

fn outer(a: &Vec3, b: &Vec3) -> Dyadic {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (row, ai) in out.iter_mut().zip(a) {
        for (cell, bj) in row.iter_mut().zip(b) {
            *cell = ai * bj;
        }
    }
    out
}

fn add_scaled(acc: &mut Dyadic, m: &Dyadic, s: Complex64) {
    for (ra, rm) in acc.iter_mut().zip(m) {
        for (a, x) in ra.iter_mut().zip(rm) {
            *a += s * x;
        }
    }
}

/// `e^-_p(k), e^+_p(k), e_s(k)` for in-plane direction `sign * x^`.
fn polarization_vectors(mode: &Mode, sign: f64) -> (Vec3, Vec3, Vec3) {
    let zero = Complex64::new(0.0, 0.0);
    let kt = mode.kt_sq.sqrt();
    let kz = Complex64::new(mode.k / kt, 0.0);
    let bk = mode.beta * sign / kt;
    let minus = [bk, zero, kz];
    let plus = [-bk, zero, kz];
    // k^ x z^ with k^ = sign x^.
    let n = [zero, Complex64::new(-sign, 0.0), zero];
    (minus, plus, n)
}

pub fn scattered_dyadics(stack: &Stack, j: usize, z: f64, omega: f64, k: f64) -> Result<EqualPointDyadics> {
    let mode = Mode::new(stack, j, z, omega, k)?;
    let i = Complex64::i();
    let b = mode.beta;
    let (zm, zp) = (z, mode.width - z);
    let phase = |x: f64| (i * b * x).exp();
    let zero = [[Complex64::new(0.0, 0.0); 3]; 3];
    let (mut electric, mut magnetic) = (zero, zero);

    for sign in [1.0, -1.0] {
        let (pm_k, pp_k, s_k) = polarization_vectors(&mode, sign);
        let (pm_mk, pp_mk, s_mk) = polarization_vectors(&mode, -sign);
        for q in Polarization::BOTH {
            let data = match q {
                Polarization::P => mode.p,
                Polarization::S => mode.s,
            };
            let ((em_k, ep_k, em_mk, ep_mk), (bm_k, bp_k, bm_mk, bp_mk)) = match q {
                Polarization::P => ((pm_k, pp_k, pm_mk, pp_mk), (s_k, s_k, s_mk, s_mk)),
                Polarization::S => ((s_k, s_k, s_mk, s_mk), (pm_k, pp_k, pm_mk, pp_mk)),
            };
            let weight = mode.single_pass / data.d * q.sign() / b * 0.5;
            let terms = |m_k: &Vec3, p_k: &Vec3, m_mk: &Vec3, p_mk: &Vec3| {
                let mut acc = zero;
                let c1 = data.r_minus * phase(zm);
                add_scaled(&mut acc, &outer(p_k, p_mk), c1 * phase(-zp));
                add_scaled(&mut acc, &outer(p_k, m_mk), c1 * data.r_plus * phase(zp));
                let c2 = data.r_plus * phase(zp);
                add_scaled(&mut acc, &outer(m_k, m_mk), c2 * phase(-zm));
                add_scaled(&mut acc, &outer(m_k, p_mk), c2 * data.r_minus * phase(zm));
                acc
            };
            add_scaled(&mut electric, &terms(&em_k, &ep_k, &em_mk, &ep_mk), weight);
            add_scaled(
                &mut magnetic,
                &terms(&bm_k, &bp_k, &bm_mk, &bp_mk),
                -mode.kt_sq * weight,
            );
        }
    }
    Ok(EqualPointDyadics { electric, magnetic })
}

/// One spectral point of the verification matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationCase {
    pub stack: Stack,
    pub j: usize,
    pub omega: f64,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerificationReport {
    pub cases: usize,
    /// Max over cases of `|bracket(z) - bracket(z_0)| / |bracket(z_0)|`.
    pub max_z_variation: f64,
    /// Max relative deviation of the bracket from the closed form.
    pub max_closed_form_deviation: f64,
    /// Max relative deviation of the diagonal components from the
    /// term-by-term dyadic assembly.
    pub max_dyadic_deviation: f64,
}

impl VerificationReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_z_variation < tol && self.max_closed_form_deviation < tol && self.max_dyadic_deviation < tol
    }
}

/// Fractions of the layer width at which each case is sampled.
pub const Z_SAMPLES: [f64; 5] = [0.0, 0.23, 0.5, 0.71, 1.0];

fn relative(a: Complex64, b: Complex64) -> f64 {
    let scale = b.norm();
    if scale == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / scale
    }
}

pub fn verify(cases: &[VerificationCase]) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        cases: cases.len(),
        ..Default::default()
    };
    for case in cases {
        let width = case.stack.probe(case.j)?;
        let mut reference = None;
        for frac in Z_SAMPLES {
            let z = frac * width;
            let bracket = stress_bracket(&case.stack, case.j, z, case.omega, case.k)?;
            let base = *reference.get_or_insert(bracket.from_greens);
            report.max_z_variation = report.max_z_variation.max(relative(bracket.from_greens, base));
            report.max_closed_form_deviation = report
                .max_closed_form_deviation
                .max(relative(bracket.from_greens, bracket.closed_form));

            let g = greens_diagonal(&case.stack, case.j, z, case.omega, case.k)?;
            let dy = scattered_dyadics(&case.stack, case.j, z, case.omega, case.k)?;
            let pairs = [
                (g.g_kk, dy.electric[0][0]),
                (g.g_nn, dy.electric[1][1]),
                (g.g_zz, dy.electric[2][2]),
                (g.gb_kk, dy.magnetic[0][0]),
                (g.gb_nn, dy.magnetic[1][1]),
                (g.gb_zz, dy.magnetic[2][2]),
            ];
            let scale = pairs.iter().map(|(a, _)| a.norm()).fold(0.0, f64::max);
            for (a, b) in pairs {
                let dev = if scale == 0.0 { b.norm() } else { (a - b).norm() / scale };
                report.max_dyadic_deviation = report.max_dyadic_deviation.max(dev);
            }
        }
    }
    Ok(report)
}

/// Absorbing stacks probed at propagating and evanescent `k`.
pub fn builtin_cases() -> Vec<VerificationCase> {
    let gold = MaterialModel::Drude {
        omega_p: 1.37e16,
        gamma: 5.32e13,
    };
    let silver = MaterialModel::Drude {
        omega_p: 1.35e16,
        gamma: 2.7e14,
    };
    let oxide = MaterialModel::Lorentz {
        omega_0: 2.4e15,
        omega_p: 3.1e15,
        gamma: 1.9e14,
    };
    let glass = MaterialModel::Constant { epsilon: 2.25 };
    let configs: Vec<(Vec<Layer>, usize)> = vec![
        (
            vec![
                Layer::half_space(gold),
                Layer::finite(oxide, 8e-8),
                Layer::finite(MaterialModel::Vacuum, 5e-7),
                Layer::finite(glass, 1.2e-7),
                Layer::half_space(silver),
            ],
            2,
        ),
        (
            vec![
                Layer::half_space(oxide),
                Layer::finite(MaterialModel::Vacuum, 3e-7),
                Layer::finite(silver, 3e-8),
                Layer::finite(MaterialModel::Constant { epsilon: 3.0 }, 2e-7),
                Layer::half_space(oxide),
            ],
            1,
        ),
        (
            vec![
                Layer::half_space(oxide),
                Layer::finite(MaterialModel::Vacuum, 3e-7),
                Layer::finite(silver, 3e-8),
                Layer::finite(MaterialModel::Constant { epsilon: 3.0 }, 2e-7),
                Layer::half_space(oxide),
            ],
            3,
        ),
        (
            vec![
                Layer::mirror(),
                Layer::finite(MaterialModel::Constant { epsilon: 2.1 }, 4e-7),
                Layer::half_space(gold),
            ],
            1,
        ),
    ];
    let mut cases = Vec::new();
    for (layers, j) in configs {
        let stack = Stack::new(layers).expect("built-in stack is valid");
        let eps = match stack.layers()[j].material {
            MaterialModel::Constant { epsilon } => epsilon,
            _ => 1.0,
        };
        for omega in [1.1e15, 2.3e15] {
            let kt = eps.sqrt() * omega / C_LIGHT;
            for frac in [0.0, 0.37, 0.93, 1.07, 1.3] {
                cases.push(VerificationCase {
                    stack: stack.clone(),
                    j,
                    omega,
                    k: frac * kt,
                });
            }
        }
    }
    cases
}
