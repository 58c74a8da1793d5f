//! Wave-vector kinematics and generalized Fresnel coefficients of a stack.
//!
//! The recursion is written once, generically over the amplitude type:
//! on the imaginary frequency axis every quantity is real and the code runs
//! in `f64` (with `beta` replaced by the decay constant `kappa` and
//! `exp(2 i beta d)` by `exp(-2 kappa d)`), on the real axis it runs in
//! `Complex64`. Interface coefficients depend on `beta` only through ratios,
//! so both axes share the same formulas.

use std::fmt::Debug;

use num_complex::{Complex64, ComplexFloat};

use crate::error::{Error, Result};
use crate::stack::{Stack, Thickness};
use crate::C_LIGHT;

/// Propagation factors below this are flushed to zero.
const UNDERFLOW: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// TM
    P,
    /// TE
    S,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::P, Polarization::S];

    /// `+1` for p, `-1` for s.
    pub fn sign(self) -> f64 {
        match self {
            Polarization::P => 1.0,
            Polarization::S => -1.0,
        }
    }

    pub fn swapped(self) -> Polarization {
        match self {
            Polarization::P => Polarization::S,
            Polarization::S => Polarization::P,
        }
    }
}

/// Which bounding stack of a layer: `Minus` lies at smaller indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    /// Real angular frequency `omega` [rad/s].
    Real(f64),
    /// Imaginary frequency `omega = i xi`, holding `xi` [rad/s].
    Imaginary(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub axis: Axis,
    /// Transverse wavenumber [1/m].
    pub k: f64,
}

impl SpectralPoint {
    pub fn real(omega: f64, k: f64) -> Self {
        SpectralPoint {
            axis: Axis::Real(omega),
            k,
        }
    }

    pub fn imaginary(xi: f64, k: f64) -> Self {
        SpectralPoint {
            axis: Axis::Imaginary(xi),
            k,
        }
    }

    fn validate(&self) -> Result<()> {
        let w = match self.axis {
            Axis::Real(w) | Axis::Imaginary(w) => w,
        };
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::NonPositiveFrequency(w));
        }
        if !(self.k >= 0.0 && self.k.is_finite()) {
            return Err(Error::InvalidSpectralPoint(format!(
                "transverse wavenumber must be finite and >= 0, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Scalar type of the recursion: `f64` on the imaginary axis, `Complex64`
/// on the real axis.
pub trait Amplitude: ComplexFloat<Real = f64> + From<f64> + Debug + Send + Sync {}

impl<T: ComplexFloat<Real = f64> + From<f64> + Debug + Send + Sync> Amplitude for T {}

fn lit<T: Amplitude>(x: f64) -> T {
    <T as From<f64>>::from(x)
}

/// Perpendicular wavenumber `sqrt(eps omega^2/c^2 - k^2)` on the branch with
/// non-negative real and imaginary parts.
pub fn beta(eps: Complex64, omega: f64, k: f64) -> Complex64 {
    let q = omega / C_LIGHT;
    let mut arg = eps * (q * q) - k * k;
    if arg.im == 0.0 {
        // -0.0 would select the lower branch.
        arg.im = 0.0;
    }
    let b = arg.sqrt();
    if b.im < 0.0 {
        -b
    } else {
        b
    }
}

/// Decay constant `sqrt(eps(i xi) xi^2/c^2 + k^2)`; `beta(i xi) = i kappa`.
pub fn kappa(eps_imag: f64, xi: f64, k: f64) -> f64 {
    let q = xi / C_LIGHT;
    (eps_imag * q * q + k * k).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceCoeffs<T> {
    pub r: T,
    pub t: T,
}

/// Single `i -> j` interface: `r = (b_i - g b_j)/(b_i + g b_j)`,
/// `t = sqrt(g) (1 + r)` with `g = eps_i/eps_j` for p and `1` for s.
///
/// `sqrt(g)` is taken as `sqrt(eps_i)/sqrt(eps_j)` so that the coefficients
/// of the two directions satisfy `sqrt(g_ij) sqrt(g_ji) = 1` for complex
/// media as well.
pub fn interface_coeffs<T: Amplitude>(
    pol: Polarization,
    eps_i: T,
    eps_j: T,
    beta_i: T,
    beta_j: T,
) -> Result<InterfaceCoeffs<T>> {
    interface_with_index(pol, eps_i, eps_j, eps_i.sqrt(), eps_j.sqrt(), beta_i, beta_j)
}

fn interface_with_index<T: Amplitude>(
    pol: Polarization,
    eps_i: T,
    eps_j: T,
    n_i: T,
    n_j: T,
    beta_i: T,
    beta_j: T,
) -> Result<InterfaceCoeffs<T>> {
    let one = lit::<T>(1.0);
    let (num, den, root_gamma) = match pol {
        // Multiplied through by eps_j.
        Polarization::P => (
            eps_j * beta_i - eps_i * beta_j,
            eps_j * beta_i + eps_i * beta_j,
            n_i / n_j,
        ),
        Polarization::S => (beta_i - beta_j, beta_i + beta_j, one),
    };
    if den == lit::<T>(0.0) {
        // Both media identical and the wave grazing: no interface at all.
        if num == lit::<T>(0.0) {
            return Ok(InterfaceCoeffs {
                r: lit::<T>(0.0),
                t: root_gamma,
            });
        }
        return Err(Error::InterfacePole);
    }
    let r = num / den;
    Ok(InterfaceCoeffs {
        r,
        t: root_gamma * (one + r),
    })
}

/// Coefficients of an ideal mirror seen from any medium: `r^p = +1`,
/// `r^s = -1`, no transmission.
pub fn perfect_conductor_coeffs<T: Amplitude>(pol: Polarization) -> InterfaceCoeffs<T> {
    InterfaceCoeffs {
        r: lit::<T>(pol.sign()),
        t: lit::<T>(0.0),
    }
}

/// Plane-wave data of one layer at a fixed spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wave<T> {
    Medium {
        eps: T,
        index: T,
        /// `beta` on the real axis, `kappa` on the imaginary axis.
        beta: T,
        /// `exp(2 i beta d)`, or `exp(-2 kappa d)`; 1 for semi-infinite layers.
        round_trip: T,
        /// `exp(i beta d)`, or `exp(-kappa d)`.
        single_pass: T,
    },
    Opaque,
}

/// Reflection coefficients bounding one layer and its round-trip
/// denominator `D = 1 - r_minus r_plus exp(2 i beta d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair<T> {
    pub r_minus: T,
    pub r_plus: T,
    pub d: T,
}

/// All layers of a stack evaluated at one spectral point. This is the
/// per-evaluation scratch shared by every coefficient of that point.
#[derive(Debug, Clone)]
pub struct Profile<T> {
    waves: Vec<Wave<T>>,
    frequency: f64,
    k_sq: f64,
}

fn flush<T: Amplitude>(x: T) -> T {
    if x.abs() < UNDERFLOW {
        lit::<T>(0.0)
    } else {
        x
    }
}

fn finite_or_zero(t: Thickness) -> f64 {
    match t {
        Thickness::Finite(d) => d,
        Thickness::SemiInfinite => 0.0,
    }
}

impl Profile<f64> {
    /// Profile on the imaginary axis at `xi` with squared transverse
    /// wavenumber `k_sq`.
    pub fn imaginary(stack: &Stack, xi: f64, k_sq: f64) -> Result<Self> {
        let q = xi / C_LIGHT;
        let waves = stack
            .layers()
            .iter()
            .map(|layer| {
                if layer.is_opaque() {
                    return Ok(Wave::Opaque);
                }
                let eps = layer.material.epsilon_imag_axis(xi)?;
                let kappa = (eps * q * q + k_sq).sqrt();
                let d = finite_or_zero(layer.thickness);
                Ok(Wave::Medium {
                    eps,
                    index: eps.sqrt(),
                    beta: kappa,
                    round_trip: flush((-2.0 * kappa * d).exp()),
                    single_pass: flush((-kappa * d).exp()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile {
            waves,
            frequency: xi,
            k_sq,
        })
    }
}

impl Profile<Complex64> {
    /// Profile on the real axis at `omega` and transverse wavenumber `k`.
    pub fn real(stack: &Stack, omega: f64, k: f64) -> Result<Self> {
        let i = Complex64::i();
        let waves = stack
            .layers()
            .iter()
            .map(|layer| {
                if layer.is_opaque() {
                    return Ok(Wave::Opaque);
                }
                let eps = layer.material.epsilon_real_axis(omega)?;
                let b = beta(eps, omega, k);
                let d = finite_or_zero(layer.thickness);
                Ok(Wave::Medium {
                    eps,
                    index: eps.sqrt(),
                    beta: b,
                    round_trip: flush((2.0 * i * b * d).exp()),
                    single_pass: flush((i * b * d).exp()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile {
            waves,
            frequency: omega,
            k_sq: k * k,
        })
    }
}

impl<T: Amplitude> Profile<T> {
    pub fn len(&self) -> usize {
        self.waves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waves.is_empty()
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn k_sq(&self) -> f64 {
        self.k_sq
    }

    pub fn wave(&self, j: usize) -> Result<&Wave<T>> {
        self.waves.get(j).ok_or(Error::LayerIndexOutOfRange {
            index: j,
            len: self.waves.len(),
        })
    }

    /// `(eps, beta)` of a non-opaque layer.
    pub fn medium(&self, j: usize) -> Result<(T, T)> {
        match *self.wave(j)? {
            Wave::Medium { eps, beta, .. } => Ok((eps, beta)),
            Wave::Opaque => Err(Error::OpaqueLayer(j)),
        }
    }

    pub fn round_trip(&self, j: usize) -> Result<T> {
        match *self.wave(j)? {
            Wave::Medium { round_trip, .. } => Ok(round_trip),
            Wave::Opaque => Err(Error::OpaqueLayer(j)),
        }
    }

    /// Single interface from layer `i` into layer `j`.
    pub fn interface(&self, i: usize, j: usize, pol: Polarization) -> Result<InterfaceCoeffs<T>> {
        let (wi, wj) = (*self.wave(i)?, *self.wave(j)?);
        match (wi, wj) {
            (_, Wave::Opaque) => Ok(perfect_conductor_coeffs(pol)),
            // Nothing leaves an opaque layer.
            (Wave::Opaque, _) => Ok(InterfaceCoeffs {
                r: lit::<T>(0.0),
                t: lit::<T>(0.0),
            }),
            (
                Wave::Medium {
                    eps: eps_i,
                    index: n_i,
                    beta: beta_i,
                    ..
                },
                Wave::Medium {
                    eps: eps_j,
                    index: n_j,
                    beta: beta_j,
                    ..
                },
            ) => interface_with_index(pol, eps_i, eps_j, n_i, n_j, beta_i, beta_j),
        }
    }

    fn step_toward(from: usize, to: usize, m: usize) -> usize {
        if to > from {
            m - 1
        } else {
            m + 1
        }
    }

    /// Generalized reflection and transmission seen from layer `from`,
    /// looking toward layer `to`, of the layers strictly between them, with
    /// `to` acting as the terminating half-space.
    pub fn coefficients_between(
        &self,
        from: usize,
        to: usize,
        pol: Polarization,
    ) -> Result<InterfaceCoeffs<T>> {
        self.wave(from)?;
        self.wave(to)?;
        if from == to {
            return Err(Error::InvalidGeometry(format!(
                "reflection of layer {from} toward itself is undefined"
            )));
        }
        if matches!(self.waves[from], Wave::Opaque) {
            return Err(Error::OpaqueLayer(from));
        }
        let one = lit::<T>(1.0);
        let mut m = Self::step_toward(from, to, to);
        let mut acc = self.interface(m, to, pol)?;
        while m != from {
            let prev = Self::step_toward(from, to, m);
            // Folding from the far side: acc holds r_{m/..}, t_{m/..}.
            let (round_trip, single_pass) = match self.waves[m] {
                Wave::Medium {
                    round_trip,
                    single_pass,
                    ..
                } => (round_trip, single_pass),
                Wave::Opaque => (lit::<T>(0.0), lit::<T>(0.0)),
            };
            let into = self.interface(prev, m, pol)?;
            let back = self.interface(m, prev, pol)?;
            let den = one - back.r * acc.r * round_trip;
            acc = InterfaceCoeffs {
                r: into.r + into.t * back.t * acc.r * round_trip / den,
                t: into.t * acc.t * single_pass / den,
            };
            m = prev;
        }
        Ok(acc)
    }

    pub fn reflection_between(&self, from: usize, to: usize, pol: Polarization) -> Result<T> {
        Ok(self.coefficients_between(from, to, pol)?.r)
    }

    pub fn transmission_between(&self, from: usize, to: usize, pol: Polarization) -> Result<T> {
        Ok(self.coefficients_between(from, to, pol)?.t)
    }

    /// `r_{j-}` or `r_{j+}`; zero toward the outside of an outermost layer.
    pub fn reflection(&self, j: usize, side: Side, pol: Polarization) -> Result<T> {
        self.wave(j)?;
        let n = self.waves.len() - 1;
        match side {
            Side::Minus if j == 0 => Ok(lit::<T>(0.0)),
            Side::Plus if j == n => Ok(lit::<T>(0.0)),
            Side::Minus => self.reflection_between(j, 0, pol),
            Side::Plus => self.reflection_between(j, n, pol),
        }
    }

    pub fn reflection_pair(&self, j: usize, pol: Polarization) -> Result<ReflectionPair<T>> {
        let n = self.waves.len() - 1;
        if j == 0 || j == n {
            return Err(Error::SemiInfiniteLayer(j));
        }
        let r_minus = self.reflection(j, Side::Minus, pol)?;
        let r_plus = self.reflection(j, Side::Plus, pol)?;
        let d = lit::<T>(1.0) - r_minus * r_plus * self.round_trip(j)?;
        Ok(ReflectionPair { r_minus, r_plus, d })
    }

    pub fn d_function(&self, j: usize, pol: Polarization) -> Result<T> {
        Ok(self.reflection_pair(j, pol)?.d)
    }
}

fn profile_for_point(stack: &Stack, sp: SpectralPoint) -> Result<Either> {
    sp.validate()?;
    Ok(match sp.axis {
        Axis::Imaginary(xi) => Either::Imag(Profile::imaginary(stack, xi, sp.k * sp.k)?),
        Axis::Real(omega) => Either::Real(Profile::real(stack, omega, sp.k)?),
    })
}

enum Either {
    Imag(Profile<f64>),
    Real(Profile<Complex64>),
}

/// Reflection coefficient `r_{j-}` or `r_{j+}` of the stack bounding layer
/// `j`. Imaginary-axis values are computed in real arithmetic and returned
/// with an exactly zero imaginary part.
pub fn stack_reflection(
    stack: &Stack,
    j: usize,
    side: Side,
    pol: Polarization,
    sp: SpectralPoint,
) -> Result<Complex64> {
    stack.layer(j)?;
    match profile_for_point(stack, sp)? {
        Either::Imag(p) => Ok(Complex64::new(p.reflection(j, side, pol)?, 0.0)),
        Either::Real(p) => p.reflection(j, side, pol),
    }
}

/// Transmission amplitude from layer `from` into layer `to`.
pub fn stack_transmission(
    stack: &Stack,
    from: usize,
    to: usize,
    pol: Polarization,
    sp: SpectralPoint,
) -> Result<Complex64> {
    match profile_for_point(stack, sp)? {
        Either::Imag(p) => Ok(Complex64::new(p.transmission_between(from, to, pol)?, 0.0)),
        Either::Real(p) => p.transmission_between(from, to, pol),
    }
}

/// `D_qj = 1 - r_{j-} r_{j+} exp(2 i beta_j d_j)`.
pub fn d_function(stack: &Stack, j: usize, pol: Polarization, sp: SpectralPoint) -> Result<Complex64> {
    stack.thickness(j)?;
    match profile_for_point(stack, sp)? {
        Either::Imag(p) => Ok(Complex64::new(p.d_function(j, pol)?, 0.0)),
        Either::Real(p) => p.d_function(j, pol),
    }
}
