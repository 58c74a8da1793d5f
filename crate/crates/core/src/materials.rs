//! Dielectric response models.
//!
//! All frequencies are angular frequencies in rad/s. On the imaginary axis
//! `omega = i xi` every passive model is real, at least one and
//! non-increasing in `xi`, which is what the force integrals rely on.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialModel {
    Vacuum,
    Constant {
        epsilon: f64,
    },
    Drude {
        omega_p: f64,
        gamma: f64,
    },
    Lorentz {
        omega_0: f64,
        omega_p: f64,
        gamma: f64,
    },
    /// Ideal mirror. Has no permittivity; stacks short-circuit its
    /// reflection coefficients instead.
    PerfectConductor,
}

fn check_rate(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and non-negative",
        });
    }
    Ok(())
}

fn check_frequency(w: f64) -> Result<()> {
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::NonPositiveFrequency(w));
    }
    Ok(())
}

impl MaterialModel {
    pub fn constant(epsilon: f64) -> Result<Self> {
        let m = MaterialModel::Constant { epsilon };
        m.validate()?;
        Ok(m)
    }

    pub fn drude(omega_p: f64, gamma: f64) -> Result<Self> {
        let m = MaterialModel::Drude { omega_p, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn lorentz(omega_0: f64, omega_p: f64, gamma: f64) -> Result<Self> {
        let m = MaterialModel::Lorentz {
            omega_0,
            omega_p,
            gamma,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MaterialModel::Vacuum | MaterialModel::PerfectConductor => Ok(()),
            MaterialModel::Constant { epsilon } => {
                if !epsilon.is_finite() || epsilon < 1.0 {
                    return Err(Error::InvalidParameter {
                        name: "epsilon",
                        value: epsilon,
                        reason: "must be finite and >= 1",
                    });
                }
                Ok(())
            }
            MaterialModel::Drude { omega_p, gamma } => {
                check_rate("omega_p", omega_p)?;
                check_rate("gamma", gamma)
            }
            MaterialModel::Lorentz {
                omega_0,
                omega_p,
                gamma,
            } => {
                check_rate("omega_0", omega_0)?;
                check_rate("omega_p", omega_p)?;
                check_rate("gamma", gamma)?;
                if omega_0 == 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "omega_0",
                        value: omega_0,
                        reason: "a Lorentz resonance must be positive (use drude for a free-carrier term)",
                    });
                }
                Ok(())
            }
        }
    }

    pub fn is_perfect_conductor(&self) -> bool {
        matches!(self, MaterialModel::PerfectConductor)
    }

    /// Vacuum and constant dielectrics are the only media in which the
    /// stress tensor is evaluated.
    pub fn is_lossless(&self) -> bool {
        matches!(self, MaterialModel::Vacuum | MaterialModel::Constant { .. })
    }

    /// `eps(i xi)`, real and >= 1.
    pub fn epsilon_imag_axis(&self, xi: f64) -> Result<f64> {
        check_frequency(xi)?;
        match *self {
            MaterialModel::Vacuum => Ok(1.0),
            MaterialModel::Constant { epsilon } => Ok(epsilon),
            MaterialModel::Drude { omega_p, gamma } => {
                Ok(1.0 + omega_p * omega_p / (xi * (xi + gamma)))
            }
            MaterialModel::Lorentz {
                omega_0,
                omega_p,
                gamma,
            } => Ok(1.0 + omega_p * omega_p / (omega_0 * omega_0 + xi * xi + gamma * xi)),
            MaterialModel::PerfectConductor => Err(Error::PerfectConductorPermittivity),
        }
    }

    /// `d eps(i xi) / d xi`.
    pub fn epsilon_imag_axis_derivative(&self, xi: f64) -> Result<f64> {
        check_frequency(xi)?;
        match *self {
            MaterialModel::Vacuum | MaterialModel::Constant { .. } => Ok(0.0),
            MaterialModel::Drude { omega_p, gamma } => {
                let den = xi * (xi + gamma);
                Ok(-omega_p * omega_p * (2.0 * xi + gamma) / (den * den))
            }
            MaterialModel::Lorentz {
                omega_0,
                omega_p,
                gamma,
            } => {
                let den = omega_0 * omega_0 + xi * xi + gamma * xi;
                Ok(-omega_p * omega_p * (2.0 * xi + gamma) / (den * den))
            }
            MaterialModel::PerfectConductor => Err(Error::PerfectConductorPermittivity),
        }
    }

    /// `eps(omega)` on the real axis, with `Im eps >= 0`.
    pub fn epsilon_real_axis(&self, omega: f64) -> Result<Complex64> {
        check_frequency(omega)?;
        self.epsilon_at(Complex64::new(omega, 0.0))
    }

    /// Analytic continuation of the response to complex frequency.
    pub(crate) fn epsilon_at(&self, omega: Complex64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        match *self {
            MaterialModel::Vacuum => Ok(one),
            MaterialModel::Constant { epsilon } => Ok(Complex64::new(epsilon, 0.0)),
            MaterialModel::Drude { omega_p, gamma } => {
                Ok(one - omega_p * omega_p / (omega * (omega + i * gamma)))
            }
            MaterialModel::Lorentz {
                omega_0,
                omega_p,
                gamma,
            } => Ok(one + omega_p * omega_p / (omega_0 * omega_0 - omega * omega - i * gamma * omega)),
            MaterialModel::PerfectConductor => Err(Error::PerfectConductorPermittivity),
        }
    }

    /// A frequency characteristic of the model, used to pick test scales.
    pub fn characteristic_frequency(&self) -> Option<f64> {
        match *self {
            MaterialModel::Drude { omega_p, .. } => Some(omega_p),
            MaterialModel::Lorentz {
                omega_0, omega_p, ..
            } => Some(omega_0.max(omega_p)),
            _ => None,
        }
    }
}
