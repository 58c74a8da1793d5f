//! Adaptive Gauss-Kronrod quadrature on semi-infinite domains.
//!
//! Half-lines are mapped onto `(0, 1)` by `x = s u / (1 - u)` where `s` is
//! the decay scale of the integrand. The 7-15 point Gauss-Kronrod pair never
//! evaluates the panel end points, so integrands that are only finite in the
//! limit `x -> 0` (Drude media at zero frequency) are safe.
//!
//! The double integral over `(xi, kappa)` nests an adaptive `kappa` integral
//! inside every outer `xi` node. Children of a bisected outer panel are
//! evaluated in parallel; panels are always summed in ascending position, so
//! results are bit-identical regardless of scheduling.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const INITIAL_PANELS: usize = 4;
const INNER_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    /// Absolute error below which the relative tolerance is waived, in the
    /// units of the final result.
    pub abs_floor: f64,
    pub max_evals: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_floor: 1e-30,
            max_evals: 10_000_000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::InvalidQuadrature(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_floor >= 0.0 && self.abs_floor.is_finite()) {
            return Err(Error::InvalidQuadrature(format!(
                "abs_floor must be finite and >= 0, got {}",
                self.abs_floor
            )));
        }
        if self.max_evals < 1000 {
            return Err(Error::InvalidQuadrature(format!(
                "max_evals must be at least 1000, got {}",
                self.max_evals
            )));
        }
        Ok(())
    }

    /// Re-expresses the absolute floor for an integral that is multiplied by
    /// `prefactor` before being reported.
    pub fn for_raw_integral(&self, prefactor: f64) -> QuadratureSpec {
        QuadratureSpec {
            abs_floor: self.abs_floor / prefactor.abs(),
            ..*self
        }
    }

    fn tolerance(&self, value: f64) -> f64 {
        (self.rel_tol * value.abs()).max(self.abs_floor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evals: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn scaled(self, factor: f64) -> QuadratureResult {
        QuadratureResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            ..self
        }
    }

    /// Sum of two independent estimates.
    pub fn combined(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }

    pub fn zero() -> QuadratureResult {
        QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evals: 0,
            converged: true,
        }
    }
}

/// Point of the imaginary-frequency plane handed to double-integral
/// integrands. `k_sq = kappa^2 - kappa_0^2` is formed without cancellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagMode {
    pub xi: f64,
    pub kappa: f64,
    pub k_sq: f64,
}

#[derive(Debug, Clone, Copy)]
struct PanelEstimate {
    value: f64,
    error: f64,
    evals: usize,
    /// Set when a nested integral behind this panel did not converge.
    degraded: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    est: PanelEstimate,
}

/// One Gauss-Kronrod 7-15 panel on `[a, b]`; `f` returns the integrand and
/// an absolute error attached to it (zero for plain functions).
fn gk15<F>(f: &F, a: f64, b: f64) -> Result<PanelEstimate>
where
    F: Fn(f64) -> Result<(f64, f64, usize, bool)>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut values = [0.0; 15];
    let mut nested_error = 0.0;
    let mut evals = 0;
    let mut degraded = false;
    for (slot, node) in values.iter_mut().enumerate() {
        let x = match slot {
            0..=6 => center - half * XGK[slot],
            7 => center,
            _ => center + half * XGK[14 - slot],
        };
        let w = WGK[if slot <= 7 { slot } else { 14 - slot }];
        let (v, e, n, bad) = f(x)?;
        *node = v;
        nested_error += w * e;
        evals += n;
        degraded |= bad;
    }
    let weight = |slot: usize| WGK[if slot <= 7 { slot } else { 14 - slot }];
    let kronrod: f64 = (0..15).map(|s| weight(s) * values[s]).sum();
    let gauss: f64 = (0..15)
        .filter_map(|s| {
            let m = if s <= 7 { s } else { 14 - s };
            (m % 2 == 1).then(|| WG[m / 2] * values[s])
        })
        .sum();
    let mean = 0.5 * kronrod;
    let res_abs: f64 = (0..15).map(|s| weight(s) * values[s].abs()).sum();
    let res_asc: f64 = (0..15).map(|s| weight(s) * (values[s] - mean).abs()).sum();

    let mut err = ((kronrod - gauss) * half).abs();
    let res_asc = res_asc * half.abs();
    let res_abs = res_abs * half.abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(PanelEstimate {
        value: kronrod * half,
        error: err + nested_error * half.abs(),
        evals,
        degraded,
    })
}

/// Globally adaptive bisection on `(0, 1)`.
fn adaptive<E>(eval: &E, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    E: Fn(f64, f64) -> Result<PanelEstimate> + Sync,
{
    let width = 1.0 / INITIAL_PANELS as f64;
    let mut panels: Vec<Panel> = (0..INITIAL_PANELS)
        .map(|i| {
            let (a, b) = (i as f64 * width, (i + 1) as f64 * width);
            Ok(Panel { a, b, est: eval(a, b)? })
        })
        .collect::<Result<_>>()?;
    let mut evals: usize = panels.iter().map(|p| p.est.evals).sum();

    loop {
        let value: f64 = panels.iter().map(|p| p.est.value).sum();
        let error: f64 = panels.iter().map(|p| p.est.error).sum();
        let degraded = panels.iter().any(|p| p.est.degraded);
        let done = error <= spec.tolerance(value);
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let mid = 0.5 * (p.a + p.b);
                mid > p.a && mid < p.b
            })
            .max_by(|(_, x), (_, y)| x.est.error.total_cmp(&y.est.error))
            .map(|(i, _)| i);
        let exhausted = evals >= spec.max_evals;
        if done || exhausted || worst.is_none() {
            return Ok(QuadratureResult {
                value,
                abs_error_estimate: error,
                evals,
                converged: done && !degraded,
            });
        }
        let i = worst.unwrap();
        let Panel { a, b, .. } = panels[i];
        let mid = 0.5 * (a + b);
        let (left, right) = rayon::join(|| eval(a, mid), || eval(mid, b));
        let (left, right) = (left?, right?);
        evals += left.evals + right.evals;
        panels[i] = Panel { a, b: mid, est: left };
        panels.insert(i + 1, Panel { a: mid, b, est: right });
    }
}

fn half_line_point(scale: f64, u: f64) -> (f64, f64) {
    let w = 1.0 - u;
    (scale * u / w, scale / (w * w))
}

/// `int_0^inf f(x) dx` for an integrand decaying on the length `scale`.
pub fn integrate_halfline<F>(f: F, scale: f64, spec: &QuadratureSpec) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    spec.validate()?;
    check_scale(scale)?;
    let mapped = |u: f64| -> Result<(f64, f64, usize, bool)> {
        let (x, jac) = half_line_point(scale, u);
        if !x.is_finite() {
            return Ok((0.0, 0.0, 1, false));
        }
        let v = f(x)? * jac;
        Ok((v, 0.0, 1, false))
    };
    adaptive(&|a, b| gk15(&mapped, a, b), spec)
}

fn check_scale(scale: f64) -> Result<()> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidQuadrature(format!(
            "integration scale must be positive and finite, got {scale}"
        )));
    }
    Ok(())
}

/// `int_0^inf dxi int_{kappa_0(xi)}^inf dkappa kappa f(xi, kappa)`, the
/// imaginary-frequency measure `int dxi int dk k (...)` with `k dk = kappa
/// dkappa`.
///
/// `length` is the layer thickness that sets the decay of `exp(-2 kappa d)`;
/// `xi` is sampled on the scale `c/(2 length)` and `kappa - kappa_0` on
/// `1/(2 length)`. The nested `kappa` integrals run at `rel_tol/10`.
pub fn integrate_xi_kappa<K, F>(
    kappa0: K,
    integrand: F,
    length: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    K: Fn(f64) -> Result<f64> + Sync,
    F: Fn(ImagMode) -> Result<f64> + Sync,
{
    spec.validate()?;
    check_scale(length)?;
    let xi_scale = crate::C_LIGHT / (2.0 * length);
    let kappa_scale = 1.0 / (2.0 * length);
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol / 10.0,
        abs_floor: spec.abs_floor / xi_scale,
        max_evals: INNER_BUDGET.min(spec.max_evals),
    };

    let outer = |v: f64| -> Result<(f64, f64, usize, bool)> {
        let (xi, jac) = half_line_point(xi_scale, v);
        if !xi.is_finite() {
            return Ok((0.0, 0.0, 1, false));
        }
        let k0 = kappa0(xi)?;
        let inner = |u: f64| -> Result<(f64, f64, usize, bool)> {
            let (t, jac_k) = half_line_point(kappa_scale, u);
            if !t.is_finite() {
                return Ok((0.0, 0.0, 1, false));
            }
            let kappa = k0 + t;
            let mode = ImagMode {
                xi,
                kappa,
                k_sq: t * (2.0 * k0 + t),
            };
            Ok((kappa * integrand(mode)? * jac_k, 0.0, 1, false))
        };
        let r = adaptive(&|a, b| gk15(&inner, a, b), &inner_spec)?;
        Ok((
            r.value * jac,
            r.abs_error_estimate * jac,
            r.evals,
            !r.converged,
        ))
    };
    adaptive(&|a, b| gk15(&outer, a, b), spec)
}
