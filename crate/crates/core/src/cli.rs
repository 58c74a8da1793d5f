//! The `casimir` command line.
//!
//! Exit status: 0 on success, 1 when `verify-greens` finds a deviation above
//! tolerance, 2 on input errors, 3 when a quadrature did not converge.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::casimir::{energy_per_area, force_1d_for_stack, force_per_area, slab_in_cavity_force};
use crate::error::Error;
use crate::greens::{builtin_cases, verify, VERIFY_TOL};
use crate::io::{parse_cavity, parse_stack};
use crate::quadrature::{QuadratureResult, QuadratureSpec};
use crate::stack::Stack;
use crate::{C_LIGHT, HBAR};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

pub const SWEEP_HEADER: [&str; 5] = ["distance_m", "f_minus_Pa", "abs_err", "evals", "converged"];

#[derive(Parser, Debug)]
#[command(name = "casimir", version, about = "Casimir force and energy in planar multilayers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct QuadArgs {
    /// Relative tolerance of the integration.
    #[arg(long, default_value = "1e-8")]
    rel_tol: f64,
    /// Absolute error floor in output units.
    #[arg(long, default_value = "1e-30")]
    abs_floor: f64,
    /// Budget of integrand evaluations.
    #[arg(long, default_value_t = 10_000_000)]
    max_evals: usize,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: self.rel_tol,
            abs_floor: self.abs_floor,
            max_evals: self.max_evals,
        }
    }
}

#[derive(Args, Debug)]
struct ProbeArgs {
    /// Stack file (JSON).
    #[arg(long)]
    stack: PathBuf,
    /// Index of the lossless layer to probe.
    #[arg(long)]
    layer: usize,
    /// Report dimensionless results: force divided by hbar c / d^4, energy by
    /// hbar c / d^3 and the one-dimensional force by hbar c / d^2, with d the
    /// thickness of the probed layer.
    #[arg(long)]
    normalized: bool,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pressure on the stacks bounding a layer.
    Force(ProbeArgs),
    /// Casimir energy per unit area of a layer.
    Energy(ProbeArgs),
    /// Net pressure on a slab between two mirrors.
    SlabCavity {
        /// Cavity file (JSON).
        #[arg(long)]
        cavity: PathBuf,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Force as a function of one layer thickness, written as CSV.
    Sweep {
        /// Stack file (JSON).
        #[arg(long)]
        stack: PathBuf,
        /// What to vary, as `layer:J:thickness`.
        #[arg(long)]
        vary: String,
        /// First thickness [m].
        #[arg(long)]
        from: f64,
        /// Last thickness [m].
        #[arg(long)]
        to: f64,
        /// Number of rows.
        #[arg(long)]
        points: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Layer whose force is reported; defaults to the varied layer.
        #[arg(long)]
        layer: Option<usize>,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Check the real-frequency Green function algebra on built-in stacks.
    VerifyGreens,
    /// Normal-incidence (one-dimensional) force.
    #[command(name = "force-1d")]
    Force1d(ProbeArgs),
}

enum Failure {
    Input(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_stack(path: &Path) -> std::result::Result<Stack, Failure> {
    parse_stack(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn status(q: &QuadratureResult) -> i32 {
    if q.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    }
}

fn report(out: &mut dyn Write, name: &str, unit_suffix: &str, value: f64, q: &QuadratureResult, scale: Option<f64>) -> Outcome {
    match scale {
        Some(s) => {
            writeln!(out, "{name}_normalized = {:e}", value * s)?;
            writeln!(out, "abs_err_normalized = {:e}", q.abs_error_estimate * s)?;
        }
        None => {
            writeln!(out, "{name}_{unit_suffix} = {:e}", value)?;
            writeln!(out, "abs_err_{unit_suffix} = {:e}", q.abs_error_estimate)?;
        }
    }
    writeln!(out, "evals = {}", q.evals)?;
    writeln!(out, "converged = {}", q.converged)?;
    Ok(status(q))
}

fn parse_vary(spec: &str) -> std::result::Result<usize, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["layer", j, "thickness"] => j
            .parse()
            .map_err(|_| Failure::Input(format!("--vary: `{j}` is not a layer index"))),
        _ => Err(Failure::Input(format!(
            "--vary: expected `layer:J:thickness`, got `{spec}`"
        ))),
    }
}

fn sweep_distances(from: f64, to: f64, points: usize) -> std::result::Result<Vec<f64>, Failure> {
    if points == 0 {
        return Err(Failure::Input("--points must be at least 1".into()));
    }
    for (name, v) in [("--from", from), ("--to", to)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Failure::Input(format!("{name} must be a positive thickness, got {v}")));
        }
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    let step = (to - from) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i == points - 1 { to } else { from + step * i as f64 })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    out: &mut dyn Write,
    stack_path: &Path,
    vary: &str,
    from: f64,
    to: f64,
    points: usize,
    csv_path: &Path,
    layer: Option<usize>,
    spec: &QuadratureSpec,
) -> Outcome {
    let stack = load_stack(stack_path)?;
    let varied = parse_vary(vary)?;
    let probe = layer.unwrap_or(varied);
    stack.thickness(varied)?;
    stack.probe(probe)?;
    let distances = sweep_distances(from, to, points)?;

    let mut writer = csv::Writer::from_path(csv_path)
        .map_err(|e| Failure::Input(format!("{}: {e}", csv_path.display())))?;
    writer.write_record(SWEEP_HEADER).map_err(|e| Failure::Io(e.to_string()))?;
    let mut code = EXIT_OK;
    for d in &distances {
        let f = force_per_area(&stack.with_thickness(varied, *d)?, probe, spec)?;
        let q = f.quadrature;
        writer
            .write_record([
                format!("{d:e}"),
                format!("{:e}", f.f_minus),
                format!("{:e}", q.abs_error_estimate),
                q.evals.to_string(),
                q.converged.to_string(),
            ])
            .map_err(|e| Failure::Io(e.to_string()))?;
        code = code.max(status(&q));
    }
    writer.flush()?;
    writeln!(out, "wrote {} rows to {}", distances.len(), csv_path.display())?;
    Ok(code)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Force(a) => {
            let stack = load_stack(&a.stack)?;
            let f = force_per_area(&stack, a.layer, &a.quad.spec())?;
            let d = stack.probe(a.layer)?;
            let scale = a.normalized.then(|| d.powi(4) / (HBAR * C_LIGHT));
            let code = report(out, "f_minus", "Pa", f.f_minus, &f.quadrature, scale)?;
            writeln!(out, "f_plus_{} = {:e}", if a.normalized { "normalized" } else { "Pa" }, f.f_plus * scale.unwrap_or(1.0))?;
            Ok(code)
        }
        Command::Energy(a) => {
            let stack = load_stack(&a.stack)?;
            let e = energy_per_area(&stack, a.layer, &a.quad.spec())?;
            let d = stack.probe(a.layer)?;
            let scale = a.normalized.then(|| d.powi(3) / (HBAR * C_LIGHT));
            report(out, "energy", "J_per_m2", e.energy, &e.quadrature, scale)
        }
        Command::Force1d(a) => {
            let stack = load_stack(&a.stack)?;
            let q = force_1d_for_stack(&stack, a.layer, &a.quad.spec())?;
            let d = stack.probe(a.layer)?;
            let scale = a.normalized.then(|| d.powi(2) / (HBAR * C_LIGHT));
            report(out, "f_1d", "N", q.value, &q, scale)
        }
        Command::SlabCavity { cavity, quad } => {
            let config = parse_cavity(&read(&cavity)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", cavity.display())))?;
            let q = slab_in_cavity_force(&config, &quad.spec())?;
            report(out, "f_slab", "Pa", q.value, &q, None)
        }
        Command::Sweep {
            stack,
            vary,
            from,
            to,
            points,
            out: csv_path,
            layer,
            quad,
        } => sweep(out, &stack, &vary, from, to, points, &csv_path, layer, &quad.spec()),
        Command::VerifyGreens => {
            let r = verify(&builtin_cases())?;
            writeln!(out, "cases = {}", r.cases)?;
            writeln!(out, "max_z_variation = {:e}", r.max_z_variation)?;
            writeln!(out, "max_closed_form_deviation = {:e}", r.max_closed_form_deviation)?;
            writeln!(out, "max_dyadic_deviation = {:e}", r.max_dyadic_deviation)?;
            let pass = r.passed(VERIFY_TOL);
            writeln!(out, "tolerance = {VERIFY_TOL:e}")?;
            writeln!(out, "status = {}", if pass { "pass" } else { "fail" })?;
            Ok(if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => {
            if code == EXIT_NOT_CONVERGED {
                let _ = writeln!(err, "warning: quadrature did not reach the requested tolerance");
            }
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
