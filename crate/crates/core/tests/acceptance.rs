//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use casimir_core::casimir::{
    energy_per_area, force_1d, force_per_area, ideal_cavity_force, modulus_form, round_trip_form,
    slab_in_cavity_force, CavityConfig, Mirror, Slab,
};
use casimir_core::fresnel::{stack_reflection, Polarization, Profile, Side, SpectralPoint};
use casimir_core::greens::{verify, VerificationCase};
use casimir_core::{Layer, MaterialModel, QuadratureSpec, Stack, C_LIGHT, HBAR};
use common::{absorbing_material, absorbing_stack, rel};
use num_complex::Complex64;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn ideal_pressure(d: f64) -> f64 {
    PI * PI * HBAR * C_LIGHT / (240.0 * d.powi(4))
}

fn pec_cavity(medium: MaterialModel, d: f64) -> Stack {
    Stack::new(vec![Layer::mirror(), Layer::finite(medium, d), Layer::mirror()]).unwrap()
}

fn ideal_casimir_pressure() -> Outcome {
    let d = 1e-6;
    let start = Instant::now();
    let f = force_per_area(&pec_cavity(MaterialModel::Vacuum, d), 1, &QuadratureSpec::default()).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let err = rel(f.f_minus, ideal_pressure(d));
    let pass = err < 1e-6 && elapsed < 1.0 && f.quadrature.converged && (f.f_minus - 1.30013e-3).abs() < 5e-9;
    outcome(
        pass,
        format!("f = {:e} Pa, rel err {err:.2e} (tol 1e-6), {elapsed:.3} s (limit 1 s)", f.f_minus),
    )
}

fn dispersive_ideal_cavity() -> Outcome {
    let d = 1e-6;
    let medium = MaterialModel::Constant { epsilon: 4.0 };
    let exact = ideal_pressure(d) / 2.0;
    let r = ideal_cavity_force(&medium, d, &QuadratureSpec::default()).unwrap();
    let generic = force_per_area(&pec_cavity(medium, d), 1, &QuadratureSpec::default()).unwrap();
    let err = rel(r.pressure, exact);
    let err_generic = rel(generic.f_minus, exact);
    let forms = rel(r.single.value, r.double.value);
    outcome(
        err < 1e-6 && err_generic < 1e-6 && forms < 1e-5,
        format!("rel err {err:.2e} (generic stack {err_generic:.2e}, tol 1e-6), forms differ by {forms:.2e} (tol 1e-5)"),
    )
}

fn energy_force_consistency() -> Outcome {
    let d = 1e-6;
    let spec = QuadratureSpec::with_rel_tol(1e-10);
    let e = energy_per_area(&pec_cavity(MaterialModel::Vacuum, d), 1, &spec).unwrap();
    let exact = -PI * PI * HBAR * C_LIGHT / (720.0 * d.powi(3));
    let err_pec = rel(e.energy, exact);

    let mut rng = common::rng(3);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let s = absorbing_stack(&mut rng, 5, &[2]);
        let d = s.thickness(2).unwrap();
        let h = 1e-3 * d;
        let energy = |w: f64| energy_per_area(&s.with_thickness(2, w).unwrap(), 2, &spec).unwrap().energy;
        let fd = (energy(d + h) - energy(d - h)) / (2.0 * h);
        let f = force_per_area(&s, 2, &spec).unwrap().f_minus;
        worst = worst.max(rel(fd, f));
    }
    outcome(
        err_pec < 1e-6 && worst < 1e-4,
        format!("ideal energy {:e} J/m^2 rel err {err_pec:.2e} (tol 1e-6); finite-difference vs force worst {worst:.2e} over 5 stacks (tol 1e-4)", e.energy),
    )
}

fn lifshitz_oracle() -> Outcome {
    let d = 1e-6;
    let eps = MaterialModel::Constant { epsilon: 2.0 };
    let s = Stack::new(vec![
        Layer::half_space(eps),
        Layer::finite(MaterialModel::Vacuum, d),
        Layer::half_space(eps),
    ])
    .unwrap();
    let f = force_per_area(&s, 1, &QuadratureSpec::default()).unwrap().f_minus;
    let oracle = common::lifshitz_brute_force(2.0, d, 10_000);
    let err = rel(f, oracle);
    outcome(
        err < 1e-4 && f > 0.0 && f < ideal_pressure(d),
        format!("f = {f:e} Pa, grid oracle {oracle:e} Pa, rel err {err:.2e} (tol 1e-4), ideal {:e} Pa", ideal_pressure(d)),
    )
}

fn d_identity() -> Outcome {
    let mut rng = common::rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = absorbing_stack(&mut rng, 5, &[]);
        let xi = (rng.random_range(1e13f64.ln()..3e16f64.ln())).exp();
        let k = rng.random_range(0.0..4.0) * xi / C_LIGHT;
        let p = Profile::imaginary(&s, xi, k * k).unwrap();
        let j = rng.random_range(1..3);
        let l = rng.random_range(j + 1..4);
        for pol in Polarization::BOTH {
            let x_j = p.reflection_between(j, l, pol).unwrap() * p.reflection(j, Side::Minus, pol).unwrap() * p.round_trip(j).unwrap();
            let x_l = p.reflection_between(l, j, pol).unwrap() * p.reflection(l, Side::Plus, pol).unwrap() * p.round_trip(l).unwrap();
            let lhs = p.d_function(l, pol).unwrap() * (1.0 - x_j);
            let rhs = p.d_function(j, pol).unwrap() * (1.0 - x_l);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    outcome(worst < 1e-12, format!("max |lhs - rhs| {worst:.2e} over 1000 draws (tol 1e-12)"))
}

fn stress_bracket_cancellation() -> Outcome {
    let mut rng = common::rng(6);
    let mut cases = Vec::new();
    for _ in 0..10 {
        let s = absorbing_stack(&mut rng, 5, &[2]);
        let eps = s.layers()[2].material.epsilon_imag_axis(1.0).unwrap();
        let d = s.thickness(2).unwrap();
        for frac in [
            rng.random_range(0.05..0.9),
            rng.random_range(0.05..0.9),
            rng.random_range(1.02..1.3),
            rng.random_range(1.02..1.3),
        ] {
            let kt = rng.random_range(0.5..4.0) / d;
            cases.push(VerificationCase {
                stack: s.clone(),
                j: 2,
                omega: kt * C_LIGHT / eps.sqrt(),
                k: frac * kt,
            });
        }
    }
    let r = verify(&cases).unwrap();
    outcome(
        r.max_z_variation < 1e-10 && r.max_closed_form_deviation < 1e-10,
        format!(
            "{} cases x 5 z: z-variation {:.2e}, closed-form deviation {:.2e} (tol 1e-10)",
            r.cases, r.max_z_variation, r.max_closed_form_deviation
        ),
    )
}

fn slab_in_cavity() -> Outcome {
    let spec = QuadratureSpec::default();
    let gold = MaterialModel::Drude { omega_p: 1.37e16, gamma: 5.32e13 };
    let centred = CavityConfig {
        medium: MaterialModel::Vacuum,
        slab: Slab { material: MaterialModel::Constant { epsilon: 3.0 }, thickness: 2e-7 },
        d1: 7e-7,
        d2: 7e-7,
        left_mirror: Mirror::Stack(vec![Layer::half_space(gold)]),
        right_mirror: Mirror::Stack(vec![Layer::half_space(gold)]),
    };
    let f0 = slab_in_cavity_force(&centred, &spec).unwrap().value;
    let centred_ratio = f0.abs() / ideal_pressure(centred.d1);

    let pec = CavityConfig {
        medium: MaterialModel::Vacuum,
        slab: Slab { material: MaterialModel::PerfectConductor, thickness: 1e-7 },
        d1: 1e-6,
        d2: 5e-7,
        left_mirror: Mirror::PerfectConductor,
        right_mirror: Mirror::PerfectConductor,
    };
    let f_pec = slab_in_cavity_force(&pec, &spec).unwrap().value;
    let exact = ideal_pressure(pec.d2) - ideal_pressure(pec.d1);
    let err_pec = rel(f_pec, exact);

    let mut rng = common::rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let c = common::random_cavity(&mut rng);
        let slab = slab_in_cavity_force(&c, &spec).unwrap().value;
        let s = c.assembled().unwrap();
        let (g1, g2) = c.gap_indices();
        let generic = force_per_area(&s, g2, &spec).unwrap().f_minus - force_per_area(&s, g1, &spec).unwrap().f_minus;
        worst = worst.max(rel(slab, generic));
    }
    outcome(
        centred_ratio < 1e-12 && err_pec < 1e-6 && (f_pec - 1.9502e-2).abs() < 5e-7 && worst < 1e-5,
        format!(
            "centred |f|/scale {centred_ratio:.2e} (tol 1e-12); PEC slab {f_pec:e} Pa rel err {err_pec:.2e} (tol 1e-6); specialized vs generic worst {worst:.2e} (tol 1e-5)"
        ),
    )
}

fn recursion_oracle() -> Outcome {
    let tm = common::max_transfer_matrix_deviation(8, 1000);

    let mut rng = common::rng(9);
    let spec = QuadratureSpec::default();
    let mut worst_force: f64 = 0.0;
    let mut worst_r: f64 = 0.0;
    for _ in 0..5 {
        let s = absorbing_stack(&mut rng, 5, &[2]);
        let mut material = absorbing_material(&mut rng);
        while material.is_perfect_conductor() {
            material = absorbing_material(&mut rng);
        }
        let at = rng.random_range(1..=s.n());
        let t = s.with_inserted(at, Layer::finite(material, 1e-30)).unwrap();
        let probe = if at <= 2 { 3 } else { 2 };
        let f = force_per_area(&s, 2, &spec).unwrap().f_minus;
        let g = force_per_area(&t, probe, &spec).unwrap().f_minus;
        worst_force = worst_force.max(rel(g, f));
        let xi = 2e15;
        for pol in Polarization::BOTH {
            let sp = SpectralPoint::imaginary(xi, 3e6);
            let a = stack_reflection(&s, 0, Side::Plus, pol, sp).unwrap();
            let b = stack_reflection(&t, 0, Side::Plus, pol, sp).unwrap();
            worst_r = worst_r.max((a - b).norm());
        }
    }
    outcome(
        tm < 1e-12 && worst_force < 1e-10 && worst_r < 1e-10,
        format!("transfer-matrix deviation {tm:.2e} over 1000 draws (tol 1e-12); 1e-30 m insertion: force {worst_force:.2e}, reflection {worst_r:.2e} (tol 1e-10)"),
    )
}

fn one_dimensional() -> Outcome {
    let d = 1e-6;
    let f = force_1d(|_| Ok(-1.0), |_| Ok(-1.0), &MaterialModel::Vacuum, d, &QuadratureSpec::default()).unwrap();
    let exact = PI * HBAR * C_LIGHT / (12.0 * d * d);
    let err = rel(f.value, exact);
    let mut rng = common::rng(10);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = Complex64::from_polar(rng.random_range(0.0..0.95), rng.random_range(-PI..PI));
        let lhs = round_trip_form(a);
        worst = worst.max((lhs - modulus_form(a)).abs() / lhs.abs().max(1.0));
    }
    outcome(
        err < 1e-6 && worst < 1e-14,
        format!("f_1d rel err {err:.2e} (tol 1e-6); identity worst {worst:.2e} over 1000 amplitudes (tol 1e-14)"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 ideal Casimir pressure", ideal_casimir_pressure),
        ("2 dispersive ideal cavity", dispersive_ideal_cavity),
        ("3 energy-force consistency", energy_force_consistency),
        ("4 Lifshitz configuration oracle", lifshitz_oracle),
        ("5 D-function identity", d_identity),
        ("6 stress-tensor cancellation", stress_bracket_cancellation),
        ("7 slab in cavity", slab_in_cavity),
        ("8 recursion vs transfer matrix", recursion_oracle),
        ("9 one-dimensional reduction", one_dimensional),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
