//! Acceptance report: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.
//!
//! The published operating points lie outside the Hurwitz-stable region of
//! the model, so the figure-level checks evaluate the unique formal Lyapunov
//! solution (`stability = "formal"`) and say so in their detail text.

use std::f64::consts::PI;
use std::process::ExitCode;

use nalgebra::{DMatrix, Matrix2, Matrix4, Vector4};
use omm_core::gaussian::{
    is_stable, routh_hurwitz, solve_lyapunov, solve_lyapunov_formal,
    CovarianceMatrix, DiffusionMatrix, DriftMatrix, DIM,
};
use omm_core::measures::{
    log_negativity, log_negativity_via_partial_transpose, pair_report, ModePair,
    ReducedCovariance, DEFAULT_PAIRS,
};
use omm_core::model::{
    build_diffusion, build_drift, derive_drive_amplitudes, solve_steady_state, DriftConvention,
    EffectiveParams, PhysicalParams, SteadyStateMode, SPEED_OF_LIGHT,
};
use omm_core::sweep::{preset, run_point, run_sweep, Config, StabilityPolicy, PRESET_IDS};
use omm_core::validity::{kerr, magnon_number, DEFAULT_MARGIN};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);
type Check = (&'static str, fn() -> Outcome);

const CM1: ModePair = DEFAULT_PAIRS[0];
const CM2: ModePair = DEFAULT_PAIRS[1];
const MM: ModePair = DEFAULT_PAIRS[2];

fn formal() -> Config {
    let mut c = Config::baseline();
    c.stability = StabilityPolicy::Formal;
    c
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn negativities(c: &Config) -> [f64; 3] {
    let r = run_point(c, &DEFAULT_PAIRS).expect("formal point");
    [0, 1, 2].map(|i| r.measures[i].log_negativity)
}

fn fig2_optimum() -> Outcome {
    let [ecm1, _, emm] = negativities(&formal());
    let mut steer = f64::NEG_INFINITY;
    for id in ["fig2f", "fig2g"] {
        let spec = preset(id).unwrap().spec().unwrap();
        for row in run_sweep(&spec, None).unwrap() {
            let s = row.measure(MM).unwrap().steering;
            steer = steer.max(s.a_to_b.max(s.b_to_a));
        }
    }
    let pass = within(ecm1, 0.25, 0.05) && within(emm, 0.10, 0.04) && within(steer, 0.14, 0.06);
    (
        pass,
        format!("E_c-m1 = {ecm1:.4}, E_m1-m2 = {emm:.4}, max S_m1-m2 = {steer:.4} (formal, unstable drift)"),
    )
}

fn fig5_null() -> Outcome {
    let spec = preset("fig5").unwrap().spec().unwrap();
    let (mut worst_mm, mut worst_diff) = (0.0f64, 0.0f64);
    let (mut defined, mut undefined) = (0, Vec::new());
    for row in run_sweep(&spec, None).unwrap() {
        let [a, b, m] = [CM1, CM2, MM].map(|p| row.measure(p).unwrap().log_negativity);
        worst_diff = worst_diff.max((a - b).abs());
        // past a resonance of the Lyapunov operator the formal m1-m2 state is
        // unphysical and the measure undefined
        if m.is_nan() {
            undefined.push(row.coords[0] / 1e6);
        } else {
            defined += 1;
            worst_mm = worst_mm.max(m.abs());
        }
    }
    (
        defined > 0 && worst_mm < 1e-3 && worst_diff < 1e-6,
        format!(
            "max E_m1-m2 = {worst_mm:.2e} on {defined} points, undefined (unphysical formal state) at G_m = {undefined:?} MHz, max |E_c-m1 - E_c-m2| = {worst_diff:.2e} (formal)"
        ),
    )
}

fn temperature() -> Outcome {
    let at = |t: f64| {
        let mut c = formal();
        c.set("T_kelvin", t).unwrap();
        negativities(&c)
    };
    let (e04, e07, e01, e03) = (at(0.4), at(0.7), at(0.1), at(0.3));
    let pass = e04[0] > 0.0 && e07[0] == 0.0 && e01[2] > 0.0 && e03[2] == 0.0;
    (
        pass,
        format!(
            "E_c-m1(0.4 K) = {:.4}, E_c-m1(0.7 K) = {}, E_m1-m2(0.1 K) = {:.4}, E_m1-m2(0.3 K) = {} (formal)",
            e04[0], e07[0], e01[2], e03[2]
        ),
    )
}

fn fig3_cutoff() -> Outcome {
    let at = |g0: f64| {
        let mut c = formal();
        c.set("G0", g0).unwrap();
        negativities(&c)[2]
    };
    let (lo, hi) = (at(4.0e6), at(4.6e6));
    (
        lo > 0.0 && hi == 0.0,
        format!("E_m1-m2(4.0 MHz) = {lo:.4}, E_m1-m2(4.6 MHz) = {hi} (formal)"),
    )
}

fn random_stable_drift(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    let h = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    (&g - g.transpose()) * 1.5 - (&h * h.transpose() * 0.3 + DMatrix::identity(n, n) * 0.3)
}

fn integrate_moments(a: &DMatrix<f64>, d: &DMatrix<f64>) -> DMatrix<f64> {
    let rhs = |v: &DMatrix<f64>| a * v + v * a.transpose() + d;
    let h = 0.05 / a.norm().max(1.0);
    let mut v = DMatrix::zeros(a.nrows(), a.nrows());
    loop {
        let k1 = rhs(&v);
        if k1.norm() < 1e-12 {
            return v;
        }
        let k2 = rhs(&(&v + &k1 * (h / 2.0)));
        let k3 = rhs(&(&v + &k2 * (h / 2.0)));
        let k4 = rhs(&(&v + &k3 * h));
        v += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
}

fn lyapunov() -> Outcome {
    let (mut worst, mut points) = (0.0f64, 0);
    for id in PRESET_IDS {
        let spec = preset(id).unwrap().spec().unwrap();
        for row in run_sweep(&spec, None).unwrap() {
            worst = worst.max(row.lyapunov_residual);
            points += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut oracle = 0.0f64;
    for _ in 0..20 {
        let n = 2 * rng.random_range(1..=5);
        let a = random_stable_drift(&mut rng, n);
        let diag: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
        let drift = DriftMatrix::new(a.clone()).unwrap();
        let diffusion = DiffusionMatrix::from_diagonal(&diag).unwrap();
        let v = solve_lyapunov(&drift, &diffusion).unwrap();
        let reference = integrate_moments(&a, diffusion.as_matrix());
        oracle = oracle.max((v.as_matrix() - &reference).norm() / reference.norm());
    }
    (
        worst <= 1e-10 && oracle <= 1e-6,
        format!("max residual {worst:.2e} over {points} preset points, max ODE deviation {oracle:.2e} on 20 instances"),
    )
}

fn rotation(t: f64) -> Matrix2<f64> {
    let (s, c) = t.sin_cos();
    Matrix2::new(c, s, -s, c)
}

fn random_two_mode_state(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let mut local = Matrix4::zeros();
    local.fixed_view_mut::<2, 2>(0, 0).copy_from(&rotation(rng.random_range(0.0..PI)));
    local.fixed_view_mut::<2, 2>(2, 2).copy_from(&rotation(rng.random_range(0.0..PI)));
    let (c, s) = {
        let r: f64 = rng.random_range(0.0..1.2);
        (r.cosh(), r.sinh())
    };
    let tms = Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, -s, //
        s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    );
    let (a, b): (f64, f64) = (rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6));
    let sq = Matrix4::from_diagonal(&Vector4::new(a.exp(), (-a).exp(), b.exp(), (-b).exp()));
    let (n1, n2) = (rng.random_range(0.5..2.0), rng.random_range(0.5..2.0));
    let sym = local * tms * sq;
    let v = sym * Matrix4::from_diagonal(&Vector4::new(n1, n1, n2, n2)) * sym.transpose();
    (v + v.transpose()) * 0.5
}

fn physicality() -> Outcome {
    let (mut stable, mut total, mut worst_nu) = (0, 0, f64::INFINITY);
    for id in PRESET_IDS {
        let spec = preset(id).unwrap().spec().unwrap();
        for row in run_sweep(&spec, None).unwrap() {
            total += 1;
            if row.stable == Some(true) {
                stable += 1;
                worst_nu = worst_nu.min(row.min_symplectic_eigenvalue);
            }
        }
    }
    // stable model points from the region below the coupling threshold
    let (mut model_nu, mut model_points) = (f64::INFINITY, 0);
    for g0 in [0.5e6, 1e6, 2e6, 3e6] {
        for gm1 in [0.0, 1e3, 3e3, 1e4, 3e4] {
            let mut c = Config::baseline();
            c.set("G0", g0).unwrap();
            c.set("G_m1", gm1).unwrap();
            c.set("G_m2", 0.0).unwrap();
            if let Ok(r) = run_point(&c, &DEFAULT_PAIRS) {
                model_nu = model_nu.min(r.min_symplectic_eigenvalue);
                model_points += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a7);
    let mut route = 0.0f64;
    for _ in 0..500 {
        let r = ReducedCovariance::new(MM, random_two_mode_state(&mut rng));
        let a = log_negativity(&r).unwrap();
        let b = log_negativity_via_partial_transpose(&r).unwrap();
        route = route.max((a - b).abs());
    }
    let pass = worst_nu >= 0.5 - 1e-9 && model_points > 0 && model_nu >= 0.5 - 1e-9 && route <= 1e-9;
    let preset_note = if stable == 0 {
        format!("0 of {total} preset points are stable, so the preset check is vacuous")
    } else {
        format!("min nu {worst_nu:.6} over {stable} stable preset points")
    };
    (
        pass,
        format!("{preset_note}; min nu {model_nu:.6} on {model_points} stable model points; E_N route gap {route:.2e} on 500 states"),
    )
}

fn state(e: &EffectiveParams) -> CovarianceMatrix {
    let a = build_drift(e, DriftConvention::default()).unwrap();
    let d = build_diffusion(e).unwrap();
    solve_lyapunov_formal(&a, &d).unwrap()
}

fn decoupled() -> Outcome {
    let laser = 2.0 * PI * SPEED_OF_LIGHT / 1064e-9;
    let mut worst = 0.0f64;
    for t in [0.0, 0.01, 0.1, 0.5, 2.0] {
        let mut e = EffectiveParams::baseline();
        e.om_coupling = 0.0;
        e.mm_coupling = [0.0; 2];
        e.set_temperature(t, laser, [2.0 * PI * 10e9; 2]).unwrap();
        let n = [e.n_c, e.n_m[0], e.n_b[0], e.n_m[1], e.n_b[1]];
        let v = state(&e);
        for i in 0..DIM {
            for j in 0..DIM {
                let expect = if i == j { n[i / 2] + 0.5 } else { 0.0 };
                worst = worst.max((v.as_matrix()[(i, j)] - expect).abs() / expect.max(1.0));
            }
        }
    }
    (worst <= 1e-12, format!("max deviation {worst:.2e} (relative to max(1, variance)) at T = 0 to 2 K"))
}

fn exchange() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe8c);
    let (mut worst, mut compared, mut mismatched) = (0.0f64, 0, 0);
    for _ in 0..50 {
        let mut e = EffectiveParams::baseline();
        e.om_coupling = 2.0 * PI * 1e6 * rng.random_range(0.5..5.0);
        e.mm_coupling = [0, 1].map(|_| 2.0 * PI * 1e6 * rng.random_range(0.2..3.0));
        e.kappa_m = [0, 1].map(|_| 2.0 * PI * 1e6 * rng.random_range(0.5..2.0));
        e.delta_m = [0, 1].map(|_| -2.0 * PI * 1e6 * rng.random_range(30.0..50.0));
        let (v, w) = (state(&e), state(&e.exchanged()));
        for (p, q) in [(CM1, CM2), (CM2, CM1), (MM, MM)] {
            match (pair_report(&v, p, false), pair_report(&w, q, false)) {
                (Ok(x), Ok(y)) => {
                    let (sx, sy) = if p == q {
                        (x.steering.a_to_b, y.steering.b_to_a)
                    } else {
                        (x.steering.a_to_b, y.steering.a_to_b)
                    };
                    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1.0);
                    worst = worst.max(rel(x.log_negativity, y.log_negativity)).max(rel(sx, sy));
                    compared += 1;
                }
                (Err(_), Err(_)) => {}
                _ => mismatched += 1,
            }
        }
    }
    (
        worst <= 1e-9 && mismatched == 0,
        format!("max gap {worst:.2e} over {compared} pair comparisons on 50 random parameter sets"),
    )
}

fn validity_chain() -> Outcome {
    let p = PhysicalParams::baseline();
    let drives = derive_drive_amplitudes(&p).unwrap();
    let s = solve_steady_state(&p, SteadyStateMode::Exact).unwrap();
    let n0 = drives.spins;
    let rabi = drives.rabi[0];
    let m1 = s.magnon[0].norm();
    let ratio = magnon_number(m1, n0, DEFAULT_MARGIN).ratio;
    let k_crit = kerr(m1, rabi, 0.0, DEFAULT_MARGIN).critical;
    let rel = |x: f64, target: f64| (x / target - 1.0).abs();
    let pass = rel(n0, 4.22e10) <= 1e-12
        && rel(rabi, 1.7e13) <= 0.1
        && rel(m1, 6.77e4) <= 0.1
        && rel(ratio, 0.021) <= 0.2
        && rel(k_crit, 2.0 * PI * 8.57e-3) <= 0.2;
    (
        pass,
        format!(
            "N0 = {n0:.4e}, Omega_1 = {rabi:.4e} rad/s, |m1s| = {m1:.4e}, ratio = {ratio:.4}, K_crit = 2pi x {:.4} mHz",
            k_crit / (2.0 * PI) * 1e3
        ),
    )
}

fn routh() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2047);
    let (mut stable, mut unstable, mut disagree) = (0, 0, 0);
    for _ in 0..100 {
        let n = 2 * rng.random_range(1..=5);
        let shift = rng.random_range(-1.5..0.5);
        let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0))
            + DMatrix::identity(n, n) * shift;
        let drift = DriftMatrix::new(m).unwrap();
        let eig = is_stable(&drift).unwrap().stable;
        if eig != routh_hurwitz(&drift).unwrap().stable {
            disagree += 1;
        }
        if eig {
            stable += 1;
        } else {
            unstable += 1;
        }
    }
    (
        disagree == 0 && stable > 0 && unstable > 0,
        format!("{disagree} disagreements on 100 drifts ({stable} stable, {unstable} unstable)"),
    )
}

fn main() -> ExitCode {
    let checks: [Check; 10] = [
        ("fig2-optimum", fig2_optimum),
        ("fig5-null", fig5_null),
        ("temperature-robustness", temperature),
        ("fig3-cutoff", fig3_cutoff),
        ("lyapunov-correctness", lyapunov),
        ("physicality", physicality),
        ("decoupled-limit", decoupled),
        ("exchange-symmetry", exchange),
        ("validity-chain", validity_chain),
        ("stability-crosscheck", routh),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let (pass, detail) = check();
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        failed += usize::from(!pass);
    }
    let baseline = run_point(&formal(), &DEFAULT_PAIRS).unwrap();
    println!(
        "note: baseline drift is not Hurwitz (spectral abscissa 2pi x {:.1} kHz); under stability = \"require\" the figure checks have no stable point to evaluate",
        baseline.spectral_abscissa / (2.0 * PI) / 1e3
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
