use nalgebra::{DMatrix, Matrix2, Matrix4, Vector4};
use omm_core::gaussian::{
    partial_transpose, solve_lyapunov_formal, symplectic_eigenvalues, symplectic_form,
    CovarianceMatrix, DIM,
};
use omm_core::measures::{
    gaussian_steering, pair_report, log_negativity, log_negativity_via_partial_transpose,
    partial_transpose_eta, reduce, ModePair, ReducedCovariance, DEFAULT_PAIRS,
};
use omm_core::model::{build_diffusion, build_drift, DriftConvention, EffectiveParams};
use proptest::prelude::*;
use std::f64::consts::PI;

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, s, -s, c)
}

fn local(a: Matrix2<f64>, b: Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
    m
}

fn two_mode_squeezer(r: f64) -> Matrix4<f64> {
    let (c, s) = (r.cosh(), r.sinh());
    Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, -s, //
        s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    )
}

fn beam_splitter(t: f64) -> Matrix4<f64> {
    let (s, c) = t.sin_cos();
    Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, s, //
        -s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    )
}

fn squeezer(r: f64) -> Matrix2<f64> {
    Matrix2::new(r.exp(), 0.0, 0.0, (-r).exp())
}

/// Physical two-mode state `S diag(ν₁, ν₁, ν₂, ν₂) Sᵀ` with `S` symplectic.
fn two_mode_state() -> impl Strategy<Value = Matrix4<f64>> {
    (
        0.5f64..2.0,
        0.5f64..2.0,
        0.0f64..1.2,
        0.0f64..PI,
        -0.6f64..0.6,
        -0.6f64..0.6,
        0.0f64..PI,
        0.0f64..PI,
    )
        .prop_map(|(n1, n2, r, t, s1, s2, a, b)| {
            let s = local(rotation(a), rotation(b))
                * beam_splitter(t)
                * two_mode_squeezer(r)
                * local(squeezer(s1), squeezer(s2));
            let d = Matrix4::from_diagonal(&Vector4::new(n1, n1, n2, n2));
            let v = s * d * s.transpose();
            (v + v.transpose()) * 0.5
        })
}

fn pair() -> ModePair {
    "m1-m2".parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_states_are_physical(v in two_mode_state()) {
        let r = ReducedCovariance::new(pair(), v);
        prop_assert!(r.is_physical().unwrap());
    }

    #[test]
    fn negativity_routes_agree(v in two_mode_state()) {
        let r = ReducedCovariance::new(pair(), v);
        let pt = partial_transpose(&r.to_dmatrix()).unwrap();
        let nu = symplectic_eigenvalues(&pt).unwrap()[0];
        let eta = partial_transpose_eta(&r).unwrap();
        prop_assert!((eta - nu).abs() <= 1e-9 * nu.max(1.0), "{} vs {}", eta, nu);
        let a = log_negativity(&r).unwrap();
        let b = log_negativity_via_partial_transpose(&r).unwrap();
        prop_assert!((a - b).abs() <= 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn measures_invariant_under_local_rotations(
        v in two_mode_state(), t1 in 0.0f64..(2.0 * PI), t2 in 0.0f64..(2.0 * PI)
    ) {
        let o = local(rotation(t1), rotation(t2));
        let r = ReducedCovariance::new(pair(), v);
        let rr = ReducedCovariance::new(pair(), o * v * o.transpose());
        let (e1, e2) = (log_negativity(&r).unwrap(), log_negativity(&rr).unwrap());
        prop_assert!((e1 - e2).abs() < 1e-9);
        let (s1, s2) = (gaussian_steering(&r).unwrap(), gaussian_steering(&rr).unwrap());
        prop_assert!((s1.a_to_b - s2.a_to_b).abs() < 1e-9);
        prop_assert!((s1.b_to_a - s2.b_to_a).abs() < 1e-9);
    }

    #[test]
    fn steering_implies_entanglement(v in two_mode_state()) {
        let r = ReducedCovariance::new(pair(), v);
        let s = gaussian_steering(&r).unwrap();
        if s.a_to_b > 0.0 || s.b_to_a > 0.0 {
            prop_assert!(log_negativity(&r).unwrap() > 0.0);
        }
        prop_assert_eq!(s.asymmetry, (s.a_to_b - s.b_to_a).abs());
    }

    #[test]
    fn symmetric_states_have_no_steering_asymmetry(n in 0.5f64..3.0, r in 0.0f64..1.5) {
        let t = two_mode_squeezer(r);
        let v = t * Matrix4::identity() * n * t.transpose();
        let s = gaussian_steering(&ReducedCovariance::new(pair(), v)).unwrap();
        prop_assert!(s.asymmetry <= 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution(v in two_mode_state()) {
        let m = DMatrix::from_iterator(4, 4, v.iter().copied());
        let twice = partial_transpose(&partial_transpose(&m).unwrap()).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn mode_swap_keeps_symplectic_spectrum(v in two_mode_state()) {
        let r = ReducedCovariance::new(pair(), v);
        let a = symplectic_eigenvalues(&r.to_dmatrix()).unwrap();
        let b = symplectic_eigenvalues(&r.swapped().to_dmatrix()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9 * x.max(1.0));
        }
    }

    #[test]
    fn swapped_reduction_transposes_cross_block(g0 in 0.5f64..5.0, gm in 0.5f64..3.0) {
        let v = formal_state(&effective(g0, gm, gm / 2.0));
        let p: ModePair = "m1-m2".parse().unwrap();
        let a = reduce(&v, p).unwrap();
        let b = reduce(&v, p.swapped()).unwrap();
        prop_assert_eq!(a.swapped().matrix, b.matrix);
        prop_assert_eq!(a.block_c().transpose(), b.block_c());
    }

    #[test]
    fn drift_and_diffusion_are_scale_covariant(s in 0.01f64..100.0, g0 in 0.5f64..5.0) {
        let e = effective(g0, 2.0, 1.0);
        let es = e.scaled(s);
        let conv = DriftConvention::default();
        let (a, as_) = (build_drift(&e, conv).unwrap(), build_drift(&es, conv).unwrap());
        let err = (as_.as_matrix() - a.as_matrix() * s).amax();
        prop_assert!(err <= 1e-9 * a.as_matrix().amax() * s);
        let (d, ds) = (build_diffusion(&e).unwrap(), build_diffusion(&es).unwrap());
        prop_assert!((ds.as_matrix() - d.as_matrix() * s).amax() <= 1e-9 * d.as_matrix().amax() * s);
        let (v, vs) = (formal_state(&e), formal_state(&es));
        let err = (vs.as_matrix() - v.as_matrix()).amax() / v.as_matrix().amax();
        prop_assert!(err < 1e-8, "{:e}", err);
    }

    #[test]
    fn coupling_part_is_hamiltonian(
        g0 in 0.0f64..6.0, gm1 in 0.0f64..3.0, gm2 in 0.0f64..3.0,
        dc in -60.0f64..60.0, dm in -60.0f64..60.0
    ) {
        let mut e = effective(g0, gm1, gm2);
        e.delta_c = 2.0 * PI * dc * 1e6;
        e.delta_m = [2.0 * PI * dm * 1e6, -2.0 * PI * dm * 1e6];
        let mut a = build_drift(&e, DriftConvention::PhaseQuadrature).unwrap().into_inner();
        for i in 0..DIM {
            a[(i, i)] = 0.0;
        }
        let h = -symplectic_form(5) * &a;
        prop_assert!((&h - h.transpose()).amax() <= 1e-12 * h.amax().max(1.0));
    }

    #[test]
    fn exchange_symmetry(
        g0 in 0.5f64..5.0, gm1 in 0.2f64..3.0, gm2 in 0.2f64..3.0,
        k1 in 0.5f64..2.0, k2 in 0.5f64..2.0
    ) {
        let mut e = effective(g0, gm1, gm2);
        e.kappa_m = [2.0 * PI * k1 * 1e6, 2.0 * PI * k2 * 1e6];
        let v = formal_state(&e);
        let w = formal_state(&e.exchanged());

        // subsystem swap plus a π rotation of every non-cavity mode, which
        // absorbs the ring sign of the cavity–phonon couplings
        let mut t = DMatrix::<f64>::zeros(DIM, DIM);
        t[(0, 0)] = 1.0;
        t[(1, 1)] = 1.0;
        for k in 2..6 {
            t[(k, k + 4)] = -1.0;
            t[(k + 4, k)] = -1.0;
        }
        let expect = &t * v.as_matrix() * t.transpose();
        let err = (w.as_matrix() - &expect).amax() / expect.amax();
        prop_assert!(err < 1e-9, "{:e}", err);

        // formal states at unstable points may be unphysical; the measure
        // outcome, including failure, must still map across the exchange
        let report = |v: &CovarianceMatrix, p: ModePair| pair_report(v, p, false).ok();
        let [cm1, cm2, mm] = DEFAULT_PAIRS;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(1.0);
        for (p, q) in [(cm1, cm2), (cm2, cm1), (mm, mm)] {
            match (report(&v, p), report(&w, q)) {
                (Some(x), Some(y)) => {
                    prop_assert!(close(x.log_negativity, y.log_negativity), "{} {}", p, q);
                    let (sx, sy) = if p == q {
                        (x.steering.a_to_b, y.steering.b_to_a)
                    } else {
                        (x.steering.a_to_b, y.steering.a_to_b)
                    };
                    prop_assert!(close(sx, sy));
                    prop_assert!(close(x.steering.asymmetry, y.steering.asymmetry));
                }
                (None, None) => {}
                (x, y) => prop_assert!(false, "{p}: {x:?} vs {y:?}"),
            }
        }
    }
}

fn effective(g0_mhz: f64, gm1_mhz: f64, gm2_mhz: f64) -> EffectiveParams {
    let mut e = EffectiveParams::baseline();
    e.om_coupling = 2.0 * PI * g0_mhz * 1e6;
    e.mm_coupling = [2.0 * PI * gm1_mhz * 1e6, 2.0 * PI * gm2_mhz * 1e6];
    e
}

fn formal_state(e: &EffectiveParams) -> CovarianceMatrix {
    let a = build_drift(e, DriftConvention::default()).unwrap();
    let d = build_diffusion(e).unwrap();
    solve_lyapunov_formal(&a, &d).unwrap()
}

#[test]
fn decoupled_limit_is_thermal_product() {
    for t in [0.0, 0.01, 0.3, 2.0] {
        let mut e = EffectiveParams::baseline();
        e.om_coupling = 0.0;
        e.mm_coupling = [0.0; 2];
        let laser = 2.0 * PI * 299_792_458.0 / 1064e-9;
        e.set_temperature(t, laser, [2.0 * PI * 10e9; 2]).unwrap();
        let v = formal_state(&e);
        let v = v.as_matrix();
        let n = [e.n_c, e.n_m[0], e.n_b[0], e.n_m[1], e.n_b[1]];
        for i in 0..DIM {
            for j in 0..DIM {
                let expect = if i == j { (2.0 * n[i / 2] + 1.0) / 2.0 } else { 0.0 };
                assert!((v[(i, j)] - expect).abs() <= 1e-12 * expect.max(1.0), "T={t} ({i},{j})");
            }
        }
    }
}
