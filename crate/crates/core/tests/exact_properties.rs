mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lossy_acoustics::dispersion::{solve_dispersion, MediumParams, Regime, DEGENERACY_TOLERANCE};
use lossy_acoustics::exact::{evolve_mode, evolve_mode_rate, fit_mode, ExactSolver};
use lossy_acoustics::SpectralField;

use common::{gaussian, max_diff, naive_dft, naive_idft, rk4_mode, rk4_mode_converged};

fn medium(nu: f64, c: f64) -> MediumParams {
    MediumParams::from_diffusivity(nu, c).unwrap()
}

fn mode_at(nu: f64, c: f64, k: f64, p0: Complex64, q0: Complex64, t: f64) -> Complex64 {
    let d = solve_dispersion(&medium(nu, c), k).unwrap();
    evolve_mode(&fit_mode(k, p0, q0, &d), &d, t)
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn ode_residual(nu: f64, c: f64, k: f64, p0: Complex64, q0: Complex64, t: f64, h: f64) -> f64 {
    let p = |s: f64| mode_at(nu, c, k, p0, q0, s);
    let (pm, p_, pp) = (p(t - h), p(t), p(t + h));
    let second = (pp - 2.0 * p_ + pm) / (h * h);
    let first = (pp - pm) / (2.0 * h);
    (second + nu * k * k * first + (c * k) * (c * k) * p_).norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modal_ode_residual_is_second_order(
        nu in 0.0f64..2.0, c in 0.5f64..2.0, k in 0.5f64..3.0,
        p0 in complex(), q0 in complex(), t in 0.5f64..2.0,
    ) {
        prop_assume!(p0.norm() + q0.norm() > 0.1);
        let coarse = ode_residual(nu, c, k, p0, q0, t, 1e-2);
        let fine = ode_residual(nu, c, k, p0, q0, t, 5e-3);
        let finer = ode_residual(nu, c, k, p0, q0, t, 2.5e-3);
        prop_assume!(coarse > 1e-7);
        for ratio in [coarse / fine, fine / finer] {
            prop_assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn modulus_bound(
        nu in 0.0f64..3.0, c in 0.2f64..2.0, k in 0.0f64..10.0,
        p0 in complex(), q0 in complex(), t in 0.0f64..20.0,
    ) {
        let d = solve_dispersion(&medium(nu, c), k).unwrap();
        let mc = fit_mode(k, p0, q0, &d);
        let p = evolve_mode(&mc, &d, t).norm();
        let growth = if mc.degenerate {
            -0.5 * nu * k * k
        } else {
            d.omega1.im.max(d.omega2.im)
        };
        let bound = (mc.a.norm() + mc.b.norm() * (1.0 + t)) * (growth * t).exp();
        prop_assert!(p <= bound * (1.0 + 1e-12));
        // below the cut-off the envelope uses the common decay rate
        if d.regime != Regime::Diffusive {
            let envelope = (0.5 * nu * k * k * t).exp() * p;
            prop_assert!(envelope <= (mc.a.norm() + mc.b.norm() * (1.0 + t)) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn lossless_modes_keep_energy(
        c in 0.1f64..10.0, k in 0.01f64..10.0,
        p0 in complex(), q0 in complex(), t in 0.0f64..100.0,
    ) {
        let m = MediumParams::new(0.0, 0.0, 1.0, c).unwrap();
        let d = solve_dispersion(&m, k).unwrap();
        let mc = fit_mode(k, p0, q0, &d);
        let ck = c * k;
        let energy = |p: Complex64, q: Complex64| p.norm_sqr() + q.norm_sqr() / (ck * ck);
        let e0 = energy(p0, q0);
        let et = energy(evolve_mode(&mc, &d, t), evolve_mode_rate(&mc, &d, t));
        prop_assert!((et - e0).abs() <= 1e-10 * e0);
    }

    #[test]
    fn real_samples_stay_real(seed in any::<u64>(), nu in 0.0f64..1.0, t in 0.0f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 32;
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let q: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let solver = ExactSolver::new(&p, &q, &medium(nu, 1.0), 2.0 * PI).unwrap();
        let z = solver.spectrum_at(t).unwrap().synthesize();
        let scale = z.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        let residue = z.iter().map(|v| v.im.abs()).fold(0.0f64, f64::max);
        prop_assert!(residue <= 1e-10 * scale.max(1e-300));
        prop_assert!(solver.field_at(t).is_ok());
    }

    #[test]
    fn modes_above_cutoff_never_change_sign(nu in 0.1f64..3.0, c in 0.1f64..2.0, s in 1.01f64..20.0, p0 in 0.1f64..2.0) {
        let m = medium(nu, c);
        let k = s * m.cutoff_wavenumber().unwrap();
        let d = solve_dispersion(&m, k).unwrap();
        let mc = fit_mode(k, Complex64::new(p0, 0.0), Complex64::new(0.0, 0.0), &d);
        let horizon = 5.0 / d.omega1.im.abs();
        let mut prev = p0;
        for i in 1..=2000 {
            let p = evolve_mode(&mc, &d, horizon * i as f64 / 2000.0);
            prop_assert!(p.im.abs() <= 1e-12 * p0);
            prop_assert!(p.re > 0.0 && p.re <= prev);
            prev = p.re;
        }
    }
}

#[test]
fn fit_matches_linear_solve() {
    // a + b = p0, -i(w1 a + w2 b) = q0 solved by Cramer's rule
    let i = Complex64::i();
    for (nu, c, k, p0, q0) in [
        (1.0, 1.0, 1.0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        (0.2, 3.0, 2.5, Complex64::new(0.3, -1.0), Complex64::new(2.0, 0.5)),
        (1.0, 1.0, 4.0, Complex64::new(-1.0, 0.2), Complex64::new(0.1, 0.0)),
    ] {
        let d = solve_dispersion(&medium(nu, c), k).unwrap();
        let (w1, w2) = (d.omega1, d.omega2);
        let det = -i * w2 - (-i * w1);
        let a = (p0 * (-i * w2) - q0) / det;
        let b = (q0 - (-i * w1) * p0) / det;
        let mc = fit_mode(k, p0, q0, &d);
        assert!((mc.a - a).norm() < 1e-13 && (mc.b - b).norm() < 1e-13);
    }
    let d = solve_dispersion(&medium(1.0, 1.0), 1.0).unwrap();
    let mc = fit_mode(1.0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), &d);
    assert!((mc.a - Complex64::new(0.5, 0.28867513459481287)).norm() < 1e-12);
    assert!((mc.b - mc.a.conj()).norm() < 1e-12);
}

#[test]
fn damped_mode_matches_step_doubling_integrator() {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let oracle = rk4_mode_converged(1.0, 1.0, 1.0, one, zero, 1.0, 1e-13);
    assert!((oracle.re - 0.6597).abs() < 5e-5);
    let p = mode_at(1.0, 1.0, 1.0, one, zero, 1.0);
    assert!((p - oracle).norm() < 1e-11);
    assert!(p.im.abs() <= 1e-12);

    // several regimes, complex data
    for (nu, c, k) in [(1.0, 1.0, 4.0), (0.05, 2.0, 3.0), (1.0, 1.0, 2.0 * (1.0 + 1e-4))] {
        let (p0, q0) = (Complex64::new(0.4, -0.2), Complex64::new(-1.0, 0.7));
        let oracle = rk4_mode_converged(nu, c, k, p0, q0, 1.5, 1e-13);
        assert!((mode_at(nu, c, k, p0, q0, 1.5) - oracle).norm() < 1e-10);
    }
}

#[test]
fn degenerate_band_agrees_with_neighbours() {
    let (nu, c) = (1.0, 1.0);
    let kc = medium(nu, c).cutoff_wavenumber().unwrap();
    let (p0, q0) = (Complex64::new(1.0, 0.0), Complex64::new(-0.3, 0.0));
    for side in [-1.0, 1.0] {
        let k = kc * (1.0 + side * 1.5 * DEGENERACY_TOLERANCE);
        let d = solve_dispersion(&medium(nu, c), k).unwrap();
        assert_ne!(d.regime, Regime::Degenerate);
        for t in [0.1, 0.5, 1.0, 3.0] {
            let s = 0.5 * nu * k * k;
            let repeated = (p0 + (q0 + s * p0) * t) * (-s * t).exp();
            let general = mode_at(nu, c, k, p0, q0, t);
            assert!((general - repeated).norm() <= 1e-6 * repeated.norm());
        }
    }
    // inside the band the repeated-root basis is used
    let d = solve_dispersion(&medium(nu, c), kc).unwrap();
    let mc = fit_mode(kc, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), &d);
    assert!(mc.degenerate);
    assert_eq!((mc.a.re, mc.b.re), (1.0, 2.0));
}

#[test]
fn transform_matches_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 8, 16, 34] {
        let p: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let field = SpectralField::transform(&p, 1.7).unwrap();
        for (m, c) in naive_dft(&p) {
            assert!((field.coeff(m) - c).norm() < 1e-13);
        }
        let back: Vec<f64> = field.synthesize().iter().map(|z| z.re).collect();
        let direct: Vec<f64> = naive_idft(&naive_dft(&p), n).iter().map(|z| z.re).collect();
        assert!(max_diff(&back, &p) < 1e-12);
        assert!(max_diff(&direct, &p) < 1e-12);
    }
}

#[test]
fn field_evolution_matches_modal_integration() {
    let (nu, c, length, n, t) = (0.05, 1.3, 3.0, 32usize, 0.8);
    let x: Vec<f64> = (0..n).map(|j| j as f64 * length / n as f64).collect();
    let p0 = gaussian(&x, 1.2, 0.25);
    let q0: Vec<f64> = x.iter().map(|x| (2.0 * PI * x / length).sin()).collect();
    let got = ExactSolver::new(&p0, &q0, &medium(nu, c), length)
        .unwrap()
        .field_at(t)
        .unwrap();
    let evolved: Vec<(i64, Complex64)> = naive_dft(&p0)
        .into_iter()
        .zip(naive_dft(&q0))
        .map(|((m, p), (_, q))| (m, rk4_mode(nu, c, 2.0 * PI * m as f64 / length, p, q, t, 20_000)))
        .collect();
    let want: Vec<f64> = naive_idft(&evolved, n).iter().map(|z| z.re).collect();
    assert!(max_diff(&got, &want) < 1e-9);
}
