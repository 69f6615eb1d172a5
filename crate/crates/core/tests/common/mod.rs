//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's solvers.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Roots of `w^2 + i nu k^2 w - c^2 k^2` by Weierstrass (Durand-Kerner)
/// iteration, returned sorted by real part descending, then imaginary part
/// descending.
pub fn dispersion_roots_iterative(nu: f64, c: f64, k: f64) -> [Complex64; 2] {
    let b = Complex64::new(0.0, nu * k * k);
    let c0 = Complex64::new(-(c * k) * (c * k), 0.0);
    let poly = |w: Complex64| w * w + b * w + c0;
    let scale = 1.0 + b.norm() + c0.norm().sqrt();
    let mut z = [
        Complex64::new(0.4, 0.9) * scale,
        Complex64::new(-0.7, -0.3) * scale,
    ];
    for _ in 0..500 {
        let z0 = z[0] - poly(z[0]) / (z[0] - z[1]);
        let z1 = z[1] - poly(z[1]) / (z[1] - z0);
        let done = (z0 - z[0]).norm() + (z1 - z[1]).norm() <= 1e-16 * scale;
        z = [z0, z1];
        if done {
            break;
        }
    }
    // two Newton polishes
    for r in z.iter_mut() {
        for _ in 0..2 {
            let d = 2.0 * *r + b;
            if d.norm() > 0.0 {
                *r -= poly(*r) / d;
            }
        }
    }
    z.sort_by(|a, b| (b.re, b.im).partial_cmp(&(a.re, a.im)).unwrap());
    z
}

/// `coeff(m) = (1/N) sum_j p_j exp(-2 pi i m j / N)` for `m = -N/2..N/2`,
/// by direct summation.
pub fn naive_dft(samples: &[f64]) -> Vec<(i64, Complex64)> {
    let n = samples.len();
    let half = (n / 2) as i64;
    (-half..half)
        .map(|m| {
            let sum: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, &s)| Complex64::from_polar(s, -2.0 * PI * (m as f64) * (j as f64) / n as f64))
                .sum();
            (m, sum / n as f64)
        })
        .collect()
}

pub fn naive_idft(coeffs: &[(i64, Complex64)], n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            coeffs
                .iter()
                .map(|&(m, a)| a * Complex64::from_polar(1.0, 2.0 * PI * (m as f64) * (j as f64) / n as f64))
                .sum()
        })
        .collect()
}

/// Classical RK4 for the modal system `p' = v, v' = -nu k^2 v - c^2 k^2 p`.
pub fn rk4_mode(nu: f64, c: f64, k: f64, p0: Complex64, q0: Complex64, t: f64, steps: usize) -> Complex64 {
    let h = t / steps as f64;
    let (a, b) = (nu * k * k, (c * k) * (c * k));
    let rhs = |p: Complex64, v: Complex64| (v, -a * v - b * p);
    let (mut p, mut v) = (p0, q0);
    for _ in 0..steps {
        let (k1p, k1v) = rhs(p, v);
        let (k2p, k2v) = rhs(p + 0.5 * h * k1p, v + 0.5 * h * k1v);
        let (k3p, k3v) = rhs(p + 0.5 * h * k2p, v + 0.5 * h * k2v);
        let (k4p, k4v) = rhs(p + h * k3p, v + h * k3v);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    p
}

/// RK4 with step doubling: halve the step until two successive results agree
/// to `tol`, returning the finer one.
pub fn rk4_mode_converged(nu: f64, c: f64, k: f64, p0: Complex64, q0: Complex64, t: f64, tol: f64) -> Complex64 {
    let mut steps = 64;
    let mut prev = rk4_mode(nu, c, k, p0, q0, t, steps);
    loop {
        steps *= 2;
        let next = rk4_mode(nu, c, k, p0, q0, t, steps);
        if (next - prev).norm() <= tol || steps > 1 << 22 {
            return next;
        }
        prev = next;
    }
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

pub fn gaussian(x: &[f64], center: f64, width: f64) -> Vec<f64> {
    x.iter()
        .map(|x| (-0.5 * ((x - center) / width).powi(2)).exp())
        .collect()
}
