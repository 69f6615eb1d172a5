//! Spectral analysis of the explicit finite-difference scheme.
//!
//! Substituting `p_j^n = G^n exp(i theta j)` into the update of
//! [`crate::fdtd`] gives, with `s = 4 sin^2(theta / 2)`,
//!
//! ```text
//! G^2 - B G + C = 0,   B = 2 - (cfl^2 + visc) s,   C = 1 - visc s
//! ```
//!
//! where `cfl = c dt / dx` and `visc = nu dt / dx^2`. The two roots are the
//! per-step gains of the scheme and are compared here against the exact
//! gains `exp(-i w dt)` at `k = theta / dx`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dispersion::{solve_dispersion, MediumParams, Regime};
use crate::error::{Error, Result};
use crate::fdtd::GridSpec;

/// Slack above unit gain still certified as stable.
pub const STABILITY_SLACK: f64 = 1e-12;

/// Uniform samples of `[0, pi]` before refinement.
pub const STABILITY_SAMPLES: usize = 2048;

/// Dimensionless stencil weights of the scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilWeights {
    /// `c dt / dx`
    pub cfl: f64,
    /// `nu dt / dx^2`
    pub visc: f64,
}

impl StencilWeights {
    pub fn new(spec: &GridSpec, medium: &MediumParams) -> Self {
        let dx = spec.dx();
        Self {
            cfl: medium.sound_speed() * spec.dt() / dx,
            visc: medium.diffusivity() * spec.dt() / (dx * dx),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.cfl.is_finite() && self.cfl > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "cfl must be positive, got {}",
                self.cfl
            )));
        }
        if !(self.visc.is_finite() && self.visc >= 0.0) {
            return Err(Error::InvalidParameters(format!(
                "visc must be non-negative, got {}",
                self.visc
            )));
        }
        Ok(())
    }

    /// `(B, C)` of the monic characteristic polynomial at `theta`.
    pub fn characteristic(&self, theta: f64) -> (f64, f64) {
        let s = symbol(theta);
        (
            2.0 - (self.cfl * self.cfl + self.visc) * s,
            1.0 - self.visc * s,
        )
    }
}

/// `4 sin^2(theta / 2)`, the negated symbol of the second difference.
fn symbol(theta: f64) -> f64 {
    let h = (0.5 * theta).sin();
    4.0 * h * h
}

/// Both roots of the scheme's characteristic polynomial at `theta = k dx`.
///
/// The first root is the branch paired with the `+kcf` exact root: the one
/// with negative phase for a complex pair, the larger in modulus for a real
/// pair.
pub fn numerical_amplification(theta: f64, cfl: f64, visc: f64) -> Result<[Complex64; 2]> {
    let weights = StencilWeights { cfl, visc };
    weights.validate()?;
    if !(theta.is_finite() && theta.abs() <= PI) {
        return Err(Error::InvalidParameters(format!(
            "theta must lie in [-pi, pi], got {theta}"
        )));
    }
    Ok(roots(&weights, theta))
}

fn roots(weights: &StencilWeights, theta: f64) -> [Complex64; 2] {
    let s = symbol(theta);
    let (b, c) = weights.characteristic(theta);
    let a = weights.cfl * weights.cfl + weights.visc;
    // B^2 - 4C factored so that it is exactly zero at theta = 0.
    let disc = s * (a * a * s - 4.0 * weights.cfl * weights.cfl);
    if disc < 0.0 {
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(0.5 * b, -im), Complex64::new(0.5 * b, im)]
    } else {
        let big = 0.5 * (b + b.signum() * disc.sqrt());
        let small = if big == 0.0 { 0.0 } else { c / big };
        let (g1, g2) = if big.abs() >= small.abs() {
            (big, small)
        } else {
            (small, big)
        };
        [Complex64::new(g1, 0.0), Complex64::new(g2, 0.0)]
    }
}

/// `|G^2 - B G + C|` scaled by the largest term.
pub fn characteristic_residual(g: Complex64, theta: f64, cfl: f64, visc: f64) -> f64 {
    let (b, c) = StencilWeights { cfl, visc }.characteristic(theta);
    let scale = 1f64.max(g.norm_sqr()).max(b.abs() * g.norm()).max(c.abs());
    (g * g - b * g + c).norm() / scale
}

fn gain(weights: &StencilWeights, theta: f64) -> f64 {
    let [g1, g2] = roots(weights, theta);
    g1.norm().max(g2.norm())
}

/// Exact per-step gains `(G1, G2)` at `k = |theta| / dx`.
pub fn exact_amplification(
    theta: f64,
    spec: &GridSpec,
    medium: &MediumParams,
) -> Result<[Complex64; 2]> {
    let d = solve_dispersion(medium, theta.abs() / spec.dx())?;
    let g = d.amplification(spec.dt())?;
    Ok([g.g1, g.g2])
}

/// Numerical and exact gains over a set of `theta` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeSpectrum {
    pub theta: Vec<f64>,
    pub g_num: Vec<[Complex64; 2]>,
    pub g_exact: Vec<[Complex64; 2]>,
    pub cfl: f64,
    pub visc: f64,
}

impl SchemeSpectrum {
    pub fn new(spec: &GridSpec, medium: &MediumParams, theta: &[f64]) -> Result<Self> {
        let w = StencilWeights::new(spec, medium);
        let g_num = theta
            .iter()
            .map(|&t| numerical_amplification(t, w.cfl, w.visc))
            .collect::<Result<Vec<_>>>()?;
        let g_exact = theta
            .iter()
            .map(|&t| exact_amplification(t, spec, medium))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            theta: theta.to_vec(),
            g_num,
            g_exact,
            cfl: w.cfl,
            visc: w.visc,
        })
    }
}

/// `theta_m = 2 pi m / N` for the modes `m = 0..=N/2` a grid resolves.
pub fn resolvable_thetas(n_points: usize) -> Vec<f64> {
    (0..=n_points / 2)
        .map(|m| 2.0 * PI * m as f64 / n_points as f64)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityCertificate {
    pub stable: bool,
    pub max_gain: f64,
    pub worst_theta: f64,
    pub cfl: f64,
    pub visc: f64,
}

/// Largest modulus of the scheme's gains over `theta` in `[0, pi]`.
///
/// The curve is sampled uniformly and the best sample is polished with a
/// golden-section search over its neighbouring interval.
pub fn stability_check(spec: &GridSpec, medium: &MediumParams) -> StabilityCertificate {
    let w = StencilWeights::new(spec, medium);
    let step = PI / STABILITY_SAMPLES as f64;
    let (mut worst_theta, mut max_gain) = (0..=STABILITY_SAMPLES)
        .map(|i| {
            let theta = (i as f64 * step).min(PI);
            (theta, gain(&w, theta))
        })
        .fold((0.0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });

    let lo = (worst_theta - step).max(0.0);
    let hi = (worst_theta + step).min(PI);
    let (theta, refined) = golden_section_max(|t| gain(&w, t), lo, hi, 1e-12);
    if refined > max_gain {
        max_gain = refined;
        worst_theta = theta;
    }

    StabilityCertificate {
        stable: max_gain <= 1.0 + STABILITY_SLACK,
        max_gain,
        worst_theta,
        cfl: w.cfl,
        visc: w.visc,
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Gap between the scheme and the exact gains at one `theta`, on the
/// branch paired with `G1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionErrorRecord {
    pub theta: f64,
    pub abs_gnum: f64,
    pub abs_gexact: f64,
    pub abs_gnum_max: f64,
    pub abs_gexact_max: f64,
    /// `|g_num| - |g_exact|`
    pub modulus_error: f64,
    /// `arg(g_num) - arg(g_exact)` wrapped to `[-pi, pi)`; only below cut-off.
    pub phase_error: Option<f64>,
}

pub fn wrap_phase(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

pub fn dispersion_error_map(
    spec: &GridSpec,
    medium: &MediumParams,
    theta: &[f64],
) -> Result<Vec<DispersionErrorRecord>> {
    let spectrum = SchemeSpectrum::new(spec, medium, theta)?;
    theta
        .iter()
        .zip(spectrum.g_num.iter().zip(&spectrum.g_exact))
        .map(|(&t, (num, exact))| {
            let d = solve_dispersion(medium, t.abs() / spec.dx())?;
            let phase_error = (d.regime == Regime::Propagating)
                .then(|| wrap_phase(num[0].arg() - exact[0].arg()));
            Ok(DispersionErrorRecord {
                theta: t,
                abs_gnum: num[0].norm(),
                abs_gexact: exact[0].norm(),
                abs_gnum_max: num[0].norm().max(num[1].norm()),
                abs_gexact_max: exact[0].norm().max(exact[1].norm()),
                modulus_error: num[0].norm() - exact[0].norm(),
                phase_error,
            })
        })
        .collect()
}
