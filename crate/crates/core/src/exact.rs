//! Analytic periodic solver.
//!
//! Each Fourier mode of the field obeys `p'' + nu k^2 p' + c^2 k^2 p = 0`,
//! which is solved in closed form from the roots of the dispersion relation.
//! Any time is reached in one evaluation, no stepping.

use num_complex::Complex64;

use crate::dispersion::{solve_dispersion, DispersionResult, MediumParams, Regime};
use crate::error::{Error, Result};
use crate::spectral::{check_even_size, check_finite, SpectralField};

/// Imaginary residue tolerated in a synthesized real field, relative to the
/// field scale.
pub const REALNESS_TOLERANCE: f64 = 1e-10;

/// Amplitudes of one mode in the two-exponential basis
/// `a exp(-i w1 t) + b exp(-i w2 t)`, or in the repeated-root basis
/// `(a + b t) exp(-nu k^2 t / 2)` when `degenerate` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoefficients {
    pub k: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub degenerate: bool,
}

fn half_decay(d: &DispersionResult) -> f64 {
    0.5 * d.nu * d.k * d.k
}

/// Match the initial amplitude `p0` and time derivative `q0` of a mode.
pub fn fit_mode(k: f64, p0: Complex64, q0: Complex64, d: &DispersionResult) -> ModeCoefficients {
    let degenerate = d.regime == Regime::Degenerate || d.omega1 == d.omega2;
    if degenerate {
        return ModeCoefficients {
            k,
            a: p0,
            b: q0 + half_decay(d) * p0,
            degenerate,
        };
    }
    let i = Complex64::i();
    let a = (q0 + i * d.omega2 * p0) / (i * (d.omega2 - d.omega1));
    ModeCoefficients {
        k,
        a,
        b: p0 - a,
        degenerate,
    }
}

pub fn evolve_mode(mc: &ModeCoefficients, d: &DispersionResult, t: f64) -> Complex64 {
    if mc.degenerate {
        return (mc.a + mc.b * t) * (-half_decay(d) * t).exp();
    }
    let phase = |w: Complex64| (Complex64::new(0.0, -t) * w).exp();
    mc.a * phase(d.omega1) + mc.b * phase(d.omega2)
}

/// Time derivative of [`evolve_mode`].
pub fn evolve_mode_rate(mc: &ModeCoefficients, d: &DispersionResult, t: f64) -> Complex64 {
    if mc.degenerate {
        let s = half_decay(d);
        return (mc.b - s * (mc.a + mc.b * t)) * (-s * t).exp();
    }
    let i = Complex64::i();
    let phase = |w: Complex64| (Complex64::new(0.0, -t) * w).exp();
    -i * (mc.a * d.omega1 * phase(d.omega1) + mc.b * d.omega2 * phase(d.omega2))
}

/// Initial-value problem fitted once and evaluable at any `t >= 0`.
#[derive(Debug, Clone)]
pub struct ExactSolver {
    domain_length: f64,
    modes: Vec<(ModeCoefficients, DispersionResult)>,
    scale: f64,
}

impl ExactSolver {
    pub fn new(
        initial_p: &[f64],
        initial_q: &[f64],
        medium: &MediumParams,
        domain_length: f64,
    ) -> Result<Self> {
        let n = initial_p.len();
        check_even_size(n, 2)?;
        if initial_q.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: initial_q.len(),
            });
        }
        check_finite(initial_p)?;
        check_finite(initial_q)?;

        let p_hat = SpectralField::transform(initial_p, domain_length)?;
        let q_hat = SpectralField::transform(initial_q, domain_length)?;
        let modes = p_hat
            .modes()
            .map(|m| {
                let k = p_hat.wavenumber(m).abs();
                let d = solve_dispersion(medium, k)?;
                Ok((fit_mode(k, p_hat.coeff(m), q_hat.coeff(m), &d), d))
            })
            .collect::<Result<Vec<_>>>()?;

        let max_abs = |v: &[f64]| v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        Ok(Self {
            domain_length,
            modes,
            scale: max_abs(initial_p).max(max_abs(initial_q)),
        })
    }

    pub fn n_points(&self) -> usize {
        self.modes.len()
    }

    /// Mode amplitudes at time `t`.
    pub fn spectrum_at(&self, t: f64) -> Result<SpectralField> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidParameters(format!(
                "time must be non-negative, got {t}"
            )));
        }
        let coeffs = self
            .modes
            .iter()
            .map(|(mc, d)| evolve_mode(mc, d, t))
            .collect();
        SpectralField::from_coeffs(coeffs, self.domain_length)
    }

    /// Real samples of the field at time `t`.
    pub fn field_at(&self, t: f64) -> Result<Vec<f64>> {
        let samples = self.spectrum_at(t)?.synthesize();
        let norm = samples.iter().fold(self.scale, |a, z| a.max(z.re.abs()));
        let residue = samples.iter().fold(0.0f64, |a, z| a.max(z.im.abs()));
        if residue > REALNESS_TOLERANCE * norm.max(f64::MIN_POSITIVE) {
            return Err(Error::NonRealOutput { residue });
        }
        Ok(samples.into_iter().map(|z| z.re).collect())
    }
}

/// Evolve real initial data `p(x, 0)`, `p_t(x, 0)` on a periodic domain of
/// length `domain_length` to time `t`.
pub fn evolve_field(
    initial_p: &[f64],
    initial_q: &[f64],
    medium: &MediumParams,
    domain_length: f64,
    t: f64,
) -> Result<Vec<f64>> {
    ExactSolver::new(initial_p, initial_q, medium, domain_length)?.field_at(t)
}
