//! Exact dispersion relation of the damped acoustic equation
//!
//! ```text
//! p_tt - c^2 p_xx - nu p_txx = 0,     nu = (lambda + 2 mu) / rho_bar
//! ```
//!
//! A plane wave `exp(i(kx - wt))` satisfies `w^2 + i nu k^2 w - c^2 k^2 = 0`,
//! whose roots are `w = -i nu k^2 / 2 +- k c f` with
//! `f = sqrt(1 - (nu k / 2c)^2)`. Below the cut-off `k_c = 2c / nu` the two
//! roots are damped travelling waves; above it both are purely imaginary and
//! the mode decays without oscillating.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Half-width of the band around `nu k / 2c = 1` that is classified as the
/// double root.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Physical constants of a homogeneous viscous fluid.
///
/// `lambda` is deliberately independent of `mu`: nothing here assumes
/// `lambda = -2/3 mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    lambda: f64,
    mu: f64,
    rho_bar: f64,
    c: f64,
}

impl MediumParams {
    pub fn new(lambda: f64, mu: f64, rho_bar: f64, c: f64) -> Result<Self> {
        let all = [("lambda", lambda), ("mu", mu), ("rho_bar", rho_bar), ("c", c)];
        if let Some((name, _)) = all.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParameters(format!("{name} must be finite")));
        }
        if rho_bar <= 0.0 {
            return Err(Error::InvalidParameters("rho_bar must be positive".into()));
        }
        if c <= 0.0 {
            return Err(Error::InvalidParameters("c must be positive".into()));
        }
        if mu < 0.0 {
            return Err(Error::InvalidParameters("mu must be non-negative".into()));
        }
        if lambda + 2.0 * mu < 0.0 {
            return Err(Error::InvalidParameters(
                "lambda + 2 mu must be non-negative".into(),
            ));
        }
        Ok(Self {
            lambda,
            mu,
            rho_bar,
            c,
        })
    }

    /// Medium with unit density and zero second viscosity that has the
    /// requested diffusivity.
    pub fn from_diffusivity(nu: f64, c: f64) -> Result<Self> {
        Self::new(0.0, 0.5 * nu, 1.0, c)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn rho_bar(&self) -> f64 {
        self.rho_bar
    }

    pub fn sound_speed(&self) -> f64 {
        self.c
    }

    /// `nu = (lambda + 2 mu) / rho_bar`, never negative.
    pub fn diffusivity(&self) -> f64 {
        (self.lambda + 2.0 * self.mu) / self.rho_bar
    }

    pub fn is_lossless(&self) -> bool {
        self.lambda + 2.0 * self.mu == 0.0
    }

    /// `k_c = 2 rho_bar c / (lambda + 2 mu)`, where the two roots merge.
    pub fn cutoff_wavenumber(&self) -> Result<f64> {
        if self.is_lossless() {
            return Err(Error::LosslessMedium);
        }
        Ok(2.0 * self.rho_bar * self.c / (self.lambda + 2.0 * self.mu))
    }

    /// `nu k / 2c`; the mode is propagating while this stays below one.
    pub fn cutoff_ratio(&self, k: f64) -> f64 {
        self.diffusivity() * k / (2.0 * self.c)
    }

    /// `f = sqrt(1 - (nu k / 2c)^2)` with the branch fixed to the
    /// non-negative real axis below cut-off and the positive imaginary axis
    /// above it.
    pub fn regime_factor(&self, k: f64) -> Result<Complex64> {
        check_wavenumber(k)?;
        let r = self.cutoff_ratio(k);
        // (1 - r)(1 + r) keeps full precision near the cut-off.
        let radicand = (1.0 - r) * (1.0 + r);
        Ok(if r <= 1.0 {
            Complex64::new(radicand.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-radicand).sqrt())
        })
    }
}

fn check_wavenumber(k: f64) -> Result<()> {
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::InvalidParameters(format!(
            "wavenumber must be finite and non-negative, got {k}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Two damped travelling waves, `nu k / 2c < 1`.
    Propagating,
    /// Double root at the cut-off.
    Degenerate,
    /// Two purely decaying modes, `nu k / 2c > 1`.
    Diffusive,
}

impl Regime {
    pub fn classify(cutoff_ratio: f64) -> Self {
        if (cutoff_ratio - 1.0).abs() <= DEGENERACY_TOLERANCE {
            Regime::Degenerate
        } else if cutoff_ratio < 1.0 {
            Regime::Propagating
        } else {
            Regime::Diffusive
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Propagating => "Propagating",
            Regime::Degenerate => "Degenerate",
            Regime::Diffusive => "Diffusive",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Both roots of the dispersion relation at one wavenumber.
///
/// `omega1` always carries the `+kcf` branch; above cut-off it is the slowly
/// decaying root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionResult {
    pub k: f64,
    pub f: Complex64,
    pub omega1: Complex64,
    pub omega2: Complex64,
    pub regime: Regime,
    pub c: f64,
    pub nu: f64,
}

/// Solve `w^2 + i nu k^2 w - c^2 k^2 = 0` for a non-negative wavenumber.
pub fn solve_dispersion(medium: &MediumParams, k: f64) -> Result<DispersionResult> {
    let f = medium.regime_factor(k)?;
    let c = medium.sound_speed();
    let nu = medium.diffusivity();
    let ratio = medium.cutoff_ratio(k);
    let half_decay = 0.5 * nu * k * k;

    let (omega1, omega2) = if ratio <= 1.0 {
        let kcf = k * c * f.re;
        (
            Complex64::new(kcf, -half_decay),
            Complex64::new(-kcf, -half_decay),
        )
    } else {
        // The fast root has no cancellation; the slow one follows from the
        // product of the roots, -c^2 k^2, instead of the difference
        // nu k^2 / 2 - k c |f|, which loses digits as k grows.
        let fast = half_decay + k * c * f.im;
        let slow = (c * k) * (c * k) / fast;
        (Complex64::new(0.0, -slow), Complex64::new(0.0, -fast))
    };

    Ok(DispersionResult {
        k,
        f,
        omega1,
        omega2,
        regime: Regime::classify(ratio),
        c,
        nu,
    })
}

/// Per-step modal gains `G = exp(-i w dt)` of the two roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationFactor {
    pub g1: Complex64,
    pub g2: Complex64,
    pub dt: f64,
}

impl DispersionResult {
    pub fn amplification(&self, dt: f64) -> Result<AmplificationFactor> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "timestep must be positive, got {dt}"
            )));
        }
        let gain = |omega: Complex64| (Complex64::new(0.0, -dt) * omega).exp();
        Ok(AmplificationFactor {
            g1: gain(self.omega1),
            g2: gain(self.omega2),
            dt,
        })
    }

    /// Phase advance per step `(+kcf dt, -kcf dt)`. The gain of each root
    /// rotates by the negative of its phase shift, `arg(g1) = -beta1`.
    pub fn phase_shift(&self, dt: f64) -> Result<(f64, f64)> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "timestep must be positive, got {dt}"
            )));
        }
        if self.regime != Regime::Propagating {
            return Err(Error::DiffusiveRegime { k: self.k });
        }
        let beta = self.k * self.c * self.f.re * dt;
        Ok((beta, -beta))
    }

    /// `Re(w1) / k = c f`.
    pub fn phase_speed(&self) -> Result<f64> {
        if self.k == 0.0 {
            return Err(Error::ZeroWavenumber);
        }
        if self.regime != Regime::Propagating {
            return Err(Error::DiffusiveRegime { k: self.k });
        }
        Ok(self.c * self.f.re)
    }

    /// Relative residual of both roots in the dispersion polynomial,
    /// normalised by `max(1, c^2 k^2)`.
    pub fn residual(&self) -> f64 {
        let ck2 = (self.c * self.k).powi(2);
        let damping = Complex64::new(0.0, self.nu * self.k * self.k);
        let eval = |w: Complex64| (w * (w + damping) - ck2).norm();
        eval(self.omega1).max(eval(self.omega2)) / ck2.max(1.0)
    }
}
