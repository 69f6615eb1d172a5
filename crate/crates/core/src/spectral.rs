//! Discrete Fourier representation of a periodic field.
//!
//! Mode `m` in `-N/2 ..= N/2 - 1` has wavenumber `k_m = 2 pi m / L`. Analysis
//! carries the `1/N` so that `coeff(0)` is the field mean; synthesis is the
//! plain sum `p_j = sum_m coeff(m) exp(i k_m x_j)` with `x_j = j L / N`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    domain_length: f64,
    /// Stored in mode order, index `m + N/2`.
    coeffs: Vec<Complex64>,
}

/// `exp(-2 pi i r / N)` for `r` in `0..N`, so every phase is reduced modulo
/// `N` before the trig call.
fn twiddles(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|r| Complex64::from_polar(1.0, -2.0 * PI * r as f64 / n as f64))
        .collect()
}

pub(crate) fn check_even_size(n: usize, min: usize) -> Result<()> {
    if n < min || !n.is_multiple_of(2) {
        return Err(Error::InvalidSize { n, min });
    }
    Ok(())
}

pub(crate) fn check_finite(samples: &[f64]) -> Result<()> {
    match samples.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

fn check_length(length: f64) -> Result<()> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "domain length must be positive, got {length}"
        )));
    }
    Ok(())
}

impl SpectralField {
    /// Forward transform of real samples on `[0, L)`.
    pub fn transform(samples: &[f64], domain_length: f64) -> Result<Self> {
        let n = samples.len();
        check_even_size(n, 2)?;
        check_length(domain_length)?;
        check_finite(samples)?;

        let w = twiddles(n);
        let half = (n / 2) as i64;
        let scale = 1.0 / n as f64;
        let coeffs = (-half..half)
            .map(|m| {
                let sum: Complex64 = samples
                    .iter()
                    .enumerate()
                    .map(|(j, &s)| w[(m * j as i64).rem_euclid(n as i64) as usize] * s)
                    .sum();
                sum * scale
            })
            .collect();
        Ok(Self {
            domain_length,
            coeffs,
        })
    }

    /// Build a field directly from coefficients in mode order
    /// `-N/2 ..= N/2 - 1`.
    pub fn from_coeffs(coeffs: Vec<Complex64>, domain_length: f64) -> Result<Self> {
        check_even_size(coeffs.len(), 2)?;
        check_length(domain_length)?;
        Ok(Self {
            domain_length,
            coeffs,
        })
    }

    /// Complex samples `sum_m coeff(m) exp(i k_m x_j)`.
    pub fn synthesize(&self) -> Vec<Complex64> {
        let n = self.coeffs.len();
        let w = twiddles(n);
        let half = (n / 2) as i64;
        (0..n as i64)
            .map(|j| {
                self.coeffs
                    .iter()
                    .zip(-half..half)
                    .map(|(&a, m)| a * w[(-m * j).rem_euclid(n as i64) as usize])
                    .sum()
            })
            .collect()
    }

    pub fn n_modes(&self) -> usize {
        self.coeffs.len()
    }

    pub fn domain_length(&self) -> f64 {
        self.domain_length
    }

    /// Mode numbers in storage order.
    pub fn modes(&self) -> impl Iterator<Item = i64> {
        let half = (self.coeffs.len() / 2) as i64;
        -half..half
    }

    pub fn wavenumber(&self, m: i64) -> f64 {
        2.0 * PI * m as f64 / self.domain_length
    }

    /// Coefficient of mode `m`. Panics if `m` is outside `-N/2 ..= N/2 - 1`.
    pub fn coeff(&self, m: i64) -> Complex64 {
        self.coeffs[self.index(m)]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    fn index(&self, m: i64) -> usize {
        let half = (self.coeffs.len() / 2) as i64;
        assert!(
            (-half..half).contains(&m),
            "mode {m} outside -{half}..{half}"
        );
        (m + half) as usize
    }
}
