//! Explicit three-level finite-difference scheme on a periodic grid:
//!
//! ```text
//! p^{n+1} = 2 p^n - p^{n-1} + cfl^2 d2(p^n) + visc (d2(p^n) - d2(p^{n-1}))
//! ```
//!
//! with `d2(v)_j = v_{j+1} - 2 v_j + v_{j-1}`. The mixed derivative is a
//! backward difference in time of the Laplacian, which keeps the update
//! explicit.

use crate::dispersion::MediumParams;
use crate::error::{Error, Result};
use crate::gsa::{stability_check, StabilityCertificate, StencilWeights};
use crate::spectral::{check_even_size, check_finite};

pub const MIN_POINTS: usize = 8;

/// Upper bound on the number of steps a single run may take.
pub const MAX_STEPS: f64 = 1e8;

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    length: f64,
    n_points: usize,
    dt: f64,
    certificate: Option<StabilityCertificate>,
}

impl GridSpec {
    pub fn new(length: f64, n_points: usize, dt: f64) -> Result<Self> {
        check_even_size(n_points, MIN_POINTS)?;
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "domain length must be positive, got {length}"
            )));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "timestep must be positive, got {dt}"
            )));
        }
        Ok(Self {
            length,
            n_points,
            dt,
            certificate: None,
        })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn x(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.n_points).map(|j| j as f64 * dx).collect()
    }

    /// Run the stability analysis for `medium` and keep the result.
    pub fn certify(&mut self, medium: &MediumParams) -> StabilityCertificate {
        let cert = stability_check(self, medium);
        self.certificate = Some(cert);
        cert
    }

    pub fn certified(mut self, medium: &MediumParams) -> Self {
        self.certify(medium);
        self
    }

    pub fn certificate(&self) -> Option<&StabilityCertificate> {
        self.certificate.as_ref()
    }

    /// The attached certificate, provided it was issued for these stencil
    /// weights.
    fn require_certificate(&self, medium: &MediumParams) -> Result<StencilWeights> {
        let w = StencilWeights::new(self, medium);
        match &self.certificate {
            Some(cert) if cert.cfl == w.cfl && cert.visc == w.visc => Ok(w),
            _ => Err(Error::MissingCertificate),
        }
    }
}

/// Two consecutive time levels of the scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    pub p_prev: Vec<f64>,
    pub p_curr: Vec<f64>,
    pub step_index: u64,
    spec: GridSpec,
    weights: StencilWeights,
}

fn second_difference(v: &[f64], out: &mut [f64]) {
    let n = v.len();
    for j in 0..n {
        let left = v[(j + n - 1) % n];
        let right = v[(j + 1) % n];
        out[j] = right - 2.0 * v[j] + left;
    }
}

fn check_len(v: &[f64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: v.len(),
        });
    }
    check_finite(v)
}

/// Second-order Taylor start from `p(x, 0)` and `p_t(x, 0)`:
/// `p^1 = p + dt q + dt^2 / 2 (c^2 L p + nu L q)`.
pub fn bootstrap(
    initial_p: &[f64],
    initial_q: &[f64],
    spec: &GridSpec,
    medium: &MediumParams,
) -> Result<GridState> {
    let weights = spec.require_certificate(medium)?;
    let n = spec.n_points();
    check_len(initial_p, n)?;
    check_len(initial_q, n)?;

    let mut lap_p = vec![0.0; n];
    let mut lap_q = vec![0.0; n];
    second_difference(initial_p, &mut lap_p);
    second_difference(initial_q, &mut lap_q);

    let dt = spec.dt();
    // dt^2 c^2 / dx^2 = cfl^2 and dt nu / dx^2 = visc
    let cfl2 = weights.cfl * weights.cfl;
    let p_curr = (0..n)
        .map(|j| {
            initial_p[j] + dt * initial_q[j] + 0.5 * (cfl2 * lap_p[j] + dt * weights.visc * lap_q[j])
        })
        .collect();

    Ok(GridState {
        p_prev: initial_p.to_vec(),
        p_curr,
        step_index: 1,
        spec: spec.clone(),
        weights,
    })
}

impl GridState {
    /// Start from two explicitly given levels `n - 1` and `n`.
    pub fn from_levels(
        p_prev: Vec<f64>,
        p_curr: Vec<f64>,
        step_index: u64,
        spec: &GridSpec,
        medium: &MediumParams,
    ) -> Result<Self> {
        let weights = spec.require_certificate(medium)?;
        check_len(&p_prev, spec.n_points())?;
        check_len(&p_curr, spec.n_points())?;
        Ok(Self {
            p_prev,
            p_curr,
            step_index,
            spec: spec.clone(),
            weights,
        })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn time(&self) -> f64 {
        self.step_index as f64 * self.spec.dt()
    }

    /// Advance one step in place.
    pub fn advance(&mut self) -> Result<()> {
        let n = self.p_curr.len();
        let mut lap_curr = vec![0.0; n];
        let mut lap_prev = vec![0.0; n];
        second_difference(&self.p_curr, &mut lap_curr);
        second_difference(&self.p_prev, &mut lap_prev);

        let StencilWeights { cfl, visc } = self.weights;
        let cfl2 = cfl * cfl;
        let mut diverged = false;
        for j in 0..n {
            let next = 2.0 * self.p_curr[j] - self.p_prev[j]
                + cfl2 * lap_curr[j]
                + visc * (lap_curr[j] - lap_prev[j]);
            diverged |= !next.is_finite();
            // p_prev becomes p^{n+1}, then the levels are swapped
            self.p_prev[j] = next;
        }
        std::mem::swap(&mut self.p_prev, &mut self.p_curr);
        self.step_index += 1;
        if diverged {
            return Err(Error::Diverged {
                step: self.step_index,
            });
        }
        Ok(())
    }

    pub fn step(mut self) -> Result<Self> {
        self.advance()?;
        Ok(self)
    }
}

/// Number of whole steps of size `dt` that fit in `t_final`.
pub fn step_count(t_final: f64, dt: f64) -> Result<u64> {
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::InvalidParameters(format!(
            "final time must be non-negative, got {t_final}"
        )));
    }
    let ratio = t_final / dt;
    if ratio > MAX_STEPS {
        return Err(Error::TooManySteps { steps: ratio });
    }
    // absorb rounding in t_final / dt for exact multiples
    Ok((ratio + 1e-9).floor() as u64)
}

/// Step indices at which a run of `n_steps` records a snapshot: every
/// `every`-th step from 0, plus the last one.
pub fn snapshot_steps(n_steps: u64, every: u64) -> Vec<u64> {
    let every = every.max(1);
    let mut steps: Vec<u64> = (0..=n_steps).step_by(every as usize).collect();
    if steps.last() != Some(&n_steps) {
        steps.push(n_steps);
    }
    steps
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: u64,
    pub time: f64,
    pub samples: Vec<f64>,
}

pub fn run(
    initial_p: &[f64],
    initial_q: &[f64],
    spec: &GridSpec,
    medium: &MediumParams,
    t_final: f64,
    snapshot_every: u64,
) -> Result<Vec<Snapshot>> {
    if snapshot_every == 0 {
        return Err(Error::InvalidParameters(
            "snapshot cadence must be at least 1".into(),
        ));
    }
    spec.require_certificate(medium)?;
    check_len(initial_p, spec.n_points())?;
    check_len(initial_q, spec.n_points())?;
    let n_steps = step_count(t_final, spec.dt())?;
    let wanted = snapshot_steps(n_steps, snapshot_every);

    let mut snapshots = vec![Snapshot {
        step: 0,
        time: 0.0,
        samples: initial_p.to_vec(),
    }];
    if n_steps == 0 {
        return Ok(snapshots);
    }

    let mut state = bootstrap(initial_p, initial_q, spec, medium)?;
    for &target in &wanted[1..] {
        while state.step_index < target {
            state.advance()?;
        }
        snapshots.push(Snapshot {
            step: target,
            time: state.time(),
            samples: state.p_curr.clone(),
        });
    }
    Ok(snapshots)
}
