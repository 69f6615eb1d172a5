//! TOML run configuration.
//!
//! Parsing is strict: unknown keys are rejected and physical parameters have
//! no defaults. Sections are optional at the parse level; each command checks
//! for the ones it needs.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::dispersion::MediumParams;
use crate::fdtd::GridSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn field_error(field: &str, msg: impl std::fmt::Display) -> ConfigError {
    ConfigError(format!("{field}: {msg}"))
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub medium: Option<MediumConfig>,
    pub grid: Option<GridConfig>,
    pub time: Option<TimeConfig>,
    pub ic: Option<InitialCondition>,
    pub sweep: Option<SweepConfig>,
    /// Directory relative paths in the file are resolved against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    pub lambda: f64,
    pub mu: f64,
    pub rho_bar: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub length: f64,
    pub n_points: usize,
}

fn default_snapshot_every() -> u64 {
    1
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub dt: f64,
    pub t_final: Option<f64>,
    #[serde(default = "default_snapshot_every")]
    pub snapshot_every: u64,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    /// `amplitude * exp(-(x - center)^2 / (2 width^2))`, at rest.
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
    },
    /// `amplitude * cos(2 pi m x / L + phase)`, at rest.
    SingleMode {
        mode_index: i64,
        amplitude: f64,
        phase: f64,
    },
    /// Two-column `p,q` table with one row per grid point.
    File { path: PathBuf },
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub k_min: f64,
    pub k_max: f64,
    pub n_samples: usize,
}

fn finite(field: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(field_error(field, "must be a finite number"))
    }
}

fn positive(field: &str, v: f64) -> Result<f64, ConfigError> {
    if finite(field, v)? > 0.0 {
        Ok(v)
    } else {
        Err(field_error(field, "must be positive"))
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string().trim_end().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    fn section<'a, T>(&self, name: &str, s: &'a Option<T>) -> Result<&'a T, ConfigError> {
        s.as_ref()
            .ok_or_else(|| field_error(name, "missing required section"))
    }

    pub fn medium(&self) -> Result<MediumParams, ConfigError> {
        let m = self.section("medium", &self.medium)?;
        finite("medium.lambda", m.lambda)?;
        finite("medium.mu", m.mu)?;
        positive("medium.rho_bar", m.rho_bar)?;
        positive("medium.c", m.c)?;
        MediumParams::new(m.lambda, m.mu, m.rho_bar, m.c).map_err(|e| field_error("medium", e))
    }

    pub fn dt(&self) -> Result<f64, ConfigError> {
        positive("time.dt", self.section("time", &self.time)?.dt)
    }

    pub fn t_final(&self) -> Result<f64, ConfigError> {
        let t = self.section("time", &self.time)?;
        let t_final = t
            .t_final
            .ok_or_else(|| field_error("time.t_final", "missing required key"))?;
        if finite("time.t_final", t_final)? < 0.0 {
            return Err(field_error("time.t_final", "must be non-negative"));
        }
        Ok(t_final)
    }

    pub fn snapshot_every(&self) -> Result<u64, ConfigError> {
        let every = self.section("time", &self.time)?.snapshot_every;
        if every == 0 {
            return Err(field_error("time.snapshot_every", "must be at least 1"));
        }
        Ok(every)
    }

    pub fn grid_spec(&self) -> Result<GridSpec, ConfigError> {
        let g = self.section("grid", &self.grid)?;
        positive("grid.length", g.length)?;
        let dt = self.dt()?;
        GridSpec::new(g.length, g.n_points, dt).map_err(|e| field_error("grid.n_points", e))
    }

    pub fn sweep(&self) -> Result<Vec<f64>, ConfigError> {
        let s = self.section("sweep", &self.sweep)?;
        let k_min = finite("sweep.k_min", s.k_min)?;
        let k_max = finite("sweep.k_max", s.k_max)?;
        if k_min < 0.0 {
            return Err(field_error("sweep.k_min", "must be non-negative"));
        }
        if k_max < k_min {
            return Err(field_error("sweep.k_max", "must not be below k_min"));
        }
        match s.n_samples {
            0 => Err(field_error("sweep.n_samples", "must be at least 1")),
            1 => Ok(vec![k_min]),
            n => {
                let h = (k_max - k_min) / (n - 1) as f64;
                Ok((0..n)
                    .map(|i| if i + 1 == n { k_max } else { k_min + i as f64 * h })
                    .collect())
            }
        }
    }

    /// Initial pressure and pressure rate on the grid of `spec`.
    pub fn initial_data(&self, spec: &GridSpec) -> Result<(Vec<f64>, Vec<f64>), ConfigError> {
        let ic = self.section("ic", &self.ic)?;
        let n = spec.n_points();
        let x = spec.x();
        match ic {
            InitialCondition::Gaussian {
                amplitude,
                center,
                width,
            } => {
                finite("ic.amplitude", *amplitude)?;
                finite("ic.center", *center)?;
                positive("ic.width", *width)?;
                let p = x
                    .iter()
                    .map(|x| amplitude * (-0.5 * ((x - center) / width).powi(2)).exp())
                    .collect();
                Ok((p, vec![0.0; n]))
            }
            InitialCondition::SingleMode {
                mode_index,
                amplitude,
                phase,
            } => {
                finite("ic.amplitude", *amplitude)?;
                finite("ic.phase", *phase)?;
                if mode_index.unsigned_abs() > (n / 2) as u64 {
                    return Err(field_error(
                        "ic.mode_index",
                        format!("must not exceed N/2 = {} in magnitude", n / 2),
                    ));
                }
                let k = 2.0 * PI * *mode_index as f64 / spec.length();
                let p = x.iter().map(|x| amplitude * (k * x + phase).cos()).collect();
                Ok((p, vec![0.0; n]))
            }
            InitialCondition::File { path } => {
                let path = if path.is_relative() {
                    self.base_dir.join(path)
                } else {
                    path.clone()
                };
                read_table(&path, n)
            }
        }
    }
}

/// Read a `p,q` table. Blank lines and `#` comments are skipped, as is a
/// leading non-numeric header row.
pub fn read_table(path: &Path, n: usize) -> Result<(Vec<f64>, Vec<f64>), ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| field_error("ic.path", format!("{}: {e}", path.display())))?;
    let mut p = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    let mut seen_data = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<f64>> = cols.iter().map(|c| c.parse().ok()).collect();
        let here = || format!("{}:{}", path.display(), lineno + 1);
        match parsed {
            Some(v) if v.len() == 2 => {
                if !(v[0].is_finite() && v[1].is_finite()) {
                    return Err(field_error("ic.path", format!("{}: non-finite value", here())));
                }
                p.push(v[0]);
                q.push(v[1]);
                seen_data = true;
            }
            None if !seen_data && cols.len() == 2 => {}
            _ => {
                return Err(field_error(
                    "ic.path",
                    format!("{}: expected two numeric columns p,q", here()),
                ))
            }
        }
    }
    if p.len() != n {
        return Err(field_error(
            "ic.path",
            format!("{} has {} rows, grid has {n} points", path.display(), p.len()),
        ));
    }
    Ok((p, q))
}
