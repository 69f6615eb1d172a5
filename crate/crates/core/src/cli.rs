//! Command implementations behind the binary. Each command renders its whole
//! CSV into a `String`; nothing is written unless the command succeeds.
//!
//! Numbers are printed with 17 significant digits in scientific notation so
//! that output is reproducible byte for byte and round-trips to the same
//! `f64`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{ConfigError, RunConfig};
use crate::dispersion::{solve_dispersion, Regime};
use crate::error::Error;
use crate::exact::ExactSolver;
use crate::fdtd::{self, GridSpec, Snapshot};
use crate::gsa::{self, StabilityCertificate};

#[derive(Debug, Parser)]
#[command(name = "lossy-acoustics", version, about = "Dispersion, simulation and scheme analysis for the damped acoustic equation")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Io {
    /// TOML run configuration
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV path (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the exact dispersion relation over a wavenumber range
    Dispersion {
        #[command(flatten)]
        io: Io,
    },
    /// Evolve an initial condition with the exact and/or finite-difference solver
    Simulate {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Engine::Both)]
        engine: Engine,
    },
    /// Compare the finite-difference scheme's gains with the exact ones
    Gsa {
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Exact,
    Fdtd,
    Both,
}

impl Engine {
    fn as_str(self) -> &'static str {
        match self {
            Engine::Exact => "exact",
            Engine::Fdtd => "fdtd",
            Engine::Both => "both",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Unstable(StabilityCertificate),
    Diverged(Error),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unstable(_) => 3,
            CliError::Diverged(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Unstable(cert) => write!(
                f,
                "scheme is unstable for this grid and timestep: max_gain={}, worst_theta={} (cfl={}, visc={})",
                num(cert.max_gain),
                num(cert.worst_theta),
                num(cert.cfl),
                num(cert.visc)
            ),
            CliError::Diverged(e) => write!(f, "{e}"),
            CliError::Other(msg) => f.write_str(msg),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

fn from_lib(e: Error) -> CliError {
    match e {
        Error::Diverged { .. } => CliError::Diverged(e),
        Error::InvalidParameters(_)
        | Error::InvalidSize { .. }
        | Error::SizeMismatch { .. }
        | Error::NonFinite { .. }
        | Error::TooManySteps { .. } => CliError::Config(ConfigError(e.to_string())),
        other => CliError::Other(other.to_string()),
    }
}

/// Fixed 17-significant-digit rendering.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn cmd_dispersion(cfg: &RunConfig) -> Result<String, CliError> {
    let medium = cfg.medium()?;
    let dt = cfg.dt()?;
    let ks = cfg.sweep()?;

    let mut out = String::new();
    match medium.cutoff_wavenumber() {
        Ok(kc) => writeln!(out, "# k_c={}", num(kc)),
        Err(_) => writeln!(out, "# k_c=inf"),
    }
    .unwrap();
    out.push_str(
        "k,re_omega1,im_omega1,re_omega2,im_omega2,re_f,im_f,regime,abs_g1,abs_g2,beta1\n",
    );
    for k in ks {
        let d = solve_dispersion(&medium, k).map_err(from_lib)?;
        let g = d.amplification(dt).map_err(from_lib)?;
        let beta1 = match d.regime {
            Regime::Propagating => num(d.phase_shift(dt).map_err(from_lib)?.0),
            _ => String::new(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            num(k),
            num(d.omega1.re),
            num(d.omega1.im),
            num(d.omega2.re),
            num(d.omega2.im),
            num(d.f.re),
            num(d.f.im),
            d.regime,
            num(g.g1.norm()),
            num(g.g2.norm()),
            beta1
        )
        .unwrap();
    }
    Ok(out)
}

fn certificate_line(cert: &StabilityCertificate) -> String {
    format!(
        "# stable={},max_gain={},worst_theta={},cfl={},visc={}\n",
        cert.stable,
        num(cert.max_gain),
        num(cert.worst_theta),
        num(cert.cfl),
        num(cert.visc)
    )
}

/// `(max |e|, sqrt(dx sum e^2))`
pub fn error_norms(a: &[f64], b: &[f64], dx: f64) -> (f64, f64) {
    let (linf, sq) = a.iter().zip(b).fold((0.0f64, 0.0), |(m, s), (x, y)| {
        let e = x - y;
        (m.max(e.abs()), s + e * e)
    });
    (linf, (dx * sq).sqrt())
}

fn write_rows(out: &mut String, x: &[f64], label: Option<&str>, snaps: &[Snapshot], tail: &str) {
    for s in snaps {
        for (xj, pj) in x.iter().zip(&s.samples) {
            if let Some(label) = label {
                write!(out, "{label},").unwrap();
            }
            writeln!(out, "{},{},{}{tail}", num(s.time), num(*xj), num(*pj)).unwrap();
        }
    }
}

pub fn cmd_simulate(cfg: &RunConfig, engine: Engine) -> Result<String, CliError> {
    let medium = cfg.medium()?;
    let mut spec: GridSpec = cfg.grid_spec()?;
    let t_final = cfg.t_final()?;
    let every = cfg.snapshot_every()?;
    let (p0, q0) = cfg.initial_data(&spec)?;
    let n_steps = fdtd::step_count(t_final, spec.dt()).map_err(from_lib)?;
    let steps = fdtd::snapshot_steps(n_steps, every);

    let mut out = String::new();
    writeln!(
        out,
        "# engine={},n_points={},length={},dt={},steps={}",
        engine.as_str(),
        spec.n_points(),
        num(spec.length()),
        num(spec.dt()),
        n_steps
    )
    .unwrap();

    let fdtd_snaps = if engine == Engine::Exact {
        None
    } else {
        let cert = spec.certify(&medium);
        if !cert.stable {
            return Err(CliError::Unstable(cert));
        }
        out.push_str(&certificate_line(&cert));
        Some(fdtd::run(&p0, &q0, &spec, &medium, t_final, every).map_err(from_lib)?)
    };

    let exact_snaps = if engine == Engine::Fdtd {
        None
    } else {
        let solver = ExactSolver::new(&p0, &q0, &medium, spec.length()).map_err(from_lib)?;
        let snaps = steps
            .iter()
            .map(|&step| {
                let time = step as f64 * spec.dt();
                let samples = if step == 0 {
                    p0.clone()
                } else {
                    solver.field_at(time).map_err(from_lib)?
                };
                Ok(Snapshot {
                    step,
                    time,
                    samples,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Some(snaps)
    };

    let x = spec.x();
    match (fdtd_snaps, exact_snaps) {
        (Some(f), None) | (None, Some(f)) => {
            out.push_str("t,x,p\n");
            write_rows(&mut out, &x, None, &f, "");
        }
        (Some(f), Some(e)) => {
            out.push_str("record,t,x,p,linf_error,l2_error\n");
            write_rows(&mut out, &x, Some("fdtd"), &f, ",,");
            write_rows(&mut out, &x, Some("exact"), &e, ",,");
            for (a, b) in f.iter().zip(&e) {
                let (linf, l2) = error_norms(&a.samples, &b.samples, spec.dx());
                writeln!(out, "error,{},,,{},{}", num(a.time), num(linf), num(l2)).unwrap();
            }
        }
        (None, None) => unreachable!(),
    }
    Ok(out)
}

pub fn cmd_gsa(cfg: &RunConfig) -> Result<String, CliError> {
    let medium = cfg.medium()?;
    let spec = cfg.grid_spec()?;
    let cert = gsa::stability_check(&spec, &medium);
    let thetas = gsa::resolvable_thetas(spec.n_points());
    let records = gsa::dispersion_error_map(&spec, &medium, &thetas).map_err(from_lib)?;

    let mut out = certificate_line(&cert);
    out.push_str("theta,abs_gnum_max,abs_gexact_max,phase_err\n");
    for r in records {
        writeln!(
            out,
            "{},{},{},{}",
            num(r.theta),
            num(r.abs_gnum_max),
            num(r.abs_gexact_max),
            r.phase_error.map(num).unwrap_or_default()
        )
        .unwrap();
    }
    Ok(out)
}

fn execute(command: &Command) -> Result<(String, Option<PathBuf>), CliError> {
    let (io, result) = match command {
        Command::Dispersion { io } => (io, RunConfig::load(&io.config).map_err(CliError::from).and_then(|c| cmd_dispersion(&c))),
        Command::Simulate { io, engine } => (io, RunConfig::load(&io.config).map_err(CliError::from).and_then(|c| cmd_simulate(&c, *engine))),
        Command::Gsa { io } => (io, RunConfig::load(&io.config).map_err(CliError::from).and_then(|c| cmd_gsa(&c))),
    };
    Ok((result?, io.out.clone()))
}

/// Run a parsed command line, returning the process exit code.
pub fn run(args: &Args) -> i32 {
    let outcome = execute(&args.command).and_then(|(csv, out)| match out {
        Some(path) => std::fs::write(&path, csv)
            .map_err(|e| CliError::Other(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .lock()
                .write_all(csv.as_bytes())
                .map_err(|e| CliError::Other(e.to_string()))
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
