use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("lossless medium (lambda + 2 mu = 0) has no finite cut-off wavenumber")]
    LosslessMedium,

    #[error("wavenumber k = {k} is at or above the cut-off; phase quantities are undefined")]
    DiffusiveRegime { k: f64 },

    #[error("phase speed is undefined at zero wavenumber")]
    ZeroWavenumber,

    #[error("invalid grid size {n}: must be even and at least {min}")]
    InvalidSize { n: usize, min: usize },

    #[error("size mismatch: expected {expected} samples, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("non-finite input sample at index {index}")]
    NonFinite { index: usize },

    #[error("no stability certificate attached to the grid for this medium")]
    MissingCertificate,

    #[error("simulation diverged at step {step}")]
    Diverged { step: u64 },

    #[error("requested {steps} steps exceeds the runaway guard")]
    TooManySteps { steps: f64 },

    #[error("synthesized field is not real: imaginary residue {residue:e} exceeds tolerance")]
    NonRealOutput { residue: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
