//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vector is not lightlike (|<v,v>| = {residual:.3e} relative){}", at.as_deref().map(|s| format!(" at {s}")).unwrap_or_default())]
    NotLightlike { residual: f64, at: Option<String> },

    #[error("lift is not future pointing (min v0 = {0:.3e})")]
    NotFuturePointing(f64),

    #[error("lift is not conformal: residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    NotConformal { residual: f64, tol: f64 },

    #[error("frame construction degenerate: {0}")]
    DegenerateFrame(String),

    #[error("dbar problem unsolvable: rhs mean ratio {ratio:.3e} exceeds {tol:.1e} (nonzero normal bundle degree)")]
    Unsolvable { ratio: f64, tol: f64 },

    #[error("surface is not contained in a 3-sphere: sup |<kappa,n>| = {0:.3e}")]
    NotInS3(f64),

    #[error("time step rejected: conformality residual {residual:.3e} exceeds {limit:.1e}")]
    StepRejected { residual: f64, limit: f64 },

    #[error("every grid point is umbilic; no unmasked points left")]
    AllUmbilic,

    #[error("perturbation repair did not converge after {iters} iterations (residual {residual:.3e})")]
    PerturbationDiverged { iters: usize, residual: f64 },

    #[error("derivative of coordinate map vanishes: |g'| = {0:.3e} below 1e-12")]
    VanishingDerivative(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed immersion file: {0}")]
    MalformedFile(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-parsable tag used on the CLI diagnostic stream.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::NotLightlike { .. } => "not-lightlike",
            Error::NotFuturePointing(_) => "not-future-pointing",
            Error::NotConformal { .. } => "not-conformal",
            Error::DegenerateFrame(_) => "degenerate-frame",
            Error::Unsolvable { .. } => "unsolvable",
            Error::NotInS3(_) => "not-in-s3",
            Error::StepRejected { .. } => "step-rejected",
            Error::AllUmbilic => "all-umbilic",
            Error::PerturbationDiverged { .. } => "perturbation-diverged",
            Error::VanishingDerivative(_) => "vanishing-derivative",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::MalformedFile(_) => "malformed-file",
            Error::Io(_) => "io",
        }
    }
}
