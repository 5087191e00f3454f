use thiserror::Error;

/// Errors raised by the numerical kernels, the expression front end and the
/// verifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gamma pole at x = {0}")]
    Pole(f64),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("series did not converge within {terms} terms (z = {z})")]
    NonConvergence { terms: usize, z: f64 },

    #[error("|z| = {z} exceeds the adaptive-mode guard z_max = {z_max}")]
    OutOfRange { z: f64, z_max: f64 },

    #[error("extrapolation diverged: {0}")]
    Divergence(String),

    #[error("quadrature exceeded {0} subintervals")]
    MaxSubdivisions(usize),

    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier '{name}' at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no derivative available for {0}")]
    MissingDerivative(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no witness found: {0}")]
    NoWitness(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
