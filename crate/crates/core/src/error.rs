use thiserror::Error;

/// Errors raised by the localization library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroInverse,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("malformed matrix: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("diagonal entry ({index}, {index}) = {value} is not real")]
    NonRealDiagonal { index: usize, value: String },

    #[error("matrix is singular")]
    Singular,

    #[error("eigenvalue iteration did not converge for {dim}x{dim} matrix after {iterations} sweeps")]
    NoConvergence { dim: usize, iterations: usize },

    #[error("polynomial is not simple monic: leading coefficient must be exactly 1")]
    NotMonic,

    #[error("reversal undefined, zero constant term")]
    ZeroConstantTerm,

    #[error("method {method} applies to {expected} polynomials")]
    SideMismatch { method: String, expected: String },

    #[error("zero divisor: {0}")]
    ZeroDivisor(String),
}

impl Error {
    /// Stable kebab-case identifier, used in machine-readable error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInverse => "zero-inverse",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Shape(_) => "shape",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::NonRealDiagonal { .. } => "non-real-diagonal",
            Error::Singular => "singular",
            Error::NoConvergence { .. } => "no-convergence",
            Error::NotMonic => "not-monic",
            Error::ZeroConstantTerm => "zero-constant-term",
            Error::SideMismatch { .. } => "side-mismatch",
            Error::ZeroDivisor(_) => "zero-divisor",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("gamma = {gamma} outside [0, 1]")))
    }
}

pub(crate) fn check_holder_p(p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("Hölder exponent p = {p} must lie in (1, inf)")))
    }
}

pub(crate) fn check_weights(w: &[f64], n: usize) -> Result<()> {
    if w.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: w.len() });
    }
    match w.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
        Some(i) => Err(Error::InvalidParameter(format!("weight w[{i}] = {} is not positive", w[i]))),
        None => Ok(()),
    }
}
