use thiserror::Error;

/// Errors raised by the numerical kernels and the constructions built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: ‖H − H*‖ = {deviation:e} exceeds {limit:e}")]
    NotHermitian { deviation: f64, limit: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("polynomial has degree 0; no roots to find")]
    ConstantPolynomial,

    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:e})")]
    RootsNotConverged { iterations: usize, max_residual: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenNotConverged { sweeps: usize, off_norm: f64 },

    #[error("polygon is empty")]
    EmptyPolygon,

    #[error("zero {zero} lies outside the open unit disk (|a| = {modulus})")]
    ZeroOutsideDisk { zero: String, modulus: f64 },

    #[error("parameter must be unimodular, got |λ| = {modulus}")]
    NotUnimodular { modulus: f64 },

    #[error("evaluation at a pole of the Blaschke product")]
    Pole,

    #[error("dilation eigenvalue {root} is off the unit circle by {deviation:e}")]
    OffCircle { root: String, deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rational inner function denominator vanishes at ({z1}, {z2})")]
    DenominatorVanishes { z1: String, z2: String },

    #[error("every τ on the grid fell in the exceptional set")]
    AllSlicesExcluded,

    #[error("slice at τ = {tau} failed: {reason}")]
    SliceFailed { tau: String, reason: String },

    #[error("max |p| over W(A) is zero; ratio undefined")]
    DegenerateDenominator,

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True when the error stems from bad caller input rather than a numerical breakdown.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. }
                | Error::Dimension { .. }
                | Error::NonFinite
                | Error::ConstantPolynomial
                | Error::EmptyPolygon
                | Error::ZeroOutsideDisk { .. }
                | Error::NotUnimodular { .. }
                | Error::InvalidParameter(_)
                | Error::DenominatorVanishes { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
