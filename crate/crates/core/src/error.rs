use thiserror::Error;

/// Errors produced by the eigencone kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("point is too close to the origin (|x| = {norm:e})")]
    SingularPoint { norm: f64 },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not orthogonal (|O^T O - I| = {defect:e})")]
    NotOrthogonal { defect: f64 },

    #[error("vector is not on the unit sphere (|x| = {norm})")]
    NotUnit { norm: f64 },

    #[error("parameter {name} = {value} outside its domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("cubic level {value} outside [-1, 1]; the field is not the Cartan cubic on the sphere")]
    BrokenInvariant { value: f64 },

    #[error("polynomial is not a homogeneous cubic")]
    NotCubic,

    #[error("division by zero in the coefficient ring")]
    DivisionByZero,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
