use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DunklError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("stability condition omega > 2|f| violated (omega = {omega}, |f| = {f_mag})")]
    Unstable { omega: f64, f_mag: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("parity not conserved: max |[M, R]| = {residual:e}")]
    ParityNotConserved { residual: f64 },

    #[error("eigensolver failed to converge at index {index} after {iterations} iterations")]
    Eigensolver { index: usize, iterations: usize },

    #[error(
        "matrix exponential did not converge: norm {norm:e}, {squarings} squarings, \
         {terms} series terms"
    )]
    ExpmConvergence { norm: f64, squarings: u32, terms: usize },

    #[error("truncation rejected: tail mass {tail_mass:e} exceeds {limit:e} at dim {dim}; raise the dimension")]
    TruncationRejected { tail_mass: f64, limit: f64, dim: usize },
}

pub type Result<T, E = DunklError> = std::result::Result<T, E>;
