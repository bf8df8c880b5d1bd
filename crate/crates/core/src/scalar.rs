//! Scalar abstraction shared by every operator and solver in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Complex amplitudes are always `num_complex::Complex<T>` over one of these.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every literal used in the crate is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("index representable in scalar type")
    }

    /// Absolute tolerance for structural checks (parity conservation and the like).
    fn structural_tol() -> Self;
}

impl Real for f32 {
    fn structural_tol() -> Self {
        1e-4
    }
}

impl Real for f64 {
    fn structural_tol() -> Self {
        1e-10
    }
}

/// Number of levels in the top 10% of a `dim`-level basis, at least one.
pub(crate) fn top_decile(dim: usize) -> usize {
    dim.div_ceil(10).max(1)
}
