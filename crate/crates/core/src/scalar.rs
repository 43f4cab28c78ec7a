use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign};

/// Real floating-point type the whole crate is generic over.
pub trait Scalar:
    Float + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Relative pivot threshold below which a Householder column counts as rank deficient.
    fn rank_tol() -> Self;
    /// Relative threshold on triangular pivots.
    fn pivot_tol() -> Self;
    /// Default relative tolerance for the spectral-norm iteration.
    fn spectral_tol() -> Self;

    /// Converts an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    fn half() -> Self {
        Self::lit(0.5)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn rank_tol() -> Self {
        1e-13
    }
    fn pivot_tol() -> Self {
        1e-14
    }
    fn spectral_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn rank_tol() -> Self {
        1e-5
    }
    fn pivot_tol() -> Self {
        1e-6
    }
    fn spectral_tol() -> Self {
        1e-5
    }
}
