//! Scalar abstraction shared by every numerical kernel in the crate.
//!
//! All state, channel and correlation code is generic over [`Real`], which is
//! implemented for `f32` and `f64`, each with its own numerical tolerances.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating-point scalar usable throughout the crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + FromStr
    + Sum
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Tolerance for Hermiticity, unit trace, normalization and completeness.
    fn state_tol() -> Self;

    /// Eigenvalues at or below this count as zero for rank and purification.
    fn rank_cutoff() -> Self;

    /// Machine-level tolerance used to stop iterative kernels.
    fn kernel_eps() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn state_tol() -> Self {
        1e-10
    }
    fn rank_cutoff() -> Self {
        1e-10
    }
    fn kernel_eps() -> Self {
        1e-15
    }
}

impl Real for f32 {
    fn state_tol() -> Self {
        1e-5
    }
    fn rank_cutoff() -> Self {
        1e-5
    }
    fn kernel_eps() -> Self {
        1e-6
    }
}

/// Complex amplitude over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// `-x log2 x` with the `0 log 0 = 0` convention.
#[inline]
pub fn xlog2x_neg<T: Real>(x: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        -x * x.log2()
    }
}

/// Binary entropy `h(x)` in bits.
pub fn binary_entropy<T: Real>(x: T) -> T {
    xlog2x_neg(x) + xlog2x_neg(T::one() - x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_endpoints() {
        assert_eq!(binary_entropy(0.0f64), 0.0);
        assert_eq!(binary_entropy(1.0f64), 0.0);
        assert!((binary_entropy(0.5f64) - 1.0).abs() < 1e-15);
        assert!((binary_entropy(0.5f32) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn tolerances_are_ordered() {
        assert!(f64::state_tol() < f64::from(f32::state_tol()));
        assert!(f64::kernel_eps() < f64::rank_cutoff());
    }
}
