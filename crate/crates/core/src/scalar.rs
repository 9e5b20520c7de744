use std::fmt;
use std::iter::Sum;

use num_traits::float::{Float, FloatConst};
use num_traits::{FromPrimitive, NumAssign, ToPrimitive};

/// Scalar type the whole crate is generic over. Implemented by `f32` and
/// `f64`; everything downstream only needs ordinary float arithmetic,
/// transcendentals and the float constants.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Default
    + 'static
{
    /// Converts an `f64` literal. Panics on non-representable input, which
    /// cannot happen for the in-crate constants this is used with.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in this scalar type")
    }

    /// A tolerance stated for `f64`, rescaled by the epsilon ratio of the
    /// actual scalar so that `f32` instantiations get proportionally looser
    /// thresholds instead of impossible ones.
    fn tol(t64: f64) -> Self {
        let ratio = Self::epsilon().to_f64().expect("epsilon") / f64::EPSILON;
        Self::lit(t64 * ratio)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum<T>
        + fmt::Debug
        + fmt::Display
        + Default
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_and_tolerances() {
        assert_eq!(f64::lit(0.5), 0.5);
        assert_eq!(f64::tol(1e-12), 1e-12);
        // f32 tolerance scales with the f32/f64 epsilon ratio.
        let scaled = f32::tol(1e-12) as f64;
        let expected = 1e-12 * (f32::EPSILON as f64 / f64::EPSILON);
        assert!((scaled - expected).abs() < 1e-6 * expected);
    }
}
