//! Scalar abstraction: everything numeric in this crate is generic over
//! [`Real`], implemented for `f32` and `f64`.

use nalgebra as na;
use num_traits as nt;

/// Floating point scalar usable for both geometry (nalgebra) and tensor math
/// (ndarray). `of`/`as_f64` bridge to literals and serialization.
pub trait Real:
    na::RealField
    + nt::FromPrimitive
    + nt::ToPrimitive
    + ndarray::LinalgScalar
    + ndarray::ScalarOperand
    + std::fmt::Display
    + std::fmt::LowerExp
    + Copy
    + Default
{
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 converts to Real")
    }

    fn from_usize_(v: usize) -> Self {
        Self::from_usize(v).expect("usize converts to Real")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }

    fn as_f32(self) -> f32 {
        self.to_f32().expect("Real converts to f32")
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_trip() {
        assert_eq!(f32::of(0.5), 0.5f32);
        assert_eq!(f64::of(0.5), 0.5f64);
        assert_eq!(0.25f32.as_f64(), 0.25f64);
        assert_eq!(f64::from_usize_(7), 7.0);
    }
}
