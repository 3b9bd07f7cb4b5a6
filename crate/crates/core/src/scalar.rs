//! The scalar abstraction every numeric routine is generic over.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into this type.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `max(x, 64·ε)`: a requested tolerance floored at what the type can resolve.
    #[inline]
    fn tol(x: f64) -> Self {
        Self::of(x).max(Self::epsilon() * Self::of(64.0))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `count` points spaced geometrically from `lo` to `hi` inclusive.
pub fn log_grid<T: Scalar>(lo: f64, hi: f64, count: usize) -> Vec<T> {
    assert!(lo > 0.0 && hi > lo && count >= 2);
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            let s = i as f64 / (count - 1) as f64;
            let x = if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (l0 + s * (l1 - l0)).exp()
            };
            T::of(x)
        })
        .collect()
}

/// `count` points spaced evenly from `lo` to `hi` inclusive.
pub fn linear_grid<T: Scalar>(lo: f64, hi: f64, count: usize) -> Vec<T> {
    assert!(hi > lo && count >= 2);
    (0..count)
        .map(|i| T::of(lo + (hi - lo) * i as f64 / (count - 1) as f64))
        .collect()
}
