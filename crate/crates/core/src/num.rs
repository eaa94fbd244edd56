//! Scalar abstraction shared by every numerical kernel.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating-point scalar the engine is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Sum + Default + Display + Debug + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Maps `u` in `[0, 1]` onto `[lo, hi]` so that `u == 0` gives `lo` and
/// `u == 1` gives `hi` bit-exactly. Monotone non-decreasing in `u`.
pub fn to_range<T: Real>(u: T, lo: T, hi: T) -> T {
    if u <= T::zero() {
        lo
    } else if u >= T::one() {
        hi
    } else {
        (lo + (hi - lo) * u).min(hi).max(lo)
    }
}

/// Trapezoidal integral of `values` sampled at `x`.
pub fn trapezoid<T: Real>(x: &[T], values: &[T]) -> T {
    debug_assert_eq!(x.len(), values.len());
    let half = T::lit(0.5);
    x.windows(2)
        .zip(values.windows(2))
        .map(|(xs, vs)| (xs[1] - xs[0]) * (vs[0] + vs[1]) * half)
        .sum()
}

/// Minimum and maximum of a slice. `Float::min`/`max` skip NaN, so callers
/// validate finiteness separately.
pub(crate) fn min_max<T: Real>(values: &[T]) -> Option<(T, T)> {
    let mut iter = values.iter().copied();
    let first = iter.next()?;
    Some(iter.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
}
