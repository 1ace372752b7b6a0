use std::fmt::{Debug, Display, LowerExp};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the engine is generic over: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant into this scalar type.
    fn lit(v: f64) -> Self;

    /// Lossy conversion used for diagnostics and rendering.
    fn as_f64(self) -> f64;

    /// A tolerance constant, floored at a few dozen ulps so that tolerances
    /// tuned for `f64` stay attainable in `f32`.
    fn tolerance(v: f64) -> Self {
        Self::lit(v).max(Self::epsilon() * Self::lit(64.0))
    }

    /// Converts a count or index.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }
}

impl Scalar for f32 {
    #[inline]
    fn lit(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn lit(v: f64) -> Self {
        v
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive; the last point is exactly `hi`.
pub(crate) fn linspace<T: Scalar>(lo: T, hi: T, n: usize) -> impl Iterator<Item = T> {
    let last = n.saturating_sub(1);
    let span = hi - lo;
    (0..n).map(move |k| {
        if k == last && last > 0 {
            hi
        } else if last == 0 {
            lo
        } else {
            lo + span * T::from_count(k) / T::from_count(last)
        }
    })
}
