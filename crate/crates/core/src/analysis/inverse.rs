use std::fmt;

use crate::dynamics::{Interval, ReflexiveSystem};
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::scalar::Scalar;

/// Consecutive differences sampled when checking monotonicity.
pub const MONOTONICITY_SAMPLES: usize = 1024;
/// Default number of y samples for [`function_distance`].
pub const DEFAULT_DISTANCE_SAMPLES: usize = 4096;
/// Relative tolerance of the numerical inverse.
pub const INVERSE_TOLERANCE: f64 = 1e-12;
const MAX_BISECTIONS: usize = 2200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Samples `e` at `MONOTONICITY_SAMPLES + 1` points and returns its direction.
pub fn monotone_direction<T: Scalar>(e: &Expression, interval: Interval<T>) -> Result<Direction> {
    let mut prev: Option<(T, T)> = None;
    let mut dir = None;
    for x in interval.grid(MONOTONICITY_SAMPLES + 1) {
        let v = e.evaluate(x)?;
        if let Some((px, pv)) = prev {
            let here = if v > pv {
                Direction::Increasing
            } else if v < pv {
                Direction::Decreasing
            } else {
                return Err(Error::NonMonotone {
                    a: px.as_f64(),
                    b: x.as_f64(),
                });
            };
            match dir {
                None => dir = Some(here),
                Some(d) if d != here => {
                    return Err(Error::NonMonotone {
                        a: px.as_f64(),
                        b: x.as_f64(),
                    })
                }
                _ => {}
            }
        }
        prev = Some((x, v));
    }
    Ok(dir.expect("at least two samples"))
}

/// Inverse of a function checked to be strictly monotone on an interval.
#[derive(Debug, Clone)]
pub struct MonotoneInverse<'a, T> {
    f: &'a Expression,
    interval: Interval<T>,
    direction: Direction,
    f_lo: T,
    f_hi: T,
}

impl<'a, T: Scalar> MonotoneInverse<'a, T> {
    pub fn new(f: &'a Expression, interval: Interval<T>) -> Result<Self> {
        let direction = monotone_direction(f, interval)?;
        Ok(MonotoneInverse {
            f,
            interval,
            direction,
            f_lo: f.evaluate(interval.lo())?,
            f_hi: f.evaluate(interval.hi())?,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// `[min, max]` of `f` over the interval.
    pub fn range(&self) -> (T, T) {
        (self.f_lo.min(self.f_hi), self.f_lo.max(self.f_hi))
    }

    /// Finds `x` with `|f(x) − y| ≤ 1e-12·max(1, |y|)`, bisecting down to
    /// adjacent floats and returning the best sample.
    pub fn invert(&self, y: T) -> Result<T> {
        let (lo, hi) = self.range();
        if !(lo <= y && y <= hi) {
            return Err(Error::OutOfRange {
                y: y.as_f64(),
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        let tol = T::tolerance(INVERSE_TOLERANCE) * y.abs().max(T::one());
        if (self.f_lo - y).abs() <= tol {
            return Ok(self.interval.lo());
        }
        if (self.f_hi - y).abs() <= tol {
            return Ok(self.interval.hi());
        }
        let increasing = self.direction == Direction::Increasing;
        let (mut a, mut b) = (self.interval.lo(), self.interval.hi());
        let mut best = (a, (self.f_lo - y).abs());
        for _ in 0..MAX_BISECTIONS {
            let mid = a + (b - a) / (T::one() + T::one());
            if mid == a || mid == b {
                break;
            }
            let fm = self.f.evaluate(mid)?;
            let err = (fm - y).abs();
            if err < best.1 {
                best = (mid, err);
            }
            if err == T::zero() {
                break;
            }
            if (fm < y) == increasing {
                a = mid;
            } else {
                b = mid;
            }
        }
        if best.1 <= tol {
            return Ok(best.0);
        }
        Err(Error::Precondition(format!(
            "could not resolve f(x) = {y} to tolerance; best residual {:e} at x = {}",
            best.1, best.0
        )))
    }
}

/// Numerical inverse of `f` on `interval` at `y`.
pub fn invert_numeric<T: Scalar>(f: &Expression, interval: Interval<T>, y: T) -> Result<T> {
    MonotoneInverse::new(f, interval)?.invert(y)
}

/// Sampled sup-distance between `φ` and `f⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReport<T> {
    pub d: T,
    pub argmax_y: T,
    pub samples: usize,
    pub monotone_direction: Direction,
}

/// `d = max_y |φ(y) − f⁻¹(y)|` over a uniform grid.
///
/// The y-grid spans the image of `x_domain` under `f`, intersected with the
/// system's `y_domain`. The result is a lower bound on the true supremum.
pub fn function_distance<T: Scalar>(
    system: &ReflexiveSystem<T>,
    samples: usize,
) -> Result<DistanceReport<T>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(
            "distance needs at least 2 samples".into(),
        ));
    }
    let inverse = MonotoneInverse::new(system.f(), system.x_domain())?;
    let (lo, hi) = inverse.range();
    let image = Interval::new(lo, hi)?;
    let ys = image.intersect(&system.y_domain()).ok_or_else(|| {
        Error::Precondition(format!(
            "image {image} of f does not overlap the y domain {}",
            system.y_domain()
        ))
    })?;
    let mut d = T::neg_infinity();
    let mut argmax_y = ys.lo();
    for y in ys.grid(samples) {
        let gap = (system.eval_phi(y)? - inverse.invert(y)?).abs();
        if gap > d {
            d = gap;
            argmax_y = y;
        }
    }
    Ok(DistanceReport {
        d,
        argmax_y,
        samples,
        monotone_direction: inverse.direction(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expression {
        s.parse().unwrap()
    }

    fn iv(lo: f64, hi: f64) -> Interval<f64> {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn linear_inverse() {
        assert!((invert_numeric(&e("2*x+1"), iv(0.0, 10.0), 5.0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exp_inverse() {
        let x = invert_numeric(&e("exp(x)"), iv(0.0, 3.0), std::f64::consts::E).unwrap();
        assert!((x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decreasing_function() {
        let f = e("1/(1+x)");
        let inv = MonotoneInverse::new(&f, iv(0.0, 4.0)).unwrap();
        assert_eq!(inv.direction(), Direction::Decreasing);
        let x = inv.invert(0.25).unwrap();
        assert!((x - 3.0).abs() < 1e-11);
    }

    #[test]
    fn sine_is_not_monotone_over_a_period() {
        match invert_numeric(&e("sin(x)"), iv(0.0, 6.0), 0.5) {
            Err(Error::NonMonotone { a, b }) => assert!(a < b && b - a < 0.01),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn flat_segment_is_not_strict() {
        assert!(matches!(
            invert_numeric(&e("0*x + 1"), iv(0.0, 1.0), 1.0),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn value_outside_range() {
        assert!(matches!(
            invert_numeric(&e("2*x"), iv(0.0, 1.0), 3.0),
            Err(Error::OutOfRange { .. })
        ));
    }

    fn sys(f: &str, phi: &str, lo: f64, hi: f64) -> ReflexiveSystem<f64> {
        ReflexiveSystem::with_image_domain(e(f), e(phi), iv(lo, hi)).unwrap()
    }

    #[test]
    fn distance_examples() {
        let r = function_distance(&sys("2*x", "y/2", 0.0, 10.0), 4096).unwrap();
        assert!(r.d <= 1e-12);
        assert_eq!(r.monotone_direction, Direction::Increasing);

        let r = function_distance(&sys("2*x", "y/2 + 0.1", 0.0, 10.0), 4096).unwrap();
        assert!((r.d - 0.1).abs() < 1e-10);

        let r = function_distance(&sys("2*x", "y/2 + 0.01*y", 0.0, 10.0), 4096).unwrap();
        assert!((r.d - 0.2).abs() < 1e-10);
        assert_eq!(r.argmax_y, 20.0);
    }

    #[test]
    fn distance_matches_dense_oracle() {
        // analytic inverse of f = x^3 + x is unavailable, so compare against
        // a dense brute-force table of (f(x), x) pairs
        let s = sys("x^3 + x", "0.9*y - 0.05*y^2", 0.0, 1.0);
        let r = function_distance(&s, 512).unwrap();
        let mut best = 0.0f64;
        for k in 0..=200_000 {
            let x = k as f64 / 200_000.0;
            let y = x * x * x + x;
            let phi = 0.9 * y - 0.05 * y * y;
            best = best.max((phi - x).abs());
        }
        assert!(r.d <= best + 1e-9);
        assert!(best - r.d < 1e-4);
    }

    #[test]
    fn distance_requires_monotone_f() {
        let s = sys("sin(x)", "y", 0.0, 6.0);
        assert!(matches!(
            function_distance(&s, 16),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn distance_restricts_to_declared_y_domain() {
        let s = ReflexiveSystem::new(e("2*x"), e("y/2 + 0.01*y"), iv(0.0, 10.0), iv(0.0, 10.0))
            .unwrap();
        let r = function_distance(&s, 1001).unwrap();
        assert!((r.d - 0.1).abs() < 1e-10);
        assert_eq!(r.argmax_y, 10.0);
    }
}
