use crate::dynamics::{locate_fixed_points, Interval, ScalarMap};
use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::scalar::Scalar;

use super::inverse::monotone_direction;

/// Maximum grid residual `|h(f(x)) − g(h(x))|` for a consistent verdict.
pub const CONJUGACY_TOLERANCE: f64 = 1e-9;
/// Maximum `|g(h(x̄)) − h(x̄)|` at fixed points `x̄` of `f`.
pub const FIXED_IMAGE_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_CONJUGACY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict<T> {
    Consistent,
    ViolatedAt(T),
}

impl<T> Verdict<T> {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyReport<T> {
    pub max_residual: T,
    /// Grid point where `max_residual` is attained.
    pub argmax_x: T,
    pub fixed_point_images_checked: usize,
    /// Largest `|g(h(x̄)) − h(x̄)|` over the checked fixed points.
    pub fixed_point_residual: T,
    pub verdict: Verdict<T>,
}

/// Checks `h∘f = g∘h` on a uniform grid, with `h` required to be strictly
/// monotone on `interval` as a stand-in for being a homeomorphism.
///
/// Fixed points of `f` on the interval are located and their images under
/// `h` must be fixed by `g`. The verdict is consistent when the grid residual
/// is within [`CONJUGACY_TOLERANCE`] and every fixed-point image is within
/// [`FIXED_IMAGE_TOLERANCE`].
pub fn verify_conjugacy<T: Scalar>(
    f: &Expression,
    g: &Expression,
    h: &Expression,
    interval: Interval<T>,
    samples: usize,
) -> Result<ConjugacyReport<T>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(
            "conjugacy check needs at least 2 samples".into(),
        ));
    }
    monotone_direction(h, interval)?;

    let mut max_residual = T::neg_infinity();
    let mut argmax_x = interval.lo();
    for x in interval.grid(samples) {
        let lhs = h.evaluate(f.evaluate(x)?)?;
        let rhs = g.evaluate(h.evaluate(x)?)?;
        let r = (lhs - rhs).abs();
        if r > max_residual {
            max_residual = r;
            argmax_x = x;
        }
    }

    let (fixed, _) = locate_fixed_points(f, interval, samples)?;
    let mut fixed_point_residual = T::zero();
    let mut worst_fixed = None;
    for &x_bar in &fixed {
        let hx = h.evaluate(x_bar)?;
        let r = (g.apply(hx)? - hx).abs();
        if r > fixed_point_residual {
            fixed_point_residual = r;
            worst_fixed = Some(x_bar);
        }
    }

    let verdict = if max_residual > T::tolerance(CONJUGACY_TOLERANCE) {
        Verdict::ViolatedAt(argmax_x)
    } else if fixed_point_residual > T::tolerance(FIXED_IMAGE_TOLERANCE) {
        Verdict::ViolatedAt(worst_fixed.expect("a residual was recorded"))
    } else {
        Verdict::Consistent
    };
    Ok(ConjugacyReport {
        max_residual,
        argmax_x,
        fixed_point_images_checked: fixed.len(),
        fixed_point_residual,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expression {
        s.parse().unwrap()
    }

    fn unit() -> Interval<f64> {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn identity_conjugacy() {
        let f = e("3.7*x*(1-x)");
        let r = verify_conjugacy(&f, &f, &e("x"), unit(), 1024).unwrap();
        assert_eq!(r.max_residual, 0.0);
        assert!(r.verdict.is_consistent());
        assert_eq!(r.fixed_point_images_checked, 2);
    }

    #[test]
    fn tent_and_logistic() {
        let r = verify_conjugacy(
            &e("1 - 2*abs(x - 0.5)"),
            &e("4*x*(1-x)"),
            &e("sin(1.5707963267948966*x)^2"),
            unit(),
            4096,
        )
        .unwrap();
        assert!(r.max_residual <= 1e-9, "residual {}", r.max_residual);
        assert!(r.verdict.is_consistent());
        // tent fixed points: 0 and 2/3
        assert_eq!(r.fixed_point_images_checked, 2);
        assert!(r.fixed_point_residual <= 1e-8);
    }

    #[test]
    fn tent_logistic_identity_on_dense_grid() {
        // sin²(π(1 − 2|x − ½|)/2) = 4 sin²(πx/2) cos²(πx/2)
        let half_pi = std::f64::consts::FRAC_PI_2;
        for k in 0..=100_000 {
            let x = k as f64 / 100_000.0;
            let lhs = (half_pi * (1.0 - 2.0 * (x - 0.5).abs())).sin().powi(2);
            let s = (half_pi * x).sin().powi(2);
            assert!((lhs - 4.0 * s * (1.0 - s)).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_control() {
        let r = verify_conjugacy(&e("2*x"), &e("3*x"), &e("x"), unit(), 4096).unwrap();
        assert!((r.max_residual - 1.0).abs() < 1e-15);
        assert_eq!(r.argmax_x, 1.0);
        assert_eq!(r.verdict, Verdict::ViolatedAt(1.0));
    }

    #[test]
    fn non_monotone_h_is_rejected() {
        let err = verify_conjugacy(&e("x"), &e("x"), &e("x*(1-x)"), unit(), 64).unwrap_err();
        assert!(matches!(err, Error::NonMonotone { .. }));
    }
}
