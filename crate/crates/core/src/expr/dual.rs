use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Dual number `value + derivative·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual<T> {
    pub value: T,
    pub derivative: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(value: T, derivative: T) -> Self {
        Dual { value, derivative }
    }

    /// A constant: zero infinitesimal part.
    pub fn constant(value: T) -> Self {
        Dual::new(value, T::zero())
    }

    /// The independent variable: unit infinitesimal part.
    pub fn variable(value: T) -> Self {
        Dual::new(value, T::one())
    }

    /// Applies a function with known value `fv` and slope `dfv` at `self.value`.
    #[inline]
    fn chain(self, fv: T, dfv: T) -> Self {
        Dual::new(fv, dfv * self.derivative)
    }

    pub fn sin(self) -> Self {
        self.chain(self.value.sin(), self.value.cos())
    }

    pub fn cos(self) -> Self {
        self.chain(self.value.cos(), -self.value.sin())
    }

    pub fn tan(self) -> Self {
        let t = self.value.tan();
        self.chain(t, T::one() + t * t)
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e)
    }

    pub fn ln(self) -> Self {
        self.chain(self.value.ln(), self.value.recip())
    }

    pub fn tanh(self) -> Self {
        let t = self.value.tanh();
        self.chain(t, T::one() - t * t)
    }

    pub fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        self.chain(s, (s + s).recip())
    }

    /// Absolute value; the slope at zero is left to the caller.
    pub fn abs(self) -> Self {
        self.chain(self.value.abs(), self.value.signum())
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Dual::constant(T::one());
        }
        let slope = T::lit(n as f64) * self.value.powi(n - 1);
        self.chain(self.value.powi(n), slope)
    }

    /// `self^p` for a constant real exponent.
    pub fn powf(self, p: T) -> Self {
        self.chain(self.value.powf(p), p * self.value.powf(p - T::one()))
    }

    /// `self^e` where both parts may vary; requires a positive base.
    pub fn pow(self, e: Dual<T>) -> Self {
        let v = self.value.powf(e.value);
        Dual::new(
            v,
            v * (e.derivative * self.value.ln() + e.value * self.derivative / self.value),
        )
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Dual<T>;

    fn add(self, rhs: Self) -> Self {
        Dual::new(self.value + rhs.value, self.derivative + rhs.derivative)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Dual<T>;

    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.value - rhs.value, self.derivative - rhs.derivative)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Dual<T>;

    fn mul(self, rhs: Self) -> Self {
        Dual::new(
            self.value * rhs.value,
            self.derivative * rhs.value + self.value * rhs.derivative,
        )
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Dual<T>;

    fn div(self, rhs: Self) -> Self {
        Dual::new(
            self.value / rhs.value,
            (self.derivative * rhs.value - self.value * rhs.derivative) / (rhs.value * rhs.value),
        )
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Dual<T>;

    fn neg(self) -> Self {
        Dual::new(-self.value, -self.derivative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn product_rule() {
        let x = Dual::variable(3.0);
        let y = x * x * x;
        assert_eq!(y.value, 27.0);
        assert_eq!(y.derivative, 27.0);
    }

    #[test]
    fn quotient_rule() {
        let x = Dual::variable(2.0);
        let y = Dual::constant(1.0) / x;
        assert_eq!(y.derivative, -0.25);
    }

    #[test]
    fn chain_rule_through_transcendentals() {
        let x = Dual::variable(0.3f64);
        let y = (x * x).sin().exp();
        let expected = (0.09f64).sin().exp() * (0.09f64).cos() * 0.6;
        assert_relative_eq!(y.derivative, expected, max_relative = 1e-15);
    }

    #[test]
    fn general_power_matches_constant_exponent() {
        let x = Dual::variable(1.7f64);
        let a = x.pow(Dual::constant(2.5));
        let b = x.powf(2.5);
        assert_relative_eq!(a.value, b.value, max_relative = 1e-15);
        assert_relative_eq!(a.derivative, b.derivative, max_relative = 1e-14);
    }
}
