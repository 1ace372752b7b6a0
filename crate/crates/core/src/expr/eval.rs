use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{BinOp, Dual, ExprError, Func, Node};
use crate::scalar::Scalar;

/// Number type an expression tree can be evaluated over.
pub(super) trait Value<T: Scalar>:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const TRACKS_SLOPE: bool;

    fn constant(c: T) -> Self;
    fn real(self) -> T;
    fn slope_is_zero(self) -> bool;
    fn slope_is_finite(self) -> bool;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn tanh(self) -> Self;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, p: T) -> Self;
    fn pow(self, e: Self) -> Self;
}

impl<T: Scalar> Value<T> for T {
    const TRACKS_SLOPE: bool = false;

    fn constant(c: T) -> Self {
        c
    }
    fn real(self) -> T {
        self
    }
    fn slope_is_zero(self) -> bool {
        true
    }
    fn slope_is_finite(self) -> bool {
        true
    }
    fn sin(self) -> Self {
        num_traits::Float::sin(self)
    }
    fn cos(self) -> Self {
        num_traits::Float::cos(self)
    }
    fn tan(self) -> Self {
        num_traits::Float::tan(self)
    }
    fn exp(self) -> Self {
        num_traits::Float::exp(self)
    }
    fn ln(self) -> Self {
        num_traits::Float::ln(self)
    }
    fn tanh(self) -> Self {
        num_traits::Float::tanh(self)
    }
    fn sqrt(self) -> Self {
        num_traits::Float::sqrt(self)
    }
    fn abs(self) -> Self {
        num_traits::Float::abs(self)
    }
    fn powi(self, n: i32) -> Self {
        num_traits::Float::powi(self, n)
    }
    fn powf(self, p: T) -> Self {
        num_traits::Float::powf(self, p)
    }
    fn pow(self, e: Self) -> Self {
        num_traits::Float::powf(self, e)
    }
}

impl<T: Scalar> Value<T> for Dual<T> {
    const TRACKS_SLOPE: bool = true;

    fn constant(c: T) -> Self {
        Dual::constant(c)
    }
    fn real(self) -> T {
        self.value
    }
    fn slope_is_zero(self) -> bool {
        self.derivative == T::zero()
    }
    fn slope_is_finite(self) -> bool {
        self.derivative.is_finite()
    }
    fn sin(self) -> Self {
        Dual::sin(self)
    }
    fn cos(self) -> Self {
        Dual::cos(self)
    }
    fn tan(self) -> Self {
        Dual::tan(self)
    }
    fn exp(self) -> Self {
        Dual::exp(self)
    }
    fn ln(self) -> Self {
        Dual::ln(self)
    }
    fn tanh(self) -> Self {
        Dual::tanh(self)
    }
    fn sqrt(self) -> Self {
        Dual::sqrt(self)
    }
    fn abs(self) -> Self {
        Dual::abs(self)
    }
    fn powi(self, n: i32) -> Self {
        Dual::powi(self, n)
    }
    fn powf(self, p: T) -> Self {
        Dual::powf(self, p)
    }
    fn pow(self, e: Self) -> Self {
        Dual::pow(self, e)
    }
}

fn domain(node: &Node, reason: &'static str, argument: f64) -> ExprError {
    ExprError::Domain {
        node: node.to_string(),
        reason,
        argument,
    }
}

pub(super) fn eval_node<T: Scalar, V: Value<T>>(node: &Node, v: V) -> Result<V, ExprError> {
    let out = match node {
        Node::Number(c) => V::constant(T::lit(*c)),
        Node::Variable(_) => v,
        Node::Neg(inner) => -eval_node(inner, v)?,
        Node::Binary { op, lhs, rhs } => {
            let a = eval_node(lhs, v)?;
            let b = eval_node(rhs, v)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b.real() == T::zero() {
                        return Err(domain(node, "division by zero", b.real().as_f64()));
                    }
                    a / b
                }
                BinOp::Pow => power(node, a, b)?,
            }
        }
        Node::Call { func, arg } => {
            let a = eval_node(arg, v)?;
            let x = a.real();
            match func {
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Tan => a.tan(),
                Func::Exp => a.exp(),
                Func::Tanh => a.tanh(),
                Func::Log => {
                    if x <= T::zero() {
                        return Err(domain(
                            node,
                            "logarithm of a non-positive number",
                            x.as_f64(),
                        ));
                    }
                    a.ln()
                }
                Func::Sqrt => {
                    if x < T::zero() {
                        return Err(domain(node, "square root of a negative number", x.as_f64()));
                    }
                    if V::TRACKS_SLOPE && x == T::zero() && !a.slope_is_zero() {
                        return Err(ExprError::NonDifferentiable {
                            node: node.to_string(),
                            argument: 0.0,
                        });
                    }
                    a.sqrt()
                }
                Func::Abs => {
                    if V::TRACKS_SLOPE && x == T::zero() && !a.slope_is_zero() {
                        return Err(ExprError::NonDifferentiable {
                            node: node.to_string(),
                            argument: 0.0,
                        });
                    }
                    a.abs()
                }
            }
        }
    };
    if !out.real().is_finite() {
        return Err(ExprError::NonFinite {
            node: node.to_string(),
        });
    }
    if !out.slope_is_finite() {
        return Err(ExprError::NonDifferentiable {
            node: node.to_string(),
            argument: v.real().as_f64(),
        });
    }
    Ok(out)
}

fn power<T: Scalar, V: Value<T>>(node: &Node, base: V, exponent: V) -> Result<V, ExprError> {
    let a = base.real();
    let p = exponent.real();
    let integral = p.fract() == T::zero() && p.abs() <= T::lit(i32::MAX as f64);
    if a == T::zero() && p < T::zero() {
        return Err(domain(node, "zero raised to a negative power", p.as_f64()));
    }
    if exponent.slope_is_zero() {
        if integral {
            return Ok(base.powi(p.to_i32().expect("checked integral range")));
        }
        if a < T::zero() {
            return Err(domain(
                node,
                "negative base with non-integer exponent",
                a.as_f64(),
            ));
        }
        return Ok(base.powf(p));
    }
    // Variable exponent: the slope involves ln(base).
    if a > T::zero() {
        return Ok(base.pow(exponent));
    }
    if !integral && a < T::zero() {
        return Err(domain(
            node,
            "negative base with non-integer exponent",
            a.as_f64(),
        ));
    }
    Err(domain(
        node,
        "non-positive base with a varying exponent",
        a.as_f64(),
    ))
}
