//! Scalar expressions of one variable.
//!
//! The cognitive and manipulative functions of a system are written in a
//! small infix language and parsed into an [`Expression`]. Expressions are
//! immutable once parsed and can be evaluated at plain scalars or at
//! [`Dual`] numbers, which yields exact forward-mode derivatives.
//!
//! ```text
//! expr    := term (("+"|"-") term)* ;
//! term    := unary (("*"|"/") unary)* ;
//! unary   := "-" unary | power ;
//! power   := primary ("^" unary)? ;          (right-associative)
//! primary := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")" ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)` while `2^-x`
//! is still accepted.

mod dual;
mod eval;
mod parser;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;

pub use dual::Dual;

/// Errors raised while parsing or evaluating an expression.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("multiple free variables: `{first}` and `{second}` (at byte {offset})")]
    MultipleVariables {
        first: String,
        second: String,
        offset: usize,
    },
    #[error("domain error in `{node}`: {reason} (argument {argument})")]
    Domain {
        node: String,
        reason: &'static str,
        argument: f64,
    },
    #[error("`{node}` is not differentiable at argument {argument}")]
    NonDifferentiable { node: String, argument: f64 },
    #[error("`{node}` evaluated to a non-finite value")]
    NonFinite { node: String },
}

impl ExprError {
    /// True for errors produced by `parse`, false for evaluation failures.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            ExprError::Syntax { .. }
                | ExprError::UnknownIdentifier { .. }
                | ExprError::MultipleVariables { .. }
        )
    }
}

/// Binary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Built-in functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Tanh,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Log,
        Func::Tanh,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Node of the syntax tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    /// Finite, non-negative literal as written in the source.
    Number(f64),
    Variable(String),
    Neg(Box<Node>),
    Binary {
        op: BinOp,
        lhs: Box<Node>,
        rhs: Box<Node>,
    },
    Call {
        func: Func,
        arg: Box<Node>,
    },
}

impl Node {
    pub fn num(v: f64) -> Node {
        Node::Number(v)
    }

    pub fn var(name: &str) -> Node {
        Node::Variable(name.to_string())
    }

    pub fn negation(inner: Node) -> Node {
        Node::Neg(Box::new(inner))
    }

    pub fn binary(op: BinOp, lhs: Node, rhs: Node) -> Node {
        Node::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn call(func: Func, arg: Node) -> Node {
        Node::Call {
            func,
            arg: Box::new(arg),
        }
    }

    /// Depth of the tree; a leaf has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Node::Number(_) | Node::Variable(_) => 1,
            Node::Neg(inner) => 1 + inner.depth(),
            Node::Binary { lhs, rhs, .. } => 1 + lhs.depth().max(rhs.depth()),
            Node::Call { arg, .. } => 1 + arg.depth(),
        }
    }

    fn contains_variable(&self) -> bool {
        match self {
            Node::Number(_) => false,
            Node::Variable(_) => true,
            Node::Neg(inner) => inner.contains_variable(),
            Node::Binary { lhs, rhs, .. } => lhs.contains_variable() || rhs.contains_variable(),
            Node::Call { arg, .. } => arg.contains_variable(),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, nested: bool) -> fmt::Result {
        match self {
            Node::Number(v) if *v < 0.0 => write!(f, "({v:?})"),
            Node::Number(v) => write!(f, "{v:?}"),
            Node::Variable(name) => f.write_str(name),
            Node::Neg(inner) => {
                if nested {
                    f.write_str("(")?;
                }
                f.write_str("-")?;
                inner.write(f, true)?;
                if nested {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Node::Binary { op, lhs, rhs } => {
                if nested {
                    f.write_str("(")?;
                }
                lhs.write(f, true)?;
                write!(f, " {} ", op.symbol())?;
                rhs.write(f, true)?;
                if nested {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Node::Call { func, arg } => {
                write!(f, "{}(", func.name())?;
                arg.write(f, false)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

/// Parsed scalar function of at most one free variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    root: Node,
    variable: Option<String>,
}

impl Expression {
    pub fn parse(source: &str) -> Result<Expression, ExprError> {
        parser::parse(source)
    }

    /// Builds an expression from a tree, checking the one-variable rule.
    pub fn from_node(root: Node) -> Result<Expression, ExprError> {
        fn collect<'a>(node: &'a Node, found: &mut Option<&'a str>) -> Result<(), ExprError> {
            match node {
                Node::Number(_) => Ok(()),
                Node::Variable(name) => match found {
                    Some(first) if *first != name.as_str() => Err(ExprError::MultipleVariables {
                        first: first.to_string(),
                        second: name.clone(),
                        offset: 0,
                    }),
                    _ => {
                        *found = Some(name);
                        Ok(())
                    }
                },
                Node::Neg(inner) => collect(inner, found),
                Node::Binary { lhs, rhs, .. } => {
                    collect(lhs, found)?;
                    collect(rhs, found)
                }
                Node::Call { arg, .. } => collect(arg, found),
            }
        }
        let mut found = None;
        collect(&root, &mut found)?;
        let variable = found.map(str::to_string);
        Ok(Expression { root, variable })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// The free variable, or `None` for a constant expression.
    pub fn variable(&self) -> Option<&str> {
        self.variable.as_deref()
    }

    pub fn is_constant(&self) -> bool {
        !self.root.contains_variable()
    }

    /// Value at `v`.
    pub fn evaluate<T: Scalar>(&self, v: T) -> Result<T, ExprError> {
        eval::eval_node::<T, T>(&self.root, v)
    }

    /// Exact derivative at `v` by forward-mode differentiation.
    pub fn derivative<T: Scalar>(&self, v: T) -> Result<T, ExprError> {
        Ok(self.evaluate_dual(Dual::variable(v))?.derivative)
    }

    /// Value and derivative at once, propagating the infinitesimal part of `v`.
    pub fn evaluate_dual<T: Scalar>(&self, v: Dual<T>) -> Result<Dual<T>, ExprError> {
        eval::eval_node::<T, Dual<T>>(&self.root, v)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl FromStr for Expression {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expression::parse(s)
    }
}

/// Parses `source` into an [`Expression`].
pub fn parse(source: &str) -> Result<Expression, ExprError> {
    Expression::parse(source)
}
