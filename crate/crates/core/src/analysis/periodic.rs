use crate::dynamics::{ScalarMap, DIVERGENCE_BOUND};
use crate::error::{Error, Result};
use crate::expr::ExprError;
use crate::scalar::Scalar;

/// Relative tolerance for returning to the starting point.
pub const PERIOD_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_MAX_PERIOD: usize = 64;
pub const DEFAULT_BURN_IN: usize = 1000;

/// A detected cycle of minimal period.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport<T> {
    pub period: usize,
    /// The cycle in orbit order, starting from the point reached after burn-in.
    pub cycle: Vec<T>,
    /// `max_k |Γⁿ(p_k) − p_k|` over the cycle.
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PeriodSearch<T> {
    Found(PeriodReport<T>),
    NotFound,
    /// The orbit left every bounded region during burn-in.
    Diverged {
        step: usize,
    },
}

impl<T> PeriodSearch<T> {
    pub fn found(&self) -> Option<&PeriodReport<T>> {
        match self {
            PeriodSearch::Found(r) => Some(r),
            _ => None,
        }
    }
}

enum Next<T> {
    Value(T),
    Diverged,
}

fn advance<T: Scalar, M: ScalarMap<T>>(map: &M, x: T) -> Result<Next<T>> {
    match map.apply(x) {
        Ok(v) if v.abs() > T::lit(DIVERGENCE_BOUND) => Ok(Next::Diverged),
        Ok(v) => Ok(Next::Value(v)),
        Err(ExprError::NonFinite { .. }) => Ok(Next::Diverged),
        Err(e) => Err(e.into()),
    }
}

/// Runs `burn_in` iterations from `x0`, then looks for the smallest
/// `n ≤ max_period` with `|Γⁿ(p) − p| ≤ 1e-8·max(1, |p|)`.
pub fn detect_period<T: Scalar, M: ScalarMap<T>>(
    map: &M,
    x0: T,
    max_period: usize,
    burn_in: usize,
) -> Result<PeriodSearch<T>> {
    if max_period < 1 {
        return Err(Error::InvalidArgument(
            "max_period must be at least 1".into(),
        ));
    }
    let mut p = x0;
    for step in 1..=burn_in {
        match advance(map, p)? {
            Next::Value(v) => p = v,
            Next::Diverged => return Ok(PeriodSearch::Diverged { step }),
        }
    }
    let tol = T::tolerance(PERIOD_TOLERANCE) * p.abs().max(T::one());
    let mut orbit = Vec::with_capacity(max_period + 1);
    orbit.push(p);
    let mut x = p;
    let mut period = None;
    for n in 1..=max_period {
        x = match advance(map, x)? {
            Next::Value(v) => v,
            Next::Diverged => return Ok(PeriodSearch::NotFound),
        };
        if (x - p).abs() <= tol {
            period = Some(n);
            break;
        }
        orbit.push(x);
    }
    let Some(period) = period else {
        return Ok(PeriodSearch::NotFound);
    };
    let mut residual = T::zero();
    for &start in &orbit {
        let mut y = start;
        for _ in 0..period {
            y = map.apply(y)?;
        }
        residual = residual.max((y - start).abs());
    }
    Ok(PeriodSearch::Found(PeriodReport {
        period,
        cycle: orbit,
        residual,
    }))
}

/// Smallest `n` with `1 < n ≤ horizon` and `|Γⁿ(p) − p| < radius`.
pub fn detect_recurrence<T: Scalar, M: ScalarMap<T>>(
    map: &M,
    p: T,
    radius: T,
    horizon: usize,
) -> Result<Option<usize>> {
    if radius.is_nan() || radius <= T::zero() {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    if horizon < 2 {
        return Err(Error::InvalidArgument("horizon must be at least 2".into()));
    }
    let mut x = p;
    for n in 1..=horizon {
        x = match advance(map, x)? {
            Next::Value(v) => v,
            Next::Diverged => return Ok(None),
        };
        if n > 1 && (x - p).abs() < radius {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
