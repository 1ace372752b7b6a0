//! The coupled system `y = f(x)`, `x = φ(y)` and its iteration.
//!
//! One step of the engine runs the full loop: from `x_i` the cognitive
//! function gives `y_i = f(x_i)`, the manipulative function feeds back
//! `x_{i+1} = φ(y_i)`, and the returned state carries `y_{i+1} = f(x_{i+1})`.
//! The x-projection of an orbit is therefore the orbit of `Γ = φ∘f` and the
//! y-projection the orbit of `Φ = f∘φ`.

mod composite;
mod fixed_point;

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{ExprError, Expression};
use crate::scalar::{linspace, Scalar};

pub use composite::{compose_gamma, compose_phi_map, DifferentiableMap, Gamma, PhiMap, ScalarMap};
pub(crate) use fixed_point::locate_fixed_points;
pub use fixed_point::{
    check_fixed_point_correspondence, classify_stability, find_fixed_points, CorrespondenceReport,
    FixedPoint, FixedPointScan, Stability, DEFAULT_GRID, FIXED_POINT_TOLERANCE, MARGINAL_BAND,
    ROOT_TOLERANCE,
};

/// Number of grid points used to validate a system on construction.
pub const VALIDATION_GRID: usize = 1024;
/// An orbit is declared divergent once `|x|` exceeds this bound.
pub const DIVERGENCE_BOUND: f64 = 1e12;
/// Relative step size below which a step counts towards convergence.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-13;
/// Consecutive small steps required to declare convergence.
pub const CONVERGENCE_WINDOW: usize = 3;

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidInterval {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn span(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, v: T) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Uniform grid of `n` points including both ends.
    pub fn grid(&self, n: usize) -> impl Iterator<Item = T> {
        linspace(self.lo, self.hi, n)
    }

    /// Intersection with `other`, if it has positive length.
    pub fn intersect(&self, other: &Interval<T>) -> Option<Interval<T>> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi)).ok()
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The pair of cognitive function `f` and manipulative function `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflexiveSystem<T> {
    f: Expression,
    phi: Expression,
    x_domain: Interval<T>,
    y_domain: Interval<T>,
}

impl<T: Scalar> ReflexiveSystem<T> {
    /// Builds a system, checking that `f` is finite on a grid over `x_domain`
    /// and `φ` on a grid over `y_domain`.
    pub fn new(
        f: Expression,
        phi: Expression,
        x_domain: Interval<T>,
        y_domain: Interval<T>,
    ) -> Result<Self> {
        for (function, e, dom) in [("f", &f, &x_domain), ("phi", &phi, &y_domain)] {
            for v in dom.grid(VALIDATION_GRID) {
                e.evaluate(v).map_err(|source| Error::InvalidSystem {
                    function,
                    at: v.as_f64(),
                    source,
                })?;
            }
        }
        Ok(ReflexiveSystem {
            f,
            phi,
            x_domain,
            y_domain,
        })
    }

    /// Builds a system whose `y_domain` is the sampled image of `x_domain`
    /// under `f` (padded by one unit on each side when `f` is constant).
    pub fn with_image_domain(
        f: Expression,
        phi: Expression,
        x_domain: Interval<T>,
    ) -> Result<Self> {
        let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
        for v in x_domain.grid(VALIDATION_GRID) {
            let y = f.evaluate(v).map_err(|source| Error::InvalidSystem {
                function: "f",
                at: v.as_f64(),
                source,
            })?;
            lo = lo.min(y);
            hi = hi.max(y);
        }
        if lo == hi {
            lo = lo - T::one();
            hi = hi + T::one();
        }
        let y_domain = Interval::new(lo, hi)?;
        Self::new(f, phi, x_domain, y_domain)
    }

    /// Parses both functions and builds the system.
    pub fn from_sources(
        f: &str,
        phi: &str,
        x_domain: Interval<T>,
        y_domain: Interval<T>,
    ) -> Result<Self> {
        Self::new(
            Expression::parse(f)?,
            Expression::parse(phi)?,
            x_domain,
            y_domain,
        )
    }

    pub fn f(&self) -> &Expression {
        &self.f
    }

    pub fn phi(&self) -> &Expression {
        &self.phi
    }

    pub fn x_domain(&self) -> Interval<T> {
        self.x_domain
    }

    pub fn y_domain(&self) -> Interval<T> {
        self.y_domain
    }

    pub fn eval_f(&self, x: T) -> Result<T, ExprError> {
        self.f.evaluate(x)
    }

    pub fn eval_phi(&self, y: T) -> Result<T, ExprError> {
        self.phi.evaluate(y)
    }
}

/// State `(x_i, y_i)` at time step `index`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemState<T> {
    pub x: T,
    pub y: T,
    pub index: usize,
}

/// Why an orbit stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    StepBudget,
    Divergence,
    Convergence,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::StepBudget => "step-budget",
            Termination::Divergence => "divergence",
            Termination::Convergence => "convergence",
        }
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Forward orbit: states indexed consecutively from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit<T> {
    pub states: Vec<SystemState<T>>,
    pub terminated_by: Termination,
}

impl<T: Scalar> Orbit<T> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Number of steps taken (states minus one).
    pub fn steps(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    pub fn last(&self) -> Option<&SystemState<T>> {
        self.states.last()
    }

    pub fn xs(&self) -> Vec<T> {
        self.states.iter().map(|s| s.x).collect()
    }

    pub fn ys(&self) -> Vec<T> {
        self.states.iter().map(|s| s.y).collect()
    }
}

/// Advances one full loop: `x' = φ(f(x))`, `y' = f(x')`.
pub fn step<T: Scalar>(
    system: &ReflexiveSystem<T>,
    state: &SystemState<T>,
) -> Result<SystemState<T>> {
    if !state.x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "state x at step {} is not finite",
            state.index
        )));
    }
    let at = |source| Error::AtStep {
        step: state.index + 1,
        source,
    };
    let y = system.eval_f(state.x).map_err(at)?;
    let x_next = system.eval_phi(y).map_err(at)?;
    let y_next = system.eval_f(x_next).map_err(at)?;
    Ok(SystemState {
        x: x_next,
        y: y_next,
        index: state.index + 1,
    })
}

/// Iterates from `(x0, f(x0))` for at most `max_steps` steps.
pub fn orbit<T: Scalar>(system: &ReflexiveSystem<T>, x0: T, max_steps: usize) -> Result<Orbit<T>> {
    if max_steps < 1 {
        return Err(Error::InvalidArgument(
            "max_steps must be at least 1".into(),
        ));
    }
    if !x0.is_finite() {
        return Err(Error::InvalidArgument("x0 must be finite".into()));
    }
    let y0 = system
        .eval_f(x0)
        .map_err(|source| Error::AtStep { step: 0, source })?;
    let mut states = Vec::with_capacity(max_steps.min(1 << 16) + 1);
    states.push(SystemState {
        x: x0,
        y: y0,
        index: 0,
    });

    let bound = T::lit(DIVERGENCE_BOUND);
    let tol = T::tolerance(CONVERGENCE_TOLERANCE);
    let mut quiet = 0;
    let mut terminated_by = Termination::StepBudget;
    for _ in 0..max_steps {
        let prev = *states.last().expect("non-empty");
        let next = step(system, &prev)?;
        states.push(next);
        if next.x.abs() > bound {
            terminated_by = Termination::Divergence;
            break;
        }
        if (next.x - prev.x).abs() < tol * prev.x.abs().max(T::one()) {
            quiet += 1;
            if quiet == CONVERGENCE_WINDOW {
                terminated_by = Termination::Convergence;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(Orbit {
        states,
        terminated_by,
    })
}
