//! Reflexive two-map dynamical systems.
//!
//! A system pairs a response `y = f(x)` with a feedback `x = φ(y)` and is
//! iterated as `x' = φ(f(x))`. The crate parses both maps from text, iterates
//! orbits, locates and classifies fixed points, and offers diagnostics
//! (distance from an inverse pair, periodicity, boom-bust episodes,
//! topological conjugacy) alongside staircase and phase-portrait rendering.
//!
//! ```
//! use reflexivity::{orbit, Interval, ReflexiveSystem64};
//!
//! let system = ReflexiveSystem64::from_sources(
//!     "2*x",
//!     "y/4 + 0.1",
//!     Interval::new(0.0, 1.0).unwrap(),
//!     Interval::new(0.0, 2.0).unwrap(),
//! )
//! .unwrap();
//! let o = orbit(&system, 0.9, 200).unwrap();
//! assert!((o.last().unwrap().x - 0.2).abs() < 1e-9);
//! ```

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod expr;
pub mod render;
pub mod scalar;

pub use analysis::{
    detect_boom_bust, detect_period, detect_recurrence, function_distance, invert_numeric,
    verify_conjugacy,
};
pub use dynamics::{
    classify_stability, find_fixed_points, orbit, step, FixedPoint, Interval, Orbit,
    ReflexiveSystem, Stability, SystemState, Termination,
};
pub use error::{Error, ErrorKind, Result};
pub use expr::{parse, Dual, ExprError, Expression};
pub use render::{parse_csv, phase_portrait, staircase, to_csv, to_svg, SvgOptions};
pub use scalar::Scalar;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeExamples;

pub type ReflexiveSystem64 = ReflexiveSystem<f64>;
pub type ReflexiveSystem32 = ReflexiveSystem<f32>;
pub type Orbit64 = Orbit<f64>;
pub type Orbit32 = Orbit<f32>;
pub type FixedPoint64 = FixedPoint<f64>;
pub type FixedPoint32 = FixedPoint<f32>;
pub type Interval64 = Interval<f64>;
pub type Interval32 = Interval<f32>;
pub type Dual64 = Dual<f64>;
pub type Dual32 = Dual<f32>;
