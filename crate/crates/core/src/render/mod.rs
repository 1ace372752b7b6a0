//! Staircase diagrams and phase portraits, as data and as SVG / CSV text.
//!
//! Both curves share one x–y plane: `f` is drawn as `y = f(x)` and `φ` as the
//! locus `x = φ(y)`, so fixed points show up as curve intersections.

mod csv;
mod svg;

use crate::dynamics::{find_fixed_points, Orbit, ReflexiveSystem, Stability, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use self::csv::{parse_csv, to_csv};
pub use self::svg::{to_svg, Frame, SvgOptions, SvgTrace};

/// Default number of samples per curve.
pub const DEFAULT_CURVE_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<T> {
    pub from: Point<T>,
    pub to: Point<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn length(&self) -> T {
        (self.to.x - self.from.x).hypot(self.to.y - self.from.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Marker<T> {
    pub at: Point<T>,
    pub stability: Stability,
}

/// Cobweb trace of an orbit between the curves of `f` and `φ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StaircaseTrace<T> {
    /// Alternating vertical (to `f`) and horizontal (to `φ`) moves.
    pub segments: Vec<Segment<T>>,
    /// Samples of `y = f(x)` over the x domain.
    pub curve_f: Vec<Point<T>>,
    /// Samples of `x = φ(y)` over the y domain, stored as `(φ(y), y)`.
    pub curve_phi: Vec<Point<T>>,
    pub fixed_points: Vec<Marker<T>>,
}

/// The orbit as a path `(x_i, y_i)` on the plane.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhasePortraitTrace<T> {
    pub points: Vec<Point<T>>,
    pub connect: bool,
}

/// Builds the staircase: a rise from `(x₀, 0)` to `(x₀, y₀)`, then for each
/// step a horizontal move to `(x_{i+1}, y_i)` and a vertical move to
/// `(x_{i+1}, y_{i+1})`. Every segment starts at the previous one's end.
pub fn staircase<T: Scalar>(
    system: &ReflexiveSystem<T>,
    orbit: &Orbit<T>,
    curve_samples: usize,
) -> Result<StaircaseTrace<T>> {
    if orbit.is_empty() {
        return Err(Error::InvalidArgument(
            "staircase needs a non-empty orbit".into(),
        ));
    }
    if curve_samples < 2 {
        return Err(Error::InvalidArgument(
            "curve_samples must be at least 2".into(),
        ));
    }
    let first = orbit.states[0];
    let mut segments = Vec::with_capacity(2 * orbit.len() - 1);
    let mut at = Point::new(first.x, first.y);
    segments.push(Segment {
        from: Point::new(first.x, T::zero()),
        to: at,
    });
    for st in &orbit.states[1..] {
        let across = Point::new(st.x, at.y);
        segments.push(Segment {
            from: at,
            to: across,
        });
        let up = Point::new(across.x, st.y);
        segments.push(Segment {
            from: across,
            to: up,
        });
        at = up;
    }

    let curve_f = system
        .x_domain()
        .grid(curve_samples)
        .filter_map(|x| system.eval_f(x).ok().map(|y| Point::new(x, y)))
        .collect();
    let curve_phi = system
        .y_domain()
        .grid(curve_samples)
        .filter_map(|y| system.eval_phi(y).ok().map(|x| Point::new(x, y)))
        .collect();
    let fixed_points = find_fixed_points(system, DEFAULT_GRID)?
        .points
        .into_iter()
        .map(|fp| Marker {
            at: Point::new(fp.x_bar, fp.y_bar),
            stability: fp.stability,
        })
        .collect();

    Ok(StaircaseTrace {
        segments,
        curve_f,
        curve_phi,
        fixed_points,
    })
}

pub fn phase_portrait<T: Scalar>(orbit: &Orbit<T>) -> Result<PhasePortraitTrace<T>> {
    if orbit.is_empty() {
        return Err(Error::InvalidArgument(
            "phase portrait needs a non-empty orbit".into(),
        ));
    }
    Ok(PhasePortraitTrace {
        points: orbit.states.iter().map(|s| Point::new(s.x, s.y)).collect(),
        connect: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{orbit, Interval, SystemState, Termination};

    fn sys(f: &str, phi: &str) -> ReflexiveSystem<f64> {
        ReflexiveSystem::from_sources(
            f,
            phi,
            Interval::new(0.0, 1.0).unwrap(),
            Interval::new(0.0, 3.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn one_step_identity_orbit() {
        let s = sys("x", "y");
        let o = orbit(&s, 0.4, 1).unwrap();
        let tr = staircase(&s, &o, 16).unwrap();
        assert_eq!(tr.segments.len(), 3);
        assert_eq!(tr.segments[0].length(), 0.4);
        assert!(tr.segments[1..].iter().all(|seg| seg.length() == 0.0));
    }

    #[test]
    fn inverse_pair_is_flat_after_the_rise() {
        let s = sys("2*x+1", "(y-1)/2");
        let o = orbit(&s, 0.25, 10).unwrap();
        let tr = staircase(&s, &o, 16).unwrap();
        assert!(tr.segments[0].length() > 0.0);
        assert!(tr.segments[2..].iter().all(|seg| seg.length() == 0.0));
    }

    #[test]
    fn segments_chain_exactly() {
        let s = sys("2.9*x*(1-x)", "y");
        let o = orbit(&s, 0.1, 60).unwrap();
        let tr = staircase(&s, &o, 64).unwrap();
        assert_eq!(tr.segments.len(), 2 * o.len() - 1);
        assert_eq!(tr.segments[0].from, Point::new(0.1, 0.0));
        for w in tr.segments.windows(2) {
            assert_eq!(w[0].to, w[1].from);
        }
        for (k, seg) in tr.segments.iter().enumerate() {
            if k % 2 == 0 {
                assert_eq!(seg.from.x, seg.to.x);
            } else {
                assert_eq!(seg.from.y, seg.to.y);
            }
        }
    }

    #[test]
    fn curves_and_markers() {
        let s = sys("2.5*x*(1-x)", "y");
        let o = orbit(&s, 0.1, 5).unwrap();
        let tr = staircase(&s, &o, 32).unwrap();
        assert_eq!(tr.curve_f.len(), 32);
        assert_eq!(tr.curve_phi.len(), 32);
        // φ = identity: the φ curve is the diagonal
        assert!(tr.curve_phi.iter().all(|p| p.x == p.y));
        assert_eq!(tr.fixed_points.len(), 2);
        assert_eq!(tr.fixed_points[1].stability, Stability::Attracting);
    }

    #[test]
    fn empty_orbit_is_rejected() {
        let s = sys("x", "y");
        let o = Orbit {
            states: vec![],
            terminated_by: Termination::StepBudget,
        };
        assert!(staircase(&s, &o, 8).is_err());
        assert!(phase_portrait(&o).is_err());
    }

    #[test]
    fn portrait_copies_states() {
        let states = vec![
            SystemState {
                x: 0.5,
                y: 0.5,
                index: 0
            };
            4
        ];
        let o = Orbit {
            states,
            terminated_by: Termination::Convergence,
        };
        let pp = phase_portrait(&o).unwrap();
        assert_eq!(pp.points.len(), 4);
        assert!(pp.points.iter().all(|p| *p == Point::new(0.5, 0.5)));
        assert!(pp.connect);
    }
}
