use std::fmt;

use super::composite::{compose_gamma, compose_phi_map, ScalarMap};
use super::{Interval, ReflexiveSystem};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default number of grid points for the fixed-point scan.
pub const DEFAULT_GRID: usize = 4096;
/// Bisection stops once `|Γ(x) − x|` falls below this.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Maximum residual accepted for a reported fixed point.
pub const FIXED_POINT_TOLERANCE: f64 = 1e-9;
/// Half-width of the band around `|λ| = 1` classified as marginal.
pub const MARGINAL_BAND: f64 = 1e-6;
/// Roots closer than this fraction of the domain span are merged.
pub const DEDUP_RADIUS: f64 = 1e-9;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Attracting,
    Repelling,
    Marginal,
}

impl Stability {
    /// Classifies a multiplier against the unit circle with the marginal band.
    pub fn from_multiplier<T: Scalar>(lambda: T) -> Stability {
        let a = lambda.abs();
        let band = T::tolerance(MARGINAL_BAND);
        if a < T::one() - band {
            Stability::Attracting
        } else if a > T::one() + band {
            Stability::Repelling
        } else {
            Stability::Marginal
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Attracting => "attracting",
            Stability::Repelling => "repelling",
            Stability::Marginal => "marginal",
        }
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A located fixed point `(x̄, ȳ)` with its multiplier `λ = f'(x̄)·φ'(ȳ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint<T> {
    pub x_bar: T,
    pub y_bar: T,
    /// `|f(x̄) − ȳ|`
    pub residual_f: T,
    /// `|φ(ȳ) − x̄|`
    pub residual_phi: T,
    pub multiplier: T,
    pub stability: Stability,
}

/// Result of [`find_fixed_points`].
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointScan<T> {
    /// Fixed points in increasing order of `x̄`.
    pub points: Vec<FixedPoint<T>>,
    /// Grid points skipped because `Γ` could not be evaluated there.
    pub skipped: usize,
}

/// Residuals from checking a fixed point against both composite maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrespondenceReport<T> {
    /// `|Γ(x̄) − x̄|`
    pub gamma_residual: T,
    /// `|Φ(ȳ) − ȳ|`
    pub phi_map_residual: T,
    pub holds: bool,
}

/// Roots of `map(x) − x` on `interval` by grid scan plus bisection.
///
/// Returns the sorted, deduplicated roots and the number of grid points at
/// which `map` failed. Tangential roots are found only when a grid point
/// lands within [`ROOT_TOLERANCE`].
pub(crate) fn locate_fixed_points<T: Scalar, M: ScalarMap<T>>(
    map: &M,
    interval: Interval<T>,
    grid_n: usize,
) -> Result<(Vec<T>, usize)> {
    if grid_n < 2 {
        return Err(Error::InvalidArgument(
            "grid must have at least 2 points".into(),
        ));
    }
    let g = |x: T| map.apply(x).map(|v| v - x);
    let tol = T::tolerance(ROOT_TOLERANCE);
    let accept = T::tolerance(FIXED_POINT_TOLERANCE);

    let samples: Vec<(T, Option<T>)> = interval
        .grid(grid_n)
        .map(|x| (x, g(x).ok().filter(|v| v.is_finite())))
        .collect();
    let skipped = samples.iter().filter(|(_, v)| v.is_none()).count();
    if skipped == samples.len() {
        return Err(Error::NoValidPoints {
            lo: interval.lo().as_f64(),
            hi: interval.hi().as_f64(),
        });
    }

    let mut roots: Vec<(T, T)> = Vec::new();
    for (x, v) in &samples {
        if let Some(v) = v {
            if v.abs() < tol {
                roots.push((*x, v.abs()));
            }
        }
    }
    for pair in samples.windows(2) {
        let ((a, ga), (b, gb)) = (pair[0], pair[1]);
        let (Some(ga), Some(gb)) = (ga, gb) else {
            continue;
        };
        if ga.abs() < tol || gb.abs() < tol || ga.signum() == gb.signum() {
            continue;
        }
        if let Some(root) = bisect(&g, a, ga, b, tol) {
            if root.1 <= accept {
                roots.push(root);
            }
        }
    }

    roots.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite roots"));
    let radius = T::tolerance(DEDUP_RADIUS) * interval.span();
    let mut merged: Vec<(T, T)> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(last) if (r.0 - last.0).abs() <= radius => {
                if r.1 < last.1 {
                    *last = r;
                }
            }
            _ => merged.push(r),
        }
    }
    Ok((merged.into_iter().map(|(x, _)| x).collect(), skipped))
}

/// Bisection on a sign-changing bracket; returns `(root, |g(root)|)`.
fn bisect<T: Scalar, G>(g: &G, mut a: T, mut ga: T, mut b: T, tol: T) -> Option<(T, T)>
where
    G: Fn(T) -> Result<T, crate::expr::ExprError>,
{
    let mut best = (a, ga.abs());
    for _ in 0..MAX_BISECTIONS {
        let mid = a + (b - a) / (T::one() + T::one());
        if mid == a || mid == b {
            break;
        }
        let gm = g(mid).ok().filter(|v| v.is_finite())?;
        if gm.abs() < best.1 {
            best = (mid, gm.abs());
        }
        if gm.abs() < tol {
            return Some((mid, gm.abs()));
        }
        if gm.signum() == ga.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Some(best)
}

/// Scans `x_domain` on a `grid_n`-point grid for fixed points and classifies each.
pub fn find_fixed_points<T: Scalar>(
    system: &ReflexiveSystem<T>,
    grid_n: usize,
) -> Result<FixedPointScan<T>> {
    let gamma = compose_gamma(system);
    let (roots, skipped) = locate_fixed_points(&gamma, system.x_domain(), grid_n)?;
    let mut points = Vec::with_capacity(roots.len());
    for x_bar in roots {
        let y_bar = system.eval_f(x_bar)?;
        points.push(classify_stability(system, x_bar, y_bar)?);
    }
    Ok(FixedPointScan { points, skipped })
}

/// Computes `λ = f'(x̄)·φ'(ȳ)` and classifies the fixed point.
///
/// `|f'(x̄)| < 1/|φ'(ȳ)|` is the same condition as `|λ| < 1` whenever
/// `φ'(ȳ) ≠ 0`; when `φ'(ȳ) = 0` the multiplier is zero and the point attracts.
pub fn classify_stability<T: Scalar>(
    system: &ReflexiveSystem<T>,
    x_bar: T,
    y_bar: T,
) -> Result<FixedPoint<T>> {
    let residual_f = (system.eval_f(x_bar)? - y_bar).abs();
    let residual_phi = (system.eval_phi(y_bar)? - x_bar).abs();
    let accept = T::tolerance(FIXED_POINT_TOLERANCE);
    if residual_f > accept || residual_phi > accept {
        return Err(Error::Precondition(format!(
            "({x_bar}, {y_bar}) is not a fixed point: |f(x)-y| = {residual_f:e}, |phi(y)-x| = {residual_phi:e}"
        )));
    }
    let multiplier = system.f().derivative(x_bar)? * system.phi().derivative(y_bar)?;
    Ok(FixedPoint {
        x_bar,
        y_bar,
        residual_f,
        residual_phi,
        multiplier,
        stability: Stability::from_multiplier(multiplier),
    })
}

/// Checks that `x̄` is fixed by `Γ` and `ȳ` by `Φ`.
///
/// The residuals are recomputed from the system rather than read from `fp`,
/// and a pair that is not a fixed point of the system is rejected.
pub fn check_fixed_point_correspondence<T: Scalar>(
    system: &ReflexiveSystem<T>,
    fp: &FixedPoint<T>,
) -> Result<CorrespondenceReport<T>> {
    let accept = T::tolerance(FIXED_POINT_TOLERANCE);
    let rf = (system.eval_f(fp.x_bar)? - fp.y_bar).abs();
    let rp = (system.eval_phi(fp.y_bar)? - fp.x_bar).abs();
    if !(rf <= accept && rp <= accept) {
        return Err(Error::Precondition(format!(
            "({}, {}) is not a fixed point of the system: |f(x)-y| = {rf:e}, |phi(y)-x| = {rp:e}",
            fp.x_bar, fp.y_bar
        )));
    }
    let gamma_residual = (compose_gamma(system).apply(fp.x_bar)? - fp.x_bar).abs();
    let phi_map_residual = (compose_phi_map(system).apply(fp.y_bar)? - fp.y_bar).abs();
    Ok(CorrespondenceReport {
        gamma_residual,
        phi_map_residual,
        holds: gamma_residual <= accept && phi_map_residual <= accept,
    })
}
