use crate::dynamics::Orbit;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_MIN_RUN: usize = 5;
pub const DEFAULT_RETRACE_THRESHOLD: f64 = 0.5;

/// A monotone run followed by a reversal that gives back a large share of it.
///
/// For a boom (rise then fall) `amplitude > 0`; for the mirrored slump
/// (fall then rise) the amplitude is negative and `peak` marks the trough.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoomBustEvent<T> {
    pub rise_start: usize,
    pub peak: usize,
    pub reversal_end: usize,
    pub amplitude: T,
    pub retrace_fraction: T,
}

impl<T: Scalar> BoomBustEvent<T> {
    pub fn is_boom(&self) -> bool {
        self.amplitude > T::zero()
    }
}

#[derive(Debug, Clone, Copy)]
struct Run {
    start: usize,
    end: usize,
    rising: bool,
}

/// Maximal strictly monotone runs; flat steps separate runs.
fn monotone_runs<T: Scalar>(xs: &[T]) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        let rising = match xs[i + 1].partial_cmp(&xs[i]) {
            Some(std::cmp::Ordering::Greater) => true,
            Some(std::cmp::Ordering::Less) => false,
            _ => continue,
        };
        match runs.last_mut() {
            Some(run) if run.end == i && run.rising == rising => run.end = i + 1,
            _ => runs.push(Run {
                start: i,
                end: i + 1,
                rising,
            }),
        }
    }
    runs
}

/// Scans a sequence for runs of at least `min_run` steps whose immediate
/// reversal retraces at least `retrace_threshold` of the run's amplitude.
pub fn boom_bust_events<T: Scalar>(
    xs: &[T],
    min_run: usize,
    retrace_threshold: T,
) -> Result<Vec<BoomBustEvent<T>>> {
    if min_run < 2 {
        return Err(Error::InvalidArgument("min_run must be at least 2".into()));
    }
    if !(retrace_threshold > T::zero() && retrace_threshold <= T::one()) {
        return Err(Error::InvalidArgument(
            "retrace_threshold must lie in (0, 1]".into(),
        ));
    }
    let runs = monotone_runs(xs);
    let mut events = Vec::new();
    for pair in runs.windows(2) {
        let (run, back) = (pair[0], pair[1]);
        if back.start != run.end || back.rising == run.rising || run.end - run.start < min_run {
            continue;
        }
        let amplitude = xs[run.end] - xs[run.start];
        let retrace = xs[run.end] - xs[back.end];
        let fraction = (retrace / amplitude).min(T::one());
        if fraction >= retrace_threshold {
            events.push(BoomBustEvent {
                rise_start: run.start,
                peak: run.end,
                reversal_end: back.end,
                amplitude,
                retrace_fraction: fraction,
            });
        }
    }
    Ok(events)
}

/// [`boom_bust_events`] over the x-sequence of an orbit.
pub fn detect_boom_bust<T: Scalar>(
    orbit: &Orbit<T>,
    min_run: usize,
    retrace_threshold: T,
) -> Result<Vec<BoomBustEvent<T>>> {
    boom_bust_events(&orbit.xs(), min_run, retrace_threshold)
}
