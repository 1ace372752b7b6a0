//! Diagnostics built on the engine: how far `φ` is from `f⁻¹`, whether an
//! orbit cycles or returns, whether it booms and busts, and whether a
//! candidate homeomorphism conjugates two maps.

mod boom_bust;
mod conjugacy;
mod inverse;
mod periodic;

pub use boom_bust::{
    boom_bust_events, detect_boom_bust, BoomBustEvent, DEFAULT_MIN_RUN, DEFAULT_RETRACE_THRESHOLD,
};
pub use conjugacy::{
    verify_conjugacy, ConjugacyReport, Verdict, CONJUGACY_TOLERANCE, DEFAULT_CONJUGACY_SAMPLES,
    FIXED_IMAGE_TOLERANCE,
};
pub use inverse::{
    function_distance, invert_numeric, monotone_direction, Direction, DistanceReport,
    MonotoneInverse, DEFAULT_DISTANCE_SAMPLES, INVERSE_TOLERANCE, MONOTONICITY_SAMPLES,
};
pub use periodic::{
    detect_period, detect_recurrence, PeriodReport, PeriodSearch, DEFAULT_BURN_IN,
    DEFAULT_MAX_PERIOD, PERIOD_TOLERANCE,
};
