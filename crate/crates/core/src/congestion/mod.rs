//! Random and congestion-controlled pseudo-random instances.

mod params;
mod placement;
mod pseudorandom;
mod random;

pub use params::{
    expected_conflicts, resolve_congestion_params, round_count, CongestionSpec, CongestionWarning,
    ResolvedCongestion, DEFAULT_PC,
};
pub use placement::{place_initial_positions, Border, BorderConfig, PlacementSlot, SectorBox, SpeedRange};
pub use pseudorandom::{
    count_conf, gen_pseudorandom, gen_pseudorandom_traced, PseudoRandomConfig, StepRecord, Trace,
    DEFAULT_MAX_TRIALS,
};
pub use random::{gen_random, RandomParams};

/// Placement band used when no margin is given: a tenth of the smallest width.
pub fn default_margin(width: f64) -> f64 {
    width / 10.0
}
