//! Fixtures shared by the generator benchmarks.

use tdgen::congestion::{resolve_congestion_params, CongestionSpec, PseudoRandomConfig, SectorBox};
use tdgen::sweep::{cap_for, requested_conflicts};
use tdgen::Result;

/// Planar pseudo-random request at density `den`, as one sweep cell would build it.
pub fn planar_request(n: usize, den: f64, width: f64, seed: u64) -> Result<PseudoRandomConfig> {
    let n_c = requested_conflicts(n, den);
    let spec = CongestionSpec { n_c: Some(n_c), p_c: None, max_c: Some(cap_for(n, n_c, 1)) };
    let resolved = resolve_congestion_params(n, spec)?;
    Ok(PseudoRandomConfig::new(resolved, SectorBox::square(width, width / 10.0), seed))
}
