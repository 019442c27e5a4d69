//! Pairwise conflict detection.

use crate::geometry::{relative_conflict_interval, relative_cpa};
use crate::instance::{Aircraft, Instance};

/// A pair of aircraft whose future separation drops below the safety distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConflict {
    pub i: usize,
    pub j: usize,
    /// Hours.
    pub t_cpa: f64,
    /// NM, strictly below the safety distance.
    pub d_min: f64,
    /// Hours.
    pub t_enter: f64,
    /// Hours; `None` when the pair never separates.
    pub t_exit: Option<f64>,
}

impl PairConflict {
    /// Conflict duration in minutes, `None` when unbounded.
    pub fn duration(&self) -> Option<f64> {
        self.t_exit.map(|exit| (exit - self.t_enter) * 60.0)
    }

    pub fn is_unbounded(&self) -> bool {
        self.t_exit.is_none()
    }
}

/// Evaluates a single pair; `None` when it is conflict-free.
pub fn pair_conflict(a: &Aircraft, b: &Aircraft, safety_distance: f64) -> Option<PairConflict> {
    let (first, second) = if a.id <= b.id { (a, b) } else { (b, a) };
    let dp = first.p_hat - second.p_hat;
    let dv = first.v_hat - second.v_hat;
    let window = relative_conflict_interval(dp, dv, safety_distance)?;
    let closest = relative_cpa(dp, dv);
    Some(PairConflict {
        i: first.id,
        j: second.id,
        t_cpa: closest.t_cpa,
        d_min: closest.d_min,
        t_enter: window.t_enter,
        t_exit: window.t_exit,
    })
}

/// Whether two aircraft violate the safety distance at some `t >= 0`.
pub fn in_conflict(a: &Aircraft, b: &Aircraft, safety_distance: f64) -> bool {
    relative_cpa(a.p_hat - b.p_hat, a.v_hat - b.v_hat).d_min < safety_distance
}

/// All conflicting pairs, sorted by `(i, j)`.
pub fn detect_conflicts(instance: &Instance) -> Vec<PairConflict> {
    let d = instance.safety_distance;
    let ac = &instance.aircraft;
    let mut out: Vec<PairConflict> = ac
        .iter()
        .enumerate()
        .flat_map(|(k, a)| ac[k + 1..].iter().filter_map(move |b| pair_conflict(a, b, d)))
        .collect();
    out.sort_by_key(|c| (c.i, c.j));
    out
}
