//! Congestion-targeted trajectory generation.
//!
//! Aircraft receive their velocities one at a time in random order. Each
//! draws a target number of conflicts with the aircraft already processed
//! and velocities are resampled until the target is met, falling back to
//! other targets and finally to escalating ones.

use crate::conflict::in_conflict;
use crate::error::{ensure, Error, Result};
use crate::geometry::{relative_cpa, Vec3};
use crate::instance::{Aircraft, Instance, Metadata, ScenarioKind, DEFAULT_SAFETY_DISTANCE};
use crate::rng::Stream;

use super::params::ResolvedCongestion;
use super::placement::{place_with, BorderConfig, PlacementSlot, SectorBox, SpeedRange};

pub const DEFAULT_MAX_TRIALS: usize = 2500;

#[derive(Debug, Clone, PartialEq)]
pub struct PseudoRandomConfig {
    pub congestion: ResolvedCongestion,
    pub sector: SectorBox,
    pub borders: BorderConfig,
    pub speed: SpeedRange,
    pub max_trials: usize,
    pub safety_distance: f64,
    /// Minimum distance between initial positions, NM.
    pub min_spacing: f64,
    pub seed: u64,
}

impl PseudoRandomConfig {
    pub fn new(congestion: ResolvedCongestion, sector: SectorBox, seed: u64) -> Self {
        PseudoRandomConfig {
            congestion,
            sector,
            borders: BorderConfig::All,
            speed: SpeedRange::default(),
            max_trials: DEFAULT_MAX_TRIALS,
            safety_distance: DEFAULT_SAFETY_DISTANCE,
            min_spacing: DEFAULT_SAFETY_DISTANCE,
            seed,
        }
    }
}

/// What happened while processing one aircraft.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub aircraft: usize,
    /// Number of aircraft explored before this one.
    pub explored_before: usize,
    /// Cap on this aircraft's target: `min(max_c, explored, remaining)`.
    pub max_conf: usize,
    /// First target drawn for this aircraft.
    pub initial_target: usize,
    /// Conflicts with explored aircraft of the accepted velocity.
    pub accepted_conflicts: usize,
    /// Accepted count lies above `max_conf` (escalation path).
    pub escalated: bool,
    /// No tried target was met; the closest candidate was kept.
    pub unmet: bool,
    /// Conflict probability after the update that follows acceptance.
    pub p_c_after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub steps: Vec<StepRecord>,
    pub total_conf: usize,
}

/// Number of explored aircraft `j != i` in conflict with `i`.
pub fn count_conf(i: usize, explored: &[usize], instance: &Instance) -> Result<usize> {
    let find = |id: usize| instance.aircraft_by_id(id).ok_or(Error::UnknownAircraft(id));
    let a = find(i)?;
    let mut count = 0;
    for &j in explored {
        let b = find(j)?;
        if j != i && in_conflict(a, b, instance.safety_distance) {
            count += 1;
        }
    }
    Ok(count)
}

pub fn gen_pseudorandom(config: &PseudoRandomConfig) -> Result<Instance> {
    gen_pseudorandom_traced(config).map(|(inst, _)| inst)
}

struct State<'a> {
    slots: &'a [PlacementSlot],
    velocities: Vec<Vec3>,
    explored: Vec<usize>,
    d: f64,
}

impl State<'_> {
    fn conflicts_with_explored(&self, i: usize, v: Vec3) -> usize {
        let p = self.slots[i].p_hat;
        self.explored
            .iter()
            .filter(|&&j| relative_cpa(p - self.slots[j].p_hat, v - self.velocities[j]).d_min < self.d)
            .count()
    }
}

pub fn gen_pseudorandom_traced(config: &PseudoRandomConfig) -> Result<(Instance, Trace)> {
    let cong = &config.congestion;
    ensure(config.max_trials >= 1, "max_trials", "must be at least 1")?;
    ensure(
        config.safety_distance > 0.0 && config.safety_distance.is_finite(),
        "safety_distance",
        "must be positive",
    )?;
    let n = cong.n;
    let n_c = cong.n_c;
    let max_c = cong.max_c;
    let mut p_c = cong.p_c;
    let mut rng = Stream::new(config.seed);

    let slots = place_with(n, &config.sector, config.borders, config.speed, config.min_spacing, &mut rng)?;
    let mut st = State {
        slots: &slots,
        velocities: vec![Vec3::ZERO; n],
        explored: Vec::with_capacity(n),
        d: config.safety_distance,
    };
    let mut unexplored: Vec<usize> = (0..n).collect();
    let mut total_conf = 0usize;
    let mut steps = Vec::with_capacity(n);

    while st.explored.len() < n {
        let n_explored = st.explored.len();
        let i = unexplored.remove(rng.index(unexplored.len()));
        let mut candidate = slots[i].draw_velocity(&mut rng);
        let remaining = n_c.saturating_sub(total_conf);
        let max_conf = max_c.min(n_explored).min(remaining);
        let mut target = 0;
        if n_explored != 0 {
            let needed = (remaining as f64 / ((max_c as f64 + 1.0) / 2.0)).ceil();
            if needed >= (n - n_explored) as f64 {
                target = max_conf;
            } else if rng.bernoulli(p_c) && max_conf >= 1 {
                target = rng.int_inclusive(1, max_conf);
            }
        }
        let initial_target = target;

        let mut tried = vec![false; max_conf + 1];
        let mut targets_tried = 0usize;
        let mut count = st.conflicts_with_explored(i, candidate);
        let mut best = (candidate, count);
        let mut unmet = false;
        loop {
            let mut trials = 0;
            while trials < config.max_trials && count != target {
                candidate = slots[i].draw_velocity(&mut rng);
                count = st.conflicts_with_explored(i, candidate);
                if count.abs_diff(initial_target) < best.1.abs_diff(initial_target) {
                    best = (candidate, count);
                }
                trials += 1;
            }
            if count == target {
                break;
            }
            targets_tried += 1;
            if target <= max_conf {
                tried[target] = true;
            }
            if targets_tried > max_conf {
                // escalation; more conflicts than explored aircraft is impossible
                if targets_tried > n_explored {
                    (candidate, count) = best;
                    unmet = true;
                    break;
                }
                target = targets_tried;
            } else {
                let untried: Vec<usize> = (0..=max_conf).filter(|t| !tried[*t]).collect();
                target = untried[rng.index(untried.len())];
            }
        }

        st.velocities[i] = candidate;
        total_conf += count;
        st.explored.push(i);
        let n_explored = st.explored.len();
        if n_explored != n {
            let raw = 4.0 * (n_c as f64 - total_conf as f64) / ((n - n_explored) as f64 * (1.0 + max_c as f64));
            p_c = raw.clamp(0.0, 1.0);
        }
        if unmet {
            log::debug!("aircraft {i}: no target met, kept {count} conflicts (wanted {initial_target})");
        }
        steps.push(StepRecord {
            aircraft: i,
            explored_before: n_explored - 1,
            max_conf,
            initial_target,
            accepted_conflicts: count,
            escalated: count > max_conf,
            unmet,
            p_c_after: p_c,
        });
    }

    let aircraft: Vec<Aircraft> = slots
        .iter()
        .zip(&st.velocities)
        .enumerate()
        .map(|(id, (slot, &v_hat))| Aircraft { id, p_hat: slot.p_hat, v_hat })
        .collect();

    let sector = &config.sector;
    let mut md = Metadata::new(ScenarioKind::PseudoRandom, Some(config.seed))
        .with_param("n", n)
        .with_param("nc", n_c)
        .with_param("pc", cong.p_c)
        .with_param("maxc", max_c)
        .with_param("width_x", sector.width_x)
        .with_param("width_y", sector.width_y);
    if let Some(wz) = sector.width_z {
        md = md.with_param("width_z", wz);
    }
    md = md
        .with_param("margin", sector.margin)
        .with_param("borders", config.borders)
        .with_param("vmin", config.speed.min)
        .with_param("vmax", config.speed.max)
        .with_param("max_trials", config.max_trials)
        .with_param("min_spacing", config.min_spacing);
    md.requested_conflicts = Some(n_c);
    md.achieved_conflicts = Some(total_conf);
    md.escalations = Some(steps.iter().filter(|s| s.escalated).count());
    md.unmet_targets = Some(steps.iter().filter(|s| s.unmet).count());
    if total_conf != n_c {
        log::info!("requested {n_c} conflicts, generated {total_conf}");
    }

    let instance = Instance::new(sector.dimension(), aircraft, config.safety_distance, md)?;
    Ok((instance, Trace { steps, total_conf }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::detect_conflicts;
    use crate::congestion::params::{resolve_congestion_params, CongestionSpec};

    fn config(n: usize, n_c: usize, max_c: usize, width: f64, seed: u64) -> PseudoRandomConfig {
        let partial = CongestionSpec { n_c: Some(n_c), p_c: None, max_c: Some(max_c) };
        let resolved = resolve_congestion_params(n, partial).unwrap();
        PseudoRandomConfig::new(resolved, SectorBox::square(width, width / 10.0), seed)
    }

    #[test]
    fn bookkeeping_matches_recount() {
        for seed in 0..10 {
            let (inst, trace) = gen_pseudorandom_traced(&config(15, 10, 3, 150.0, seed)).unwrap();
            let recount = detect_conflicts(&inst).len();
            assert_eq!(trace.total_conf, recount);
            assert_eq!(inst.metadata.achieved_conflicts, Some(recount));
            let summed: usize = trace.steps.iter().map(|s| s.accepted_conflicts).sum();
            assert_eq!(summed, trace.total_conf);
        }
    }

    #[test]
    fn step_bounds_hold() {
        let (_, trace) = gen_pseudorandom_traced(&config(20, 19, 4, 150.0, 3)).unwrap();
        let mut total = 0;
        for s in &trace.steps {
            assert!(s.max_conf <= 4 && s.max_conf <= s.explored_before);
            assert!(s.accepted_conflicts <= s.max_conf || s.escalated);
            assert!((0.0..=1.0).contains(&s.p_c_after));
            total += s.accepted_conflicts;
            if total >= 19 && s.explored_before + 1 < 20 {
                assert_eq!(s.p_c_after, 0.0);
            }
        }
    }

    #[test]
    fn zero_target_gives_conflict_free_instance() {
        for seed in 0..10 {
            let inst = gen_pseudorandom(&config(12, 0, 3, 200.0, seed)).unwrap();
            // pairs placed closer than D are in conflict whatever their velocities
            for c in detect_conflicts(&inst) {
                let gap = (inst.aircraft[c.i].p_hat - inst.aircraft[c.j].p_hat).norm();
                assert!(gap < inst.safety_distance, "avoidable conflict {c:?}");
            }
        }
    }

    #[test]
    fn velocities_respect_slot_ranges() {
        let cfg = config(20, 10, 3, 150.0, 9);
        let inst = gen_pseudorandom(&cfg).unwrap();
        for a in &inst.aircraft {
            let s = a.speed();
            assert!((400.0..=500.0).contains(&s));
            assert_eq!(a.v_hat.z, 0.0);
            assert!(cfg.sector.contains(a.p_hat));
        }
    }

    #[test]
    fn count_conf_handshake() {
        let inst = gen_pseudorandom(&config(12, 8, 3, 120.0, 5)).unwrap();
        let all: Vec<usize> = (0..12).collect();
        let sum: usize = (0..12).map(|i| count_conf(i, &all, &inst).unwrap()).sum();
        assert_eq!(sum, 2 * detect_conflicts(&inst).len());
        assert_eq!(count_conf(0, &[], &inst).unwrap(), 0);
        assert!(matches!(count_conf(40, &all, &inst), Err(Error::UnknownAircraft(40))));
    }
}
