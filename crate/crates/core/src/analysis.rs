//! Instance complexity indicators: conflict count, density, minimal
//! separation and conflict duration.

use crate::conflict::{detect_conflicts, PairConflict};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityReport {
    pub n: usize,
    pub n_conflicts: usize,
    /// `n_conflicts / (n(n-1)/2)`, zero for a single aircraft.
    pub density: f64,
    pub conflicts: Vec<PairConflict>,
    /// NM, mean `d_min` over conflicting pairs.
    pub mean_min_separation: Option<f64>,
    /// Minutes, mean over conflicting pairs with a bounded window.
    pub mean_duration: Option<f64>,
    /// Pairs that stay in conflict forever; excluded from `mean_duration`.
    pub unbounded_conflicts: usize,
    pub requested_n_c: Option<usize>,
    /// `|n_c - n'_c| / n_c` as a ratio.
    pub relative_difference: Option<f64>,
}

impl ComplexityReport {
    pub fn is_conflict_free(&self) -> bool {
        self.n_conflicts == 0
    }
}

pub fn analyze(instance: &Instance) -> ComplexityReport {
    report_from(instance.n(), detect_conflicts(instance), instance.metadata.requested_conflicts)
}

pub(crate) fn report_from(n: usize, conflicts: Vec<PairConflict>, requested_n_c: Option<usize>) -> ComplexityReport {
    let pairs = n * n.saturating_sub(1) / 2;
    let n_conflicts = conflicts.len();
    let density = if pairs == 0 { 0.0 } else { n_conflicts as f64 / pairs as f64 };
    let mean_min_separation = mean(conflicts.iter().map(|c| c.d_min));
    let mean_duration = mean(conflicts.iter().filter_map(|c| c.duration()));
    let unbounded_conflicts = conflicts.iter().filter(|c| c.is_unbounded()).count();
    let relative_difference = requested_n_c
        .filter(|&r| r > 0)
        .map(|r| (r as f64 - n_conflicts as f64).abs() / r as f64);
    ComplexityReport {
        n,
        n_conflicts,
        density,
        conflicts,
        mean_min_separation,
        mean_duration,
        unbounded_conflicts,
        requested_n_c,
        relative_difference,
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec3;
    use crate::instance::{number_aircraft, Dimension, Metadata, ScenarioKind};
    use crate::scenario::{gen_circle, CircleParams};

    #[test]
    fn circle_is_fully_dense() {
        let r = analyze(&gen_circle(&CircleParams::default()).unwrap());
        assert_eq!(r.n_conflicts, 45);
        assert_eq!(r.density, 1.0);
        assert!(r.mean_min_separation.unwrap() < 1e-9);
        assert!(r.relative_difference.is_none());
    }

    #[test]
    fn clear_instance_has_no_means() {
        let aircraft = number_aircraft([
            (Vec3::ZERO, Vec3::planar(400.0, 0.0)),
            (Vec3::planar(0.0, 50.0), Vec3::planar(400.0, 0.0)),
        ]);
        let inst = Instance::new(Dimension::TwoD, aircraft, 5.0, Metadata::new(ScenarioKind::Custom, None)).unwrap();
        let r = analyze(&inst);
        assert_eq!((r.n_conflicts, r.density), (0, 0.0));
        assert!(r.mean_min_separation.is_none() && r.mean_duration.is_none());
    }

    #[test]
    fn unbounded_pairs_are_flagged_not_averaged() {
        let v = Vec3::planar(400.0, 0.0);
        let aircraft = number_aircraft([
            (Vec3::ZERO, v),
            (Vec3::planar(0.0, 3.0), v),
            (Vec3::planar(100.0, 1.0), Vec3::planar(-400.0, 0.0)),
        ]);
        let mut md = Metadata::new(ScenarioKind::Custom, None);
        md.requested_conflicts = Some(4);
        let inst = Instance::new(Dimension::TwoD, aircraft, 5.0, md).unwrap();
        let r = analyze(&inst);
        assert_eq!(r.n_conflicts, 3);
        assert_eq!(r.unbounded_conflicts, 1);
        let bounded: Vec<f64> = r.conflicts.iter().filter_map(|c| c.duration()).collect();
        assert_eq!(bounded.len(), 2);
        assert!((r.mean_duration.unwrap() - (bounded[0] + bounded[1]) / 2.0).abs() < 1e-12);
        assert_eq!(r.relative_difference, Some(0.25));
    }

    #[test]
    fn single_aircraft_density_is_zero() {
        let aircraft = number_aircraft([(Vec3::ZERO, Vec3::planar(1.0, 0.0))]);
        let inst = Instance::new(Dimension::TwoD, aircraft, 5.0, Metadata::new(ScenarioKind::Custom, None)).unwrap();
        assert_eq!(analyze(&inst).density, 0.0);
    }
}
