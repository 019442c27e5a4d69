use proptest::prelude::*;

use tdgen::congestion::{
    gen_pseudorandom_traced, resolve_congestion_params, CongestionSpec, PseudoRandomConfig, SectorBox,
};
use tdgen::geometry::{conflict_interval, cpa};
use tdgen::io::{parse_instance, render_instance};
use tdgen::scenario::{gen_circle, gen_rhomboidal, gen_sphere, CircleParams, RhomboidalParams, SphereParams};
use tdgen::{detect_conflicts, Aircraft, Dimension, Instance, Metadata, ScenarioKind, Vec3};

fn coord() -> impl Strategy<Value = f64> + Clone {
    -300.0..300.0f64
}

fn vel() -> impl Strategy<Value = f64> + Clone {
    -550.0..550.0f64
}

fn vec3(c: impl Strategy<Value = f64> + Clone) -> impl Strategy<Value = Vec3> {
    (c.clone(), c.clone(), c).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn cpa_is_a_lower_bound(pi in vec3(coord()), vi in vec3(vel()), pj in vec3(coord()), vj in vec3(vel()),
                            ts in prop::collection::vec(0.0..20.0f64, 16)) {
        let c = cpa(pi, vi, pj, vj);
        prop_assert!(c.t_cpa >= 0.0);
        let at = |t: f64| ((pi + vi * t) - (pj + vj * t)).norm();
        prop_assert!((at(c.t_cpa) - c.d_min).abs() < 1e-9 * (1.0 + c.d_min));
        for t in ts {
            prop_assert!(at(t) >= c.d_min - 1e-9 * (1.0 + at(t)));
        }
    }

    #[test]
    fn interval_exists_iff_closer_than_threshold(pi in vec3(coord()), vi in vec3(vel()), miss in vec3(-8.0..8.0f64),
                                                 vj in vec3(vel()), tau in 0.0..3.0f64, d in 1.0..10.0f64) {
        // pj chosen so that the pair is `miss` apart at time tau
        let pj = pi + (vi - vj) * tau + miss;
        let c = cpa(pi, vi, pj, vj);
        let w = conflict_interval(pi, vi, pj, vj, d);
        prop_assert_eq!(w.is_some(), c.d_min < d);
        if let Some(w) = w {
            prop_assert!(w.t_enter >= 0.0 && w.t_enter <= c.t_cpa + 1e-12);
            let at = |t: f64| ((pi + vi * t) - (pj + vj * t)).norm();
            let mid = match w.t_exit {
                Some(e) => {
                    prop_assert!(e >= c.t_cpa - 1e-12);
                    (w.t_enter + e) / 2.0
                }
                None => w.t_enter + 1.0,
            };
            prop_assert!(at(mid) < d + 1e-9);
        }
    }

    #[test]
    fn cpa_is_invariant_under_translation_and_boost(pi in vec3(coord()), vi in vec3(vel()), pj in vec3(coord()),
                                                    vj in vec3(vel()), shift in vec3(coord()), boost in vec3(vel())) {
        let base = cpa(pi, vi, pj, vj);
        let moved = cpa(pi + shift, vi, pj + shift, vj);
        let boosted = cpa(pi, vi + boost, pj, vj + boost);
        let scale = (pi - pj).norm() + shift.norm();
        prop_assert!(close(base.d_min, moved.d_min, scale));
        prop_assert!(close(base.t_cpa, moved.t_cpa, base.t_cpa + scale / (vi - vj).norm().max(1e-3)));
        prop_assert!(close(base.d_min, boosted.d_min, scale));
        prop_assert!(close(base.t_cpa, boosted.t_cpa, base.t_cpa + 1.0));
    }

    #[test]
    fn cpa_is_symmetric(pi in vec3(coord()), vi in vec3(vel()), pj in vec3(coord()), vj in vec3(vel()), d in 1.0..20.0f64) {
        prop_assert_eq!(cpa(pi, vi, pj, vj), cpa(pj, vj, pi, vi));
        prop_assert_eq!(conflict_interval(pi, vi, pj, vj, d), conflict_interval(pj, vj, pi, vi, d));
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), dev in 0.0..20.0f64, n in 2usize..30) {
        let c = CircleParams { n, deviation_range: dev, seed, ..Default::default() };
        prop_assert_eq!(gen_circle(&c).unwrap(), gen_circle(&c).unwrap());
        let s = SphereParams { n, deviation_range: dev, seed, ..Default::default() };
        prop_assert_eq!(gen_sphere(&s).unwrap(), gen_sphere(&s).unwrap());
        let r = RhomboidalParams { deviation_range: dev, seed, ..Default::default() };
        prop_assert_eq!(gen_rhomboidal(&r).unwrap(), gen_rhomboidal(&r).unwrap());
    }

    #[test]
    fn instance_text_round_trip(states in prop::collection::vec((vec3(coord()), vec3(vel())), 1..20),
                                planar in any::<bool>(), seed in any::<u64>(), d in 0.5..20.0f64) {
        let aircraft: Vec<Aircraft> = states
            .into_iter()
            .enumerate()
            .map(|(id, (p, v))| {
                let (p, v) = if planar { (Vec3::new(p.x, p.y, 0.0), Vec3::new(v.x, v.y, 0.0)) } else { (p, v) };
                // keep speeds away from zero
                Aircraft { id, p_hat: p, v_hat: v + Vec3::new(600.0, 0.0, 0.0) }
            })
            .collect();
        let dim = if planar { Dimension::TwoD } else { Dimension::ThreeD };
        let md = Metadata::new(ScenarioKind::Custom, Some(seed)).with_param("note", "property");
        let inst = Instance::new(dim, aircraft, d, md).unwrap();
        prop_assert_eq!(parse_instance(&render_instance(&inst)).unwrap(), inst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolved_congestion_respects_bounds(n in 2usize..60, nc in prop::option::of(0usize..200),
                                           pc in prop::option::of(0.0..=1.0f64), maxc in prop::option::of(1usize..60)) {
        let maxc = maxc.map(|m| m.min(n - 1));
        let nc = nc.map(|k| k.min(n * (n - 1) / 2));
        if let Ok(r) = resolve_congestion_params(n, CongestionSpec { n_c: nc, p_c: pc, max_c: maxc }) {
            prop_assert!((0.0..=1.0).contains(&r.p_c));
            prop_assert!(r.max_c >= 1 && r.max_c < n);
            prop_assert!(r.n_c as f64 <= n as f64 * r.max_c as f64 / 2.0);
        }
    }

    #[test]
    fn pseudorandom_bookkeeping(n in 2usize..25, den in 0.0..0.3f64, extra in 0usize..3, width in 120.0..300.0f64,
                                seed in any::<u64>(), three_d in any::<bool>()) {
        let pairs = n * (n - 1) / 2;
        let nc = ((den * pairs as f64).round() as usize).min(pairs);
        let maxc = ((4 * nc).div_ceil(n) + extra).clamp(1, n - 1);
        let resolved = match resolve_congestion_params(n, CongestionSpec { n_c: Some(nc), p_c: None, max_c: Some(maxc) }) {
            Ok(r) => r,
            Err(_) => return Ok(()),
        };
        let sector = if three_d { SectorBox::cube(width / 2.0, width / 20.0) } else { SectorBox::square(width, width / 10.0) };
        let mut cfg = PseudoRandomConfig::new(resolved, sector, seed);
        cfg.max_trials = 300;
        let (inst, trace) = gen_pseudorandom_traced(&cfg).unwrap();
        let recount = detect_conflicts(&inst).len();
        prop_assert_eq!(trace.total_conf, recount);
        prop_assert_eq!(inst.metadata.achieved_conflicts, Some(recount));
        for step in &trace.steps {
            prop_assert!((0.0..=1.0).contains(&step.p_c_after));
            prop_assert!(step.accepted_conflicts <= step.max_conf || step.escalated);
        }
        for a in &inst.aircraft {
            prop_assert!(cfg.sector.contains(a.p_hat));
            let s = a.speed();
            prop_assert!((400.0 * (1.0 - 1e-12)..=500.0 * (1.0 + 1e-12)).contains(&s));
            if !three_d {
                prop_assert_eq!(a.v_hat.z, 0.0);
            }
        }
    }
}
