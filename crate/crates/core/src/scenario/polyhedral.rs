//! Stacked 3D trail layouts: polyhedral and cubic scenarios.
//!
//! Horizontal plane `h` sits at `z = h·plane_sep_h` and carries a rhomboidal
//! layout. Vertical plane `v` is the plane `y = v·plane_sep_v`; its trails
//! run along `(cos β, 0, sin β)` and are spaced like sloped trails.

use std::fmt::Display;

use crate::error::{ensure, Result};
use crate::geometry::{sin_cos_deg, Vec3};
use crate::instance::{number_aircraft, Dimension, Instance, Metadata, ScenarioKind, DEFAULT_SAFETY_DISTANCE};
use crate::rng::Stream;

use super::trails::{check_spacing, PlaneLayout};
use super::{check_common, DEFAULT_SPEED};

#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalPlane {
    /// Degrees.
    pub alpha: f64,
    pub m_x: usize,
    pub m_y: usize,
    pub n_x: usize,
    pub n_y: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerticalPlane {
    /// Angle to the horizontal planes, degrees.
    pub beta: f64,
    pub m_z: usize,
    pub n_z: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralParams {
    pub horizontal: Vec<HorizontalPlane>,
    pub vertical: Vec<VerticalPlane>,
    pub plane_sep_h: f64,
    pub plane_sep_v: f64,
    /// Trail spacing shared by all horizontal planes.
    pub trail_sep_h: f64,
    /// Trail spacing shared by all vertical planes.
    pub trail_sep_v: f64,
    pub aircraft_sep: f64,
    pub speed: f64,
    pub deviation_range: f64,
    pub safety_distance: f64,
    pub seed: u64,
}

impl Default for PolyhedralParams {
    fn default() -> Self {
        PolyhedralParams {
            horizontal: vec![HorizontalPlane { alpha: 120.0, m_x: 3, m_y: 3, n_x: 1, n_y: 1 }; 2],
            vertical: vec![VerticalPlane { beta: 60.0, m_z: 2, n_z: 1 }],
            plane_sep_h: 10.0,
            plane_sep_v: 20.0,
            trail_sep_h: 20.0,
            trail_sep_v: 20.0,
            aircraft_sep: 20.0,
            speed: DEFAULT_SPEED,
            deviation_range: 0.0,
            safety_distance: DEFAULT_SAFETY_DISTANCE,
            seed: 0,
        }
    }
}

impl PolyhedralParams {
    pub fn validate(&self) -> Result<()> {
        ensure(
            !self.horizontal.is_empty() || !self.vertical.is_empty(),
            "planes",
            "at least one horizontal or vertical plane is required",
        )?;
        for h in &self.horizontal {
            ensure(h.alpha > 0.0 && h.alpha < 180.0, "alpha", "must lie in (0, 180)")?;
        }
        for v in &self.vertical {
            ensure(v.beta > 0.0 && v.beta < 180.0, "beta", "must lie in (0, 180)")?;
        }
        ensure(self.n() >= 1, "planes", "the layout contains no aircraft")?;
        ensure(self.plane_sep_h > 0.0 && self.plane_sep_h.is_finite(), "plane_sep_h", "must be positive")?;
        ensure(self.plane_sep_v > 0.0 && self.plane_sep_v.is_finite(), "plane_sep_v", "must be positive")?;
        check_spacing(self.trail_sep_h, self.aircraft_sep)?;
        check_spacing(self.trail_sep_v, self.aircraft_sep)?;
        check_common(self.speed, self.deviation_range, self.safety_distance)
    }

    pub fn n(&self) -> usize {
        let h: usize = self.horizontal.iter().map(|p| p.m_x * p.n_x + p.m_y * p.n_y).sum();
        let v: usize = self.vertical.iter().map(|p| p.m_z * p.n_z).sum();
        h + v
    }
}

fn join<T: Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn generate(params: &PolyhedralParams, kind: ScenarioKind) -> Result<Instance> {
    params.validate()?;
    let mut rng = Stream::new(params.seed);
    let mut states = Vec::with_capacity(params.n());

    for (h, plane) in params.horizontal.iter().enumerate() {
        let z = h as f64 * params.plane_sep_h;
        let layout = PlaneLayout {
            alpha: plane.alpha,
            m_x: plane.m_x,
            m_y: plane.m_y,
            n_x: plane.n_x,
            n_y: plane.n_y,
            trail_sep: params.trail_sep_h,
            aircraft_sep: params.aircraft_sep,
            speed: params.speed,
            deviation_range: params.deviation_range,
        };
        states.extend(
            layout
                .states(&mut rng)
                .into_iter()
                .map(|(p, v)| (Vec3::new(p[0], p[1], z), Vec3::planar(v[0], v[1]))),
        );
    }

    let lead = params.trail_sep_v;
    for (v_idx, plane) in params.vertical.iter().enumerate() {
        let y = v_idx as f64 * params.plane_sep_v;
        let (sin_b, cos_b) = sin_cos_deg(plane.beta);
        for c in 0..plane.m_z {
            let base = c as f64 * params.trail_sep_v / sin_b;
            let lambda0 = -base - lead;
            let (hs, hc) = sin_cos_deg(plane.beta + rng.symmetric(params.deviation_range));
            let vel = Vec3::new(params.speed * hc, 0.0, params.speed * hs);
            for k in 0..plane.n_z {
                let lambda = lambda0 - k as f64 * params.aircraft_sep;
                states.push((Vec3::new(base + lambda * cos_b, y, lambda * sin_b), vel));
            }
        }
    }

    let hp = &params.horizontal;
    let vp = &params.vertical;
    let md = Metadata::new(kind, Some(params.seed))
        .with_param("hp", hp.len())
        .with_param("vp", vp.len())
        .with_param("alpha_h", join(hp.iter().map(|p| p.alpha)))
        .with_param("mx_h", join(hp.iter().map(|p| p.m_x)))
        .with_param("my_h", join(hp.iter().map(|p| p.m_y)))
        .with_param("nx_h", join(hp.iter().map(|p| p.n_x)))
        .with_param("ny_h", join(hp.iter().map(|p| p.n_y)))
        .with_param("beta_v", join(vp.iter().map(|p| p.beta)))
        .with_param("mz_v", join(vp.iter().map(|p| p.m_z)))
        .with_param("nz_v", join(vp.iter().map(|p| p.n_z)))
        .with_param("plane_sep_h", params.plane_sep_h)
        .with_param("plane_sep_v", params.plane_sep_v)
        .with_param("trail_sep_h", params.trail_sep_h)
        .with_param("trail_sep_v", params.trail_sep_v)
        .with_param("aircraft_sep", params.aircraft_sep)
        .with_param("speed", params.speed)
        .with_param("deviation", params.deviation_range);
    Instance::new(Dimension::ThreeD, number_aircraft(states), params.safety_distance, md)
}

pub fn gen_polyhedral(params: &PolyhedralParams) -> Result<Instance> {
    generate(params, ScenarioKind::Polyhedral)
}

/// Polyhedral layout with every α and β forced to 90°.
pub fn gen_cubic(params: &PolyhedralParams) -> Result<Instance> {
    generate(&orthogonal(params), ScenarioKind::Cubic)
}

fn orthogonal(params: &PolyhedralParams) -> PolyhedralParams {
    let mut p = params.clone();
    p.horizontal.iter_mut().for_each(|h| h.alpha = 90.0);
    p.vertical.iter_mut().for_each(|v| v.beta = 90.0);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{gen_rhomboidal, RhomboidalParams};

    #[test]
    fn single_plane_is_rhomboidal() {
        let rp = RhomboidalParams { m_x: 3, m_y: 2, n_x: 2, n_y: 3, alpha: 70.0, deviation_range: 8.0, seed: 5, ..Default::default() };
        let pp = PolyhedralParams {
            horizontal: vec![HorizontalPlane { alpha: 70.0, m_x: 3, m_y: 2, n_x: 2, n_y: 3 }],
            vertical: vec![],
            trail_sep_h: rp.trail_sep,
            aircraft_sep: rp.aircraft_sep,
            deviation_range: 8.0,
            seed: 5,
            ..Default::default()
        };
        let a = gen_polyhedral(&pp).unwrap();
        let b = gen_rhomboidal(&rp).unwrap();
        assert_eq!(a.aircraft, b.aircraft);
        assert_eq!(a.dimension, Dimension::ThreeD);
    }

    #[test]
    fn aircraft_count_matches_closed_form() {
        let pp = PolyhedralParams {
            horizontal: vec![
                HorizontalPlane { alpha: 80.0, m_x: 2, m_y: 3, n_x: 1, n_y: 1 },
                HorizontalPlane { alpha: 100.0, m_x: 4, m_y: 1, n_x: 1, n_y: 1 },
            ],
            vertical: vec![VerticalPlane { beta: 45.0, m_z: 3, n_z: 1 }],
            ..Default::default()
        };
        // (2 + 3) + (4 + 1) + 3
        assert_eq!(gen_polyhedral(&pp).unwrap().n(), 13);
    }

    #[test]
    fn vertical_trails_at_right_angle_follow_z() {
        let pp = PolyhedralParams {
            horizontal: vec![],
            vertical: vec![VerticalPlane { beta: 90.0, m_z: 3, n_z: 2 }],
            ..Default::default()
        };
        for a in &gen_polyhedral(&pp).unwrap().aircraft {
            assert_eq!(a.v_hat, Vec3::new(0.0, 0.0, 480.0));
        }
    }

    #[test]
    fn cubic_velocities_are_axis_aligned() {
        let inst = gen_cubic(&PolyhedralParams::default()).unwrap();
        for a in &inst.aircraft {
            let nonzero = [a.v_hat.x, a.v_hat.y, a.v_hat.z].iter().filter(|c| **c != 0.0).count();
            assert_eq!(nonzero, 1, "{:?}", a.v_hat);
        }
        let forced = gen_polyhedral(&orthogonal(&PolyhedralParams::default())).unwrap();
        assert_eq!(inst.aircraft, forced.aircraft);
        assert_eq!(inst.metadata.scenario, ScenarioKind::Cubic);
    }

    #[test]
    fn rejects_empty_layout() {
        let pp = PolyhedralParams { horizontal: vec![], vertical: vec![], ..Default::default() };
        assert!(gen_polyhedral(&pp).is_err());
        let pp = PolyhedralParams {
            horizontal: vec![HorizontalPlane { alpha: 90.0, m_x: 0, m_y: 0, n_x: 1, n_y: 1 }],
            vertical: vec![],
            ..Default::default()
        };
        assert!(gen_polyhedral(&pp).is_err());
    }
}
