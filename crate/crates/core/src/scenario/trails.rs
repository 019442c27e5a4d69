//! Crossing-trail layouts: rhomboidal and grid scenarios.
//!
//! Horizontal trail `a` lies on `y = a·trail_sep`. Sloped trail `b` has
//! direction `(cos α, sin α)` and crosses the x-axis at `b·trail_sep / sin α`,
//! so parallel trails are `trail_sep` apart. Lead aircraft are placed so that
//! every lead reaches each of its intersections at the same time as the lead
//! of the crossing trail; the k-th aircraft of every trail follows
//! `k·aircraft_sep` behind its lead. With equal speeds the k-th aircraft of
//! two crossing trails therefore meet exactly at their intersection.

use crate::error::{ensure, Result};
use crate::geometry::{sin_cos_deg, Vec3};
use crate::instance::{number_aircraft, Dimension, Instance, Metadata, ScenarioKind, DEFAULT_SAFETY_DISTANCE};
use crate::rng::Stream;

use super::{check_common, DEFAULT_SPEED};

#[derive(Debug, Clone, PartialEq)]
pub struct RhomboidalParams {
    /// Number of horizontal trails.
    pub m_x: usize,
    /// Number of sloped trails.
    pub m_y: usize,
    /// Aircraft per horizontal trail.
    pub n_x: usize,
    /// Aircraft per sloped trail.
    pub n_y: usize,
    /// Slope of the sloped trails, degrees.
    pub alpha: f64,
    /// NM between parallel trails.
    pub trail_sep: f64,
    /// NM between consecutive aircraft on a trail.
    pub aircraft_sep: f64,
    pub speed: f64,
    /// Half-width of the per-trail heading deviation, degrees.
    pub deviation_range: f64,
    pub safety_distance: f64,
    pub seed: u64,
}

impl Default for RhomboidalParams {
    fn default() -> Self {
        RhomboidalParams {
            m_x: 5,
            m_y: 5,
            n_x: 1,
            n_y: 1,
            alpha: 120.0,
            trail_sep: 20.0,
            aircraft_sep: 20.0,
            speed: DEFAULT_SPEED,
            deviation_range: 0.0,
            safety_distance: DEFAULT_SAFETY_DISTANCE,
            seed: 0,
        }
    }
}

impl RhomboidalParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.m_x >= 1 && self.m_y >= 1, "m", "trail counts must be at least 1")?;
        ensure(self.n_x >= 1 && self.n_y >= 1, "n", "aircraft per trail must be at least 1")?;
        ensure(self.alpha > 0.0 && self.alpha < 180.0, "alpha", "must lie in (0, 180)")?;
        check_common(self.speed, self.deviation_range, self.safety_distance)?;
        check_spacing(self.trail_sep, self.aircraft_sep)
    }

    pub fn n(&self) -> usize {
        self.m_x * self.n_x + self.m_y * self.n_y
    }
}

pub(crate) fn check_spacing(trail_sep: f64, aircraft_sep: f64) -> Result<()> {
    ensure(trail_sep > 0.0 && trail_sep.is_finite(), "trail_sep", "must be positive")?;
    ensure(aircraft_sep > 0.0 && aircraft_sep.is_finite(), "aircraft_sep", "must be positive")
}

/// Trail layout of one plane, independent of how it is embedded in space.
pub(crate) struct PlaneLayout {
    pub alpha: f64,
    pub m_x: usize,
    pub m_y: usize,
    pub n_x: usize,
    pub n_y: usize,
    pub trail_sep: f64,
    pub aircraft_sep: f64,
    pub speed: f64,
    pub deviation_range: f64,
}

impl PlaneLayout {
    /// In-plane `(position, velocity)` pairs, horizontal trails first. One
    /// deviation draw per trail, horizontal trails first.
    pub fn states(&self, rng: &mut Stream) -> Vec<([f64; 2], [f64; 2])> {
        let (sin_a, cos_a) = sin_cos_deg(self.alpha);
        let t = self.trail_sep;
        let s = self.aircraft_sep;
        let lead = self.trail_sep;
        let mut out = Vec::with_capacity(self.m_x * self.n_x + self.m_y * self.n_y);

        for a in 0..self.m_x {
            let a = a as f64;
            let x0 = a * t * (cos_a - 1.0) / sin_a - lead;
            let (hs, hc) = sin_cos_deg(rng.symmetric(self.deviation_range));
            let v = [self.speed * hc, self.speed * hs];
            for k in 0..self.n_x {
                out.push(([x0 - k as f64 * s, a * t], v));
            }
        }
        for b in 0..self.m_y {
            let b = b as f64;
            let base = b * t / sin_a;
            let lambda0 = -base - lead;
            let (hs, hc) = sin_cos_deg(self.alpha + rng.symmetric(self.deviation_range));
            let v = [self.speed * hc, self.speed * hs];
            for k in 0..self.n_y {
                let lambda = lambda0 - k as f64 * s;
                out.push(([base + lambda * cos_a, lambda * sin_a], v));
            }
        }
        out
    }
}

fn generate(params: &RhomboidalParams, kind: ScenarioKind) -> Result<Instance> {
    params.validate()?;
    let mut rng = Stream::new(params.seed);
    let layout = PlaneLayout {
        alpha: params.alpha,
        m_x: params.m_x,
        m_y: params.m_y,
        n_x: params.n_x,
        n_y: params.n_y,
        trail_sep: params.trail_sep,
        aircraft_sep: params.aircraft_sep,
        speed: params.speed,
        deviation_range: params.deviation_range,
    };
    let states = layout
        .states(&mut rng)
        .into_iter()
        .map(|(p, v)| (Vec3::planar(p[0], p[1]), Vec3::planar(v[0], v[1])));

    let md = Metadata::new(kind, Some(params.seed))
        .with_param("mx", params.m_x)
        .with_param("my", params.m_y)
        .with_param("nx", params.n_x)
        .with_param("ny", params.n_y)
        .with_param("alpha", params.alpha)
        .with_param("trail_sep", params.trail_sep)
        .with_param("aircraft_sep", params.aircraft_sep)
        .with_param("speed", params.speed)
        .with_param("deviation", params.deviation_range);
    Instance::new(Dimension::TwoD, number_aircraft(states), params.safety_distance, md)
}

pub fn gen_rhomboidal(params: &RhomboidalParams) -> Result<Instance> {
    generate(params, ScenarioKind::Rhomboidal)
}

/// Rhomboidal layout with orthogonal trails; `alpha` is ignored.
pub fn gen_grid(params: &RhomboidalParams) -> Result<Instance> {
    generate(&RhomboidalParams { alpha: 90.0, ..params.clone() }, ScenarioKind::Grid)
}
