//! Fully random instances inside the air sector, without congestion control.

use crate::error::{ensure, Result};
use crate::geometry::{sin_cos_deg, Vec3};
use crate::instance::{number_aircraft, Dimension, Instance, Metadata, ScenarioKind, DEFAULT_SAFETY_DISTANCE};
use crate::rng::Stream;

use super::placement::{SectorBox, SpeedRange};

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    /// The margin is not used.
    pub sector: SectorBox,
    pub speed: SpeedRange,
    /// Heading bounds from the x-axis, degrees.
    pub theta_range: [f64; 2],
    /// Heading bounds from the z-axis, degrees; ignored in 2D.
    pub phi_range: [f64; 2],
    pub safety_distance: f64,
    pub seed: u64,
}

impl RandomParams {
    pub fn new(n: usize, sector: SectorBox, seed: u64) -> Self {
        RandomParams {
            n,
            sector,
            speed: SpeedRange::default(),
            theta_range: [0.0, 360.0],
            phi_range: [0.0, 180.0],
            safety_distance: DEFAULT_SAFETY_DISTANCE,
            seed,
        }
    }
}

/// Positions uniform in the sector, directions uniform over the heading
/// ranges (uniform on the sphere patch in 3D) and speeds uniform in range.
pub fn gen_random(params: &RandomParams) -> Result<Instance> {
    let s = &params.sector;
    ensure(params.n >= 1, "n", "at least one aircraft is required")?;
    SectorBox { margin: 0.0, ..*s }.validate()?;
    params.speed.validate()?;
    let [t0, t1] = params.theta_range;
    let [p0, p1] = params.phi_range;
    ensure(t0 <= t1 && t0.is_finite() && t1.is_finite(), "theta_range", "needs finite min <= max")?;
    ensure(
        (0.0..=180.0).contains(&p0) && (0.0..=180.0).contains(&p1) && p0 <= p1,
        "phi_range",
        "needs 0 <= min <= max <= 180",
    )?;
    ensure(
        params.safety_distance > 0.0 && params.safety_distance.is_finite(),
        "safety_distance",
        "must be positive",
    )?;

    let dim = s.dimension();
    let mut rng = Stream::new(params.seed);
    let (cos_hi, cos_lo) = (sin_cos_deg(p0).1, sin_cos_deg(p1).1);
    let states = (0..params.n)
        .map(|_| {
            let x = rng.uniform(0.0, s.width_x);
            let y = rng.uniform(0.0, s.width_y);
            let z = s.width_z.map_or(0.0, |wz| rng.uniform(0.0, wz));
            let speed = rng.uniform(params.speed.min, params.speed.max);
            let theta = rng.uniform(t0, t1);
            let dir = match dim {
                Dimension::TwoD => Vec3::from_angles_deg(theta, 90.0),
                Dimension::ThreeD => {
                    let cos_phi = rng.uniform(cos_lo, cos_hi);
                    let sin_phi = (1.0 - cos_phi * cos_phi).max(0.0).sqrt();
                    let (st, ct) = sin_cos_deg(theta);
                    Vec3::new(ct * sin_phi, st * sin_phi, cos_phi)
                }
            };
            (Vec3::new(x, y, z), dir * speed)
        })
        .collect::<Vec<_>>();

    let mut md = Metadata::new(ScenarioKind::Random, Some(params.seed))
        .with_param("n", params.n)
        .with_param("width_x", s.width_x)
        .with_param("width_y", s.width_y);
    if let Some(wz) = s.width_z {
        md = md.with_param("width_z", wz);
    }
    md = md
        .with_param("vmin", params.speed.min)
        .with_param("vmax", params.speed.max)
        .with_param("theta_min", t0)
        .with_param("theta_max", t1)
        .with_param("phi_min", p0)
        .with_param("phi_max", p1);
    Instance::new(dim, number_aircraft(states), params.safety_distance, md)
}
