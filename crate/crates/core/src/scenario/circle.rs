use crate::error::{ensure, Result};
use crate::geometry::{sin_cos_deg, Vec3};
use crate::instance::{number_aircraft, Dimension, Instance, Metadata, ScenarioKind, DEFAULT_SAFETY_DISTANCE};
use crate::rng::Stream;

use super::{check_common, DEFAULT_SPEED};

#[derive(Debug, Clone, PartialEq)]
pub struct CircleParams {
    pub n: usize,
    /// NM.
    pub radius: f64,
    /// Degrees.
    pub sector_start: f64,
    /// Degrees; 360 is the standard circle.
    pub sector_width: f64,
    pub speed: f64,
    /// Half-width of the random heading deviation, degrees.
    pub deviation_range: f64,
    pub safety_distance: f64,
    pub seed: u64,
}

impl Default for CircleParams {
    fn default() -> Self {
        CircleParams {
            n: 10,
            radius: 100.0,
            sector_start: 0.0,
            sector_width: 360.0,
            speed: DEFAULT_SPEED,
            deviation_range: 0.0,
            safety_distance: DEFAULT_SAFETY_DISTANCE,
            seed: 0,
        }
    }
}

impl CircleParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.n >= 2, "n", "at least 2 aircraft are required")?;
        ensure(self.radius > 0.0 && self.radius.is_finite(), "radius", "must be positive")?;
        ensure(self.sector_start.is_finite(), "sector_start", "must be finite")?;
        ensure(
            self.sector_width > 0.0 && self.sector_width <= 360.0,
            "sector_width",
            "must lie in (0, 360]",
        )?;
        check_common(self.speed, self.deviation_range, self.safety_distance)
    }
}

/// Aircraft equally spaced on a circular arc, all heading for the center.
pub fn gen_circle(params: &CircleParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = Stream::new(params.seed);
    let step = params.sector_width / params.n as f64;
    let states = (0..params.n).map(|k| {
        let angle = params.sector_start + k as f64 * step;
        let (s, c) = sin_cos_deg(angle);
        let p = Vec3::planar(params.radius * c, params.radius * s);
        let heading = angle + 180.0 + rng.symmetric(params.deviation_range);
        let (hs, hc) = sin_cos_deg(heading);
        (p, Vec3::planar(params.speed * hc, params.speed * hs))
    });
    let aircraft = number_aircraft(states);

    let md = Metadata::new(ScenarioKind::Circle, Some(params.seed))
        .with_param("n", params.n)
        .with_param("radius", params.radius)
        .with_param("sector_start", params.sector_start)
        .with_param("sector_width", params.sector_width)
        .with_param("speed", params.speed)
        .with_param("deviation", params.deviation_range);
    Instance::new(Dimension::TwoD, aircraft, params.safety_distance, md)
}
