use crate::error::{ensure, Result};
use crate::geometry::{sin_cos_deg, Vec3};
use crate::instance::{number_aircraft, Dimension, Instance, Metadata, ScenarioKind, DEFAULT_SAFETY_DISTANCE};
use crate::rng::Stream;

use super::{check_common, DEFAULT_SPEED};

/// How initial points are spread over the sphere (or its sector).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpherePlacement {
    /// Fibonacci spiral lattice; does not consume random draws.
    Lattice,
    /// θ uniform, cos φ uniform.
    Random,
}

impl SpherePlacement {
    pub fn as_str(self) -> &'static str {
        match self {
            SpherePlacement::Lattice => "lattice",
            SpherePlacement::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereParams {
    pub n: usize,
    /// NM.
    pub radius: f64,
    /// Azimuth sector start, degrees from the x-axis.
    pub theta_start: f64,
    /// Azimuth sector width, degrees.
    pub theta_width: f64,
    /// Polar bounds, degrees from the z-axis.
    pub phi_min: f64,
    pub phi_max: f64,
    pub speed: f64,
    /// Half-width of the deviation applied to both heading angles, degrees.
    pub deviation_range: f64,
    pub placement: SpherePlacement,
    pub safety_distance: f64,
    pub seed: u64,
}

impl Default for SphereParams {
    fn default() -> Self {
        SphereParams {
            n: 15,
            radius: 100.0,
            theta_start: 0.0,
            theta_width: 360.0,
            phi_min: 0.0,
            phi_max: 180.0,
            speed: DEFAULT_SPEED,
            deviation_range: 0.0,
            placement: SpherePlacement::Lattice,
            safety_distance: DEFAULT_SAFETY_DISTANCE,
            seed: 0,
        }
    }
}

impl SphereParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.n >= 2, "n", "at least 2 aircraft are required")?;
        ensure(self.radius > 0.0 && self.radius.is_finite(), "radius", "must be positive")?;
        ensure(self.theta_start.is_finite(), "theta_start", "must be finite")?;
        ensure(
            self.theta_width > 0.0 && self.theta_width <= 360.0,
            "theta_width",
            "must lie in (0, 360]",
        )?;
        ensure(
            (0.0..=180.0).contains(&self.phi_min) && (0.0..=180.0).contains(&self.phi_max),
            "phi",
            "polar bounds must lie in [0, 180]",
        )?;
        ensure(self.phi_min < self.phi_max, "phi", "phi_min must be below phi_max")?;
        check_common(self.speed, self.deviation_range, self.safety_distance)
    }
}

/// Aircraft spread over a sphere, all heading for its center.
pub fn gen_sphere(params: &SphereParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = Stream::new(params.seed);
    let cos_hi = sin_cos_deg(params.phi_min).1;
    let cos_lo = sin_cos_deg(params.phi_max).1;
    // fractional part of the golden ratio
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let n = params.n;

    let mut states = Vec::with_capacity(n);
    for k in 0..n {
        let (theta, cos_phi) = match params.placement {
            SpherePlacement::Lattice => {
                let frac = (k as f64 * golden).fract();
                let z = cos_hi - (k as f64 + 0.5) / n as f64 * (cos_hi - cos_lo);
                (params.theta_start + params.theta_width * frac, z)
            }
            SpherePlacement::Random => {
                let theta = params.theta_start + params.theta_width * rng.unit();
                (theta, rng.uniform(cos_lo, cos_hi))
            }
        };
        let sin_phi = (1.0 - cos_phi * cos_phi).max(0.0).sqrt();
        let (st, ct) = sin_cos_deg(theta);
        let r = params.radius;
        let p = Vec3::new(r * sin_phi * ct, r * sin_phi * st, r * cos_phi);

        let phi = cos_phi.clamp(-1.0, 1.0).acos().to_degrees();
        let d_theta = rng.symmetric(params.deviation_range);
        let d_phi = rng.symmetric(params.deviation_range);
        let v = Vec3::from_angles_deg(theta + 180.0 + d_theta, 180.0 - phi + d_phi) * params.speed;
        states.push((p, v));
    }

    let md = Metadata::new(ScenarioKind::Sphere, Some(params.seed))
        .with_param("n", params.n)
        .with_param("radius", params.radius)
        .with_param("theta_start", params.theta_start)
        .with_param("theta_width", params.theta_width)
        .with_param("phi_min", params.phi_min)
        .with_param("phi_max", params.phi_max)
        .with_param("speed", params.speed)
        .with_param("deviation", params.deviation_range)
        .with_param("placement", params.placement.as_str());
    Instance::new(Dimension::ThreeD, number_aircraft(states), params.safety_distance, md)
}
