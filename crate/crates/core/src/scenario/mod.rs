//! Predefined scenario families and their random-deviation variants.
//!
//! All angles are given in degrees. Speeds default to 480 kt.

mod circle;
mod polyhedral;
mod sphere;
mod trails;

pub use circle::{gen_circle, CircleParams};
pub use polyhedral::{gen_cubic, gen_polyhedral, HorizontalPlane, PolyhedralParams, VerticalPlane};
pub use sphere::{gen_sphere, SphereParams, SpherePlacement};
pub use trails::{gen_grid, gen_rhomboidal, RhomboidalParams};

/// Cruise speed used by every predefined scenario unless overridden, NM/h.
pub const DEFAULT_SPEED: f64 = 480.0;

use crate::error::{ensure, Result};

pub(crate) fn check_common(speed: f64, deviation_range: f64, safety_distance: f64) -> Result<()> {
    ensure(speed > 0.0 && speed.is_finite(), "speed", "must be positive and finite")?;
    ensure(
        deviation_range >= 0.0 && deviation_range.is_finite(),
        "deviation_range",
        "must be non-negative and finite",
    )?;
    ensure(
        safety_distance > 0.0 && safety_distance.is_finite(),
        "safety_distance",
        "must be positive and finite",
    )
}
