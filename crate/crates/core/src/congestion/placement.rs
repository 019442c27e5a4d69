//! Initial positions near the borders of the air sector.
//!
//! The sector is anchored at the origin: west/south/bottom faces lie on the
//! planes `x = 0`, `y = 0`, `z = 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{ensure, Error, Result};
use crate::geometry::Vec3;
use crate::instance::Dimension;
use crate::rng::Stream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorBox {
    pub width_x: f64,
    pub width_y: f64,
    /// `None` for a planar sector.
    pub width_z: Option<f64>,
    /// Width of the placement band along each active border, NM.
    pub margin: f64,
}

impl SectorBox {
    pub fn square(width: f64, margin: f64) -> Self {
        SectorBox { width_x: width, width_y: width, width_z: None, margin }
    }

    pub fn cube(width: f64, margin: f64) -> Self {
        SectorBox { width_x: width, width_y: width, width_z: Some(width), margin }
    }

    pub fn dimension(&self) -> Dimension {
        if self.width_z.is_some() {
            Dimension::ThreeD
        } else {
            Dimension::TwoD
        }
    }

    fn min_width(&self) -> f64 {
        self.width_x.min(self.width_y).min(self.width_z.unwrap_or(f64::INFINITY))
    }

    pub fn validate(&self) -> Result<()> {
        let widths_ok = [self.width_x, self.width_y, self.width_z.unwrap_or(1.0)]
            .iter()
            .all(|w| *w > 0.0 && w.is_finite());
        ensure(widths_ok, "width", "sector widths must be positive and finite")?;
        ensure(
            self.margin >= 0.0 && self.margin < self.min_width() / 2.0,
            "margin",
            "must be non-negative and below half the smallest width",
        )
    }

    pub fn contains(&self, p: Vec3) -> bool {
        (0.0..=self.width_x).contains(&p.x)
            && (0.0..=self.width_y).contains(&p.y)
            && match self.width_z {
                Some(wz) => (0.0..=wz).contains(&p.z),
                None => p.z == 0.0,
            }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Border {
    West,
    East,
    South,
    North,
    Bottom,
    Top,
}

impl Border {
    /// Inward unit normal.
    pub fn inward(self) -> Vec3 {
        match self {
            Border::West => Vec3::new(1.0, 0.0, 0.0),
            Border::East => Vec3::new(-1.0, 0.0, 0.0),
            Border::South => Vec3::new(0.0, 1.0, 0.0),
            Border::North => Vec3::new(0.0, -1.0, 0.0),
            Border::Bottom => Vec3::new(0.0, 0.0, 1.0),
            Border::Top => Vec3::new(0.0, 0.0, -1.0),
        }
    }
}

/// Which borders (2D) or faces (3D) receive aircraft.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BorderConfig {
    /// All 4 borders in 2D, all 6 faces in 3D.
    All,
    NorthSouth,
    WestEast,
    WestNorth,
    NorthTop,
    WestTop,
    TopBottom,
}

impl BorderConfig {
    pub const ALL: [BorderConfig; 7] = [
        BorderConfig::All,
        BorderConfig::NorthSouth,
        BorderConfig::WestEast,
        BorderConfig::WestNorth,
        BorderConfig::NorthTop,
        BorderConfig::WestTop,
        BorderConfig::TopBottom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BorderConfig::All => "all",
            BorderConfig::NorthSouth => "north-south",
            BorderConfig::WestEast => "west-east",
            BorderConfig::WestNorth => "west-north",
            BorderConfig::NorthTop => "north-top",
            BorderConfig::WestTop => "west-top",
            BorderConfig::TopBottom => "top-bottom",
        }
    }

    pub fn borders(self, dim: Dimension) -> Result<Vec<Border>> {
        use Border::*;
        let list = match (self, dim) {
            (BorderConfig::All, Dimension::TwoD) => vec![West, East, South, North],
            (BorderConfig::All, Dimension::ThreeD) => vec![West, East, South, North, Bottom, Top],
            (BorderConfig::NorthSouth, _) => vec![North, South],
            (BorderConfig::WestEast, _) => vec![West, East],
            (BorderConfig::WestNorth, _) => vec![West, North],
            (BorderConfig::NorthTop, Dimension::ThreeD) => vec![North, Top],
            (BorderConfig::WestTop, Dimension::ThreeD) => vec![West, Top],
            (BorderConfig::TopBottom, Dimension::ThreeD) => vec![Top, Bottom],
            (cfg, Dimension::TwoD) => {
                return Err(Error::param("borders", format!("`{}` needs a 3D sector", cfg.as_str())));
            }
        };
        Ok(list)
    }
}

impl fmt::Display for BorderConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BorderConfig {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        BorderConfig::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| format!("unknown border configuration `{s}`"))
    }
}

/// Feasible speed band, NM/h.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedRange {
    pub min: f64,
    pub max: f64,
}

impl Default for SpeedRange {
    fn default() -> Self {
        SpeedRange { min: 400.0, max: 500.0 }
    }
}

impl SpeedRange {
    pub fn validate(&self) -> Result<()> {
        ensure(
            self.min > 0.0 && self.min <= self.max && self.max.is_finite(),
            "speed_range",
            "needs 0 < min <= max",
        )
    }
}

/// Initial position and feasible heading/speed ranges of one aircraft.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementSlot {
    pub p_hat: Vec3,
    pub border: Border,
    /// Degrees from the x-axis.
    pub theta_range: [f64; 2],
    /// Degrees from the z-axis.
    pub phi_range: [f64; 2],
    pub speed_range: [f64; 2],
}

impl PlacementSlot {
    /// Draws a speed and heading from the slot's ranges.
    pub(crate) fn draw_velocity(&self, rng: &mut Stream) -> Vec3 {
        let v = rng.uniform(self.speed_range[0], self.speed_range[1]);
        let theta = rng.uniform(self.theta_range[0], self.theta_range[1]);
        let phi = rng.uniform(self.phi_range[0], self.phi_range[1]);
        Vec3::from_angles_deg(theta, phi) * v
    }
}

fn heading_ranges(border: Border, dim: Dimension) -> ([f64; 2], [f64; 2]) {
    let phi_any = match dim {
        Dimension::TwoD => [90.0, 90.0],
        Dimension::ThreeD => [0.0, 180.0],
    };
    match border {
        Border::West => ([-90.0, 90.0], phi_any),
        Border::East => ([90.0, 270.0], phi_any),
        Border::South => ([0.0, 180.0], phi_any),
        Border::North => ([180.0, 360.0], phi_any),
        Border::Bottom => ([0.0, 360.0], [0.0, 90.0]),
        Border::Top => ([0.0, 360.0], [90.0, 180.0]),
    }
}

/// Draws allowed per aircraft before placement is declared infeasible.
pub const MAX_PLACEMENT_ATTEMPTS: usize = 10_000;

/// Places `n` aircraft in the border bands. Every pair of initial positions
/// is at least `min_spacing` apart; `0` disables the check.
pub fn place_initial_positions(
    n: usize,
    sector: &SectorBox,
    borders: BorderConfig,
    speed: SpeedRange,
    min_spacing: f64,
    seed: u64,
) -> Result<Vec<PlacementSlot>> {
    place_with(n, sector, borders, speed, min_spacing, &mut Stream::new(seed))
}

pub(crate) fn place_with(
    n: usize,
    sector: &SectorBox,
    borders: BorderConfig,
    speed: SpeedRange,
    min_spacing: f64,
    rng: &mut Stream,
) -> Result<Vec<PlacementSlot>> {
    sector.validate()?;
    speed.validate()?;
    ensure(min_spacing >= 0.0 && min_spacing.is_finite(), "min_spacing", "must be non-negative")?;
    let dim = sector.dimension();
    let active = borders.borders(dim)?;

    let mut slots: Vec<PlacementSlot> = Vec::with_capacity(n);
    for k in 0..n {
        let mut attempts = 0;
        let slot = loop {
            let slot = draw_slot(sector, &active, speed, rng);
            if slots.iter().all(|s| (s.p_hat - slot.p_hat).norm() >= min_spacing) {
                break slot;
            }
            attempts += 1;
            if attempts >= MAX_PLACEMENT_ATTEMPTS {
                return Err(Error::Infeasible(format!(
                    "could not place aircraft {k} at least {min_spacing} NM from the others; \
                     widen the sector or the margin"
                )));
            }
        };
        slots.push(slot);
    }
    Ok(slots)
}

fn draw_slot(sector: &SectorBox, active: &[Border], speed: SpeedRange, rng: &mut Stream) -> PlacementSlot {
    let dim = sector.dimension();
    let (wx, wy, m) = (sector.width_x, sector.width_y, sector.margin);
    let wz = sector.width_z.unwrap_or(0.0);
    {
        let border = active[rng.index(active.len())];
        let mut x = rng.uniform(0.0, wx);
        let mut y = rng.uniform(0.0, wy);
        let mut z = match dim {
            Dimension::TwoD => 0.0,
            Dimension::ThreeD => rng.uniform(0.0, wz),
        };
        let depth = rng.uniform(0.0, m);
        match border {
            Border::West => x = depth,
            Border::East => x = wx - depth,
            Border::South => y = depth,
            Border::North => y = wy - depth,
            Border::Bottom => z = depth,
            Border::Top => z = wz - depth,
        }
        let (theta_range, phi_range) = heading_ranges(border, dim);
        PlacementSlot { p_hat: Vec3::new(x, y, z), border, theta_range, phi_range, speed_range: [speed.min, speed.max] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn distance_to_border(p: Vec3, b: Border, s: &SectorBox) -> f64 {
        match b {
            Border::West => p.x,
            Border::East => s.width_x - p.x,
            Border::South => p.y,
            Border::North => s.width_y - p.y,
            Border::Bottom => p.z,
            Border::Top => s.width_z.unwrap() - p.z,
        }
    }

    #[test]
    fn planar_all_borders() {
        let s = SectorBox::square(200.0, 15.0);
        let slots = place_initial_positions(40, &s, BorderConfig::All, SpeedRange::default(), 0.0, 1).unwrap();
        assert_eq!(slots.len(), 40);
        let mut rng = Stream::new(2);
        for slot in &slots {
            assert!(s.contains(slot.p_hat));
            assert!(distance_to_border(slot.p_hat, slot.border, &s) <= 15.0);
            assert_eq!(slot.phi_range, [90.0, 90.0]);
            for _ in 0..20 {
                let v = slot.draw_velocity(&mut rng);
                assert_eq!(v.z, 0.0);
                assert!(v.dot(slot.border.inward()) >= 0.0);
            }
        }
    }

    #[test]
    fn west_top_uses_only_those_faces() {
        let s = SectorBox::cube(100.0, 10.0);
        let slots = place_initial_positions(200, &s, BorderConfig::WestTop, SpeedRange::default(), 0.0, 8).unwrap();
        for slot in &slots {
            assert!(matches!(slot.border, Border::West | Border::Top));
            let p = slot.p_hat;
            assert!(p.x <= 10.0 || p.z >= 90.0, "{p:?}");
        }
        assert!(slots.iter().any(|s| s.border == Border::West));
        assert!(slots.iter().any(|s| s.border == Border::Top));
    }

    #[test]
    fn spacing_is_enforced() {
        let s = SectorBox::square(150.0, 15.0);
        let slots = place_initial_positions(30, &s, BorderConfig::All, SpeedRange::default(), 5.0, 4).unwrap();
        for (a, sa) in slots.iter().enumerate() {
            for sb in &slots[a + 1..] {
                assert!((sa.p_hat - sb.p_hat).norm() >= 5.0);
            }
        }
        let tiny = SectorBox::square(10.0, 1.0);
        let err = place_initial_positions(40, &tiny, BorderConfig::All, SpeedRange::default(), 5.0, 4);
        assert!(matches!(err, Err(Error::Infeasible(_))));
    }

    #[test]
    fn zero_margin_puts_aircraft_on_borders() {
        let s = SectorBox::square(100.0, 0.0);
        let slots = place_initial_positions(30, &s, BorderConfig::All, SpeedRange::default(), 0.0, 3).unwrap();
        for slot in &slots {
            assert_eq!(distance_to_border(slot.p_hat, slot.border, &s), 0.0);
        }
    }

    #[test]
    fn three_d_configs_rejected_in_2d() {
        let s = SectorBox::square(100.0, 5.0);
        for cfg in [BorderConfig::NorthTop, BorderConfig::WestTop, BorderConfig::TopBottom] {
            assert!(place_initial_positions(3, &s, cfg, SpeedRange::default(), 0.0, 0).is_err());
        }
    }

    #[test]
    fn margin_must_fit() {
        let s = SectorBox::square(100.0, 50.0);
        assert!(place_initial_positions(3, &s, BorderConfig::All, SpeedRange::default(), 0.0, 0).is_err());
    }
}
