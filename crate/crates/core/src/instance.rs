//! Benchmark instance data model.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::Vec3;

/// Default minimum safety distance, NM.
pub const DEFAULT_SAFETY_DISTANCE: f64 = 5.0;

pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    TwoD,
    ThreeD,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::TwoD => "2D",
            Dimension::ThreeD => "3D",
        })
    }
}

impl FromStr for Dimension {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "2D" | "2d" => Ok(Dimension::TwoD),
            "3D" | "3d" => Ok(Dimension::ThreeD),
            other => Err(format!("unknown dimension `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aircraft {
    pub id: usize,
    /// Initial position, NM.
    pub p_hat: Vec3,
    /// Nominal velocity, NM/h.
    pub v_hat: Vec3,
}

impl Aircraft {
    pub fn speed(&self) -> f64 {
        self.v_hat.norm()
    }

    pub fn position_at(&self, t: f64) -> Vec3 {
        self.p_hat + self.v_hat * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Circle,
    Sphere,
    Rhomboidal,
    Grid,
    Polyhedral,
    Cubic,
    Random,
    PseudoRandom,
    /// Loaded or assembled by hand.
    Custom,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 9] = [
        ScenarioKind::Circle,
        ScenarioKind::Sphere,
        ScenarioKind::Rhomboidal,
        ScenarioKind::Grid,
        ScenarioKind::Polyhedral,
        ScenarioKind::Cubic,
        ScenarioKind::Random,
        ScenarioKind::PseudoRandom,
        ScenarioKind::Custom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioKind::Circle => "circle",
            ScenarioKind::Sphere => "sphere",
            ScenarioKind::Rhomboidal => "rhomboidal",
            ScenarioKind::Grid => "grid",
            ScenarioKind::Polyhedral => "polyhedral",
            ScenarioKind::Cubic => "cubic",
            ScenarioKind::Random => "random",
            ScenarioKind::PseudoRandom => "pseudo-random",
            ScenarioKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown scenario kind `{s}`"))
    }
}

/// Provenance of an instance: enough to regenerate it bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub scenario: ScenarioKind,
    pub seed: Option<u64>,
    pub generator_version: String,
    /// Ordered generation parameters as `(key, value)` text pairs.
    pub params: Vec<(String, String)>,
    pub requested_conflicts: Option<usize>,
    pub achieved_conflicts: Option<usize>,
    /// Aircraft whose accepted conflict count exceeded their target cap.
    pub escalations: Option<usize>,
    /// Aircraft accepted without meeting any tried target.
    pub unmet_targets: Option<usize>,
}

impl Metadata {
    pub fn new(scenario: ScenarioKind, seed: Option<u64>) -> Self {
        Metadata {
            scenario,
            seed,
            generator_version: GENERATOR_VERSION.to_string(),
            params: Vec::new(),
            requested_conflicts: None,
            achieved_conflicts: None,
            escalations: None,
            unmet_targets: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub dimension: Dimension,
    pub aircraft: Vec<Aircraft>,
    pub safety_distance: f64,
    pub metadata: Metadata,
}

impl Instance {
    /// Builds an instance and checks every structural invariant.
    pub fn new(
        dimension: Dimension,
        aircraft: Vec<Aircraft>,
        safety_distance: f64,
        metadata: Metadata,
    ) -> Result<Self> {
        let instance = Instance { dimension, aircraft, safety_distance, metadata };
        instance.validate()?;
        Ok(instance)
    }

    pub fn n(&self) -> usize {
        self.aircraft.len()
    }

    pub fn aircraft_by_id(&self, id: usize) -> Option<&Aircraft> {
        match self.aircraft.get(id) {
            Some(a) if a.id == id => Some(a),
            _ => self.aircraft.iter().find(|a| a.id == id),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.safety_distance > 0.0 && self.safety_distance.is_finite()) {
            return Err(Error::param("safety_distance", "must be positive and finite"));
        }
        if self.aircraft.is_empty() {
            return Err(Error::param("aircraft", "an instance needs at least one aircraft"));
        }
        let mut seen = vec![false; self.aircraft.len()];
        for a in &self.aircraft {
            if !a.p_hat.is_finite() || !a.v_hat.is_finite() {
                return Err(Error::param("aircraft", format!("aircraft {} has non-finite components", a.id)));
            }
            if !(a.speed() > 0.0) {
                return Err(Error::param("aircraft", format!("aircraft {} has zero speed", a.id)));
            }
            if self.dimension == Dimension::TwoD && (a.p_hat.z != 0.0 || a.v_hat.z != 0.0) {
                return Err(Error::param("aircraft", format!("aircraft {} leaves the plane in a 2D instance", a.id)));
            }
            match seen.get_mut(a.id) {
                Some(s) if !*s => *s = true,
                Some(_) => return Err(Error::param("aircraft", format!("duplicate id {}", a.id))),
                // ids beyond n cannot all be unique and dense, reject to keep ids 0..n
                None => return Err(Error::param("aircraft", format!("id {} out of range 0..{}", a.id, seen.len()))),
            }
        }
        Ok(())
    }

    /// Same instance with every velocity replaced.
    pub fn with_velocities(&self, velocities: &[(usize, Vec3)]) -> Result<Instance> {
        let mut out = self.clone();
        for &(id, v) in velocities {
            let a = out
                .aircraft
                .iter_mut()
                .find(|a| a.id == id)
                .ok_or(Error::UnknownAircraft(id))?;
            a.v_hat = v;
        }
        out.validate()?;
        Ok(out)
    }
}

/// Renumbers a list of (position, velocity) pairs with ids `0..n`.
pub(crate) fn number_aircraft(states: impl IntoIterator<Item = (Vec3, Vec3)>) -> Vec<Aircraft> {
    states
        .into_iter()
        .enumerate()
        .map(|(id, (p_hat, v_hat))| Aircraft { id, p_hat, v_hat })
        .collect()
}
