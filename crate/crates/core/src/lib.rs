//! Seed-reproducible benchmark instances for aircraft tactical deconfliction.
//!
//! The crate generates predefined scenario families (circle, sphere,
//! rhomboidal, grid, polyhedral, cubic), fully random traffic, and
//! pseudo-random traffic that targets a requested number of conflicts. It
//! also detects and analyzes conflicts, validates candidate resolutions, and
//! reads and writes the plain-text instance format.

pub mod analysis;
pub mod conflict;
pub mod congestion;
pub mod error;
pub mod geometry;
pub mod instance;
pub mod io;
pub mod rng;
pub mod scenario;
pub mod sweep;

pub use analysis::{analyze, ComplexityReport};
pub use conflict::{detect_conflicts, PairConflict};
pub use error::{Error, Result};
pub use geometry::{conflict_interval, cpa, ConflictWindow, Cpa, Vec3};
pub use instance::{Aircraft, Dimension, Instance, Metadata, ScenarioKind, DEFAULT_SAFETY_DISTANCE};
