//! Simulation and analysis of a two-dimensional discrete-time map: an angle
//! advancing by a fixed step on the circle, coupled to an angular velocity
//! updated by
//!
//! ```text
//! ω_{k+1} − ω_k = P sin θ_k (1/ω_k + 1/ω_{k+1})
//! ```
//!
//! with `P = ± g Δθ² / (2ℓ sin Δθ)`. In the small-step limit the map behaves
//! like a simple pendulum.
//!
//! The crate covers:
//!
//! - [`map`]: one exact step, both quadratic roots and their feasibility.
//! - [`series`]: truncated expansions of the exact and invariant updates.
//! - [`invariant`]: the approximate invariant `Ē` and the velocity it
//!   predicts, plus the pendulum integral of motion.
//! - [`orbit`]: trajectories, periodicity, drift, prediction error.
//! - [`stability`]: step Jacobians and the monodromy matrix.
//! - [`experiment`], [`plot`] and [`tables`]: JSON configs, CSV/JSON
//!   artifacts, SVG polar plots, cobweb data and the table reproduction
//!   report behind the `rotormap` binary.
//!
//! ```
//! use rotormap::{orbit, BranchPolicy, MapParams, PSign, Rotation};
//!
//! let params = MapParams::standard(Rotation::submultiple(6)?, PSign::Negative)?;
//! let traj = orbit::simulate(&params, 0.0, 8.0, 1200, &BranchPolicy::default())?;
//! assert_eq!(orbit::detect_period(&traj, &params), Some(6));
//! # Ok::<(), rotormap::Error>(())
//! ```

pub mod error;
pub mod experiment;
pub mod invariant;
pub mod map;
pub mod orbit;
pub mod params;
pub mod plot;
pub mod series;
pub mod stability;
pub mod tables;

pub use error::{Error, Result};
pub use invariant::{InvariantModel, PendulumModel};
pub use map::{Branch, State, StepOutcome};
pub use orbit::{BranchOverride, BranchPolicy, Trajectory};
pub use params::{MapParams, PSign, Rotation};
pub use stability::{Matrix2, Monodromy};
