//! Deterministic simulator for a gravitational quantum switch.
//!
//! An agent in a superposition of two paths near a spherical mass picks up
//! different amounts of proper time on each branch. When the schedule is
//! tuned so that both branches reach the same proper time at the moment a
//! photon crosses them, the agent's operation happens before agent B's on
//! one branch and after it on the other.
//!
//! The crate is split by subsystem:
//!
//! * [`spacetime`]: Schwarzschild weak-field kinematics and physical constants.
//! * [`timing`]: piecewise paths, proper times, and the matching schedule.
//! * [`hilbert`]: a small dense state-vector engine over labeled factors.
//! * [`switch_model`]: the few-level agent/photon interactions, postselection,
//!   and diagonal measurement.
//! * [`trigger`]: the oscillator clock that switches `A0 -> A1`, analytic and
//!   numeric.
//! * [`cli`]: configuration, presets, sweeps, and CSV/JSON emission.

pub mod cli;
pub mod error;
pub mod hilbert;
pub mod quadrature;
pub mod spacetime;
pub mod switch_model;
pub mod timing;
pub mod trigger;

pub use error::{Error, Result};
pub use spacetime::{CentralBody, PhysicalConstants};
