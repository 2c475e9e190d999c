//! Attractor-count bounds for AND-NOT Boolean networks.
//!
//! The pipeline reads a network, derives its signed influence graph,
//! classifies every elementary cycle, solves three hitting-set problems over
//! the even cycles and turns each witness set `U` into the bound `2^|U|`.
//! Small networks can be checked against an exhaustive attractor oracle.

pub mod campaign;
pub mod covers;
pub mod cycles;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod generator;
pub mod influence;
pub mod network;
pub mod report;

pub use error::{Error, Result};
pub use exec::Execution;

/// Hard ceiling for exhaustive state-space code, whatever cap a caller asks for.
pub const MAX_EXHAUSTIVE_VARIABLES: usize = 30;

/// Default variable cap for transition graphs and brute-force sweeps (2^20 states).
pub const DEFAULT_STATE_CAP: usize = 20;

/// Default variable cap for the quadratic trap-set oracle.
pub const DEFAULT_TRAPSET_CAP: usize = 5;
