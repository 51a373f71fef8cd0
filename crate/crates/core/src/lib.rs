//! Simulation and analysis of one-dimensional discrete-time quantum walks.
//!
//! Three walk protocols share one spinor state representation:
//!
//! - the conventional coined walk (one coin, one conditional shift per step),
//! - the split-step walk (two coins interleaved with two half-shifts),
//! - the Dirac cellular automaton (hopping term plus on-site `σx` mass term).
//!
//! On top of the position-space steppers the crate provides the momentum-space
//! picture of the split-step walk ([`spectral`]), closed-form Zitterbewegung
//! frequency and amplitude with a time-series cross-check ([`zitter`]), and the
//! coin/position entanglement entropy of a pure walker state ([`entanglement`]).
//!
//! All quantities default to natural units (`a = τ = ħ = c = 1`), see
//! [`UnitsConfig`].

pub mod entanglement;
mod error;
pub mod lattice;
pub mod linalg;
pub mod spectral;
pub mod walk;
pub mod zitter;

pub use error::{Error, Result};
pub use lattice::{
    make_initial_state, position_distribution, state_norm, Boundary, InitialCondition, LatticeSpec, SpinorState,
    UnitsConfig,
};
pub use linalg::{Mat2, Spinor, C64};
pub use walk::{CoinParams, DcaParams, SplitStepParams, Walk};
