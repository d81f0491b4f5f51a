//! Multipartite entanglement of superposition states.
//!
//! Computes the geometric measure and the pure-state q-squashed entanglement
//! of multipartite states, and evaluates lower and upper bounds on the
//! entanglement of a superposition in terms of its components.

pub mod error;
pub mod geo_bounds;
pub mod geometric;
pub mod harness;
pub mod optimize;
pub mod sq_bounds;
pub mod states;

pub use error::{Error, Result};
