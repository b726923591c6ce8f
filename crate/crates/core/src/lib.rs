//! Numerical toolkit for capacity bounds in noncoherent random-access
//! cellular networks: interferer fading profiles from stochastic-geometry
//! deployments and path-loss models, closed-form upper and lower bounds on
//! the network capacity, the weight-preserving activity-pattern bijection
//! behind the converse averaging, and a deterministic Monte Carlo kernel
//! for the channel model and its supporting identities.

pub mod bounds;
pub mod csvio;
pub mod error;
pub mod fading;
pub mod mapping;
pub mod simkernel;
pub mod special;

pub use error::{Error, Result};
