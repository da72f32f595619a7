//! Doppler shift magnitude statistics for clustered terrestrial users served
//! by a circular-orbit LEO satellite.
//!
//! The crate is `no_std` (it needs `alloc` for sample buffers) and splits into:
//!
//! - [`geometry`]: satellite constants, central angle, slant range and
//!   elevation relations, and the plane-to-sphere mapping about a cluster
//!   center.
//! - [`doppler`]: instantaneous Doppler of a pass (exact and ground-track
//!   envelope) and the time window over which the envelope is ε-accurate.
//! - [`disk`]: distance law between a uniform point in a disk and a fixed
//!   point.
//! - [`distribution`]: the in-cluster Doppler magnitude distribution, its
//!   quantile, the overhead special case and order statistics.
//! - [`cluster`]: seeded samplers for uniform-disk clusters and Poisson
//!   parent cells.
//! - [`validation`]: the Monte Carlo comparison between exact per-user
//!   Doppler and the analytic CDF.
//!
//! All quantities are SI internally: metres, seconds, hertz and radians.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cluster;
pub mod disk;
pub mod distribution;
pub mod doppler;
mod error;
pub mod geometry;
pub mod numeric;
pub mod validation;

pub use error::{Error, Result};
pub use geometry::{PlanarPoint, SatelliteConfig};
