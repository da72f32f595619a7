//! User layouts: fixed-size uniform-disk clusters and a cell of Poisson
//! cluster heads.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, sin, sqrt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::geometry::PlanarPoint;
use crate::{Error, Result};

/// Generator for stream `stream` of the experiment seeded with `seed`.
///
/// Streams of one seed are independent, so blocks of trials can be sampled on
/// any thread in any order and still reproduce the same values.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point in the disk of radius `radius` about `center`.
pub fn uniform_in_disk<R: Rng + ?Sized>(
    rng: &mut R,
    center: PlanarPoint,
    radius: f64,
) -> PlanarPoint {
    let r = radius * sqrt(rng.random::<f64>());
    let angle = 2.0 * PI * rng.random::<f64>();
    PlanarPoint::new(center.x + r * cos(angle), center.y + r * sin(angle))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSample {
    pub center: PlanarPoint,
    pub users: Vec<PlanarPoint>,
}

/// `users` independent points uniform in the disk of radius `radius` about
/// `center`.
pub fn sample_uniform_disk<R: Rng + ?Sized>(
    rng: &mut R,
    center: PlanarPoint,
    radius: f64,
    users: usize,
) -> Result<ClusterSample> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::invalid("cluster radius", "must be finite and > 0"));
    }
    if users == 0 {
        return Err(Error::invalid("users per cluster", "must be >= 1"));
    }
    let users = (0..users)
        .map(|_| uniform_in_disk(rng, center, radius))
        .collect();
    Ok(ClusterSample { center, users })
}

/// Euclidean distances from every user of `sample` to `q`.
pub fn distances_to_point(sample: &ClusterSample, q: PlanarPoint) -> Vec<f64> {
    sample.users.iter().map(|u| u.distance(&q)).collect()
}

/// A circular cell populated by Poisson cluster heads, each carrying a fixed
/// number of uniform-disk users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellModel {
    cell_radius: f64,
    parent_density: f64,
    cluster_radius: f64,
    users_per_cluster: usize,
}

impl CellModel {
    pub fn new(
        cell_radius: f64,
        parent_density: f64,
        cluster_radius: f64,
        users_per_cluster: usize,
    ) -> Result<Self> {
        if !(cell_radius.is_finite() && cell_radius > 0.0) {
            return Err(Error::invalid("cell radius", "must be finite and > 0"));
        }
        if !(cluster_radius > 0.0 && cluster_radius <= cell_radius) {
            return Err(Error::invalid(
                "cluster radius",
                "must satisfy 0 < rho <= cell radius",
            ));
        }
        if !(parent_density.is_finite() && parent_density > 0.0) {
            return Err(Error::invalid("parent density", "must be finite and > 0"));
        }
        if users_per_cluster == 0 {
            return Err(Error::invalid("users per cluster", "must be >= 1"));
        }
        Ok(CellModel {
            cell_radius,
            parent_density,
            cluster_radius,
            users_per_cluster,
        })
    }

    pub fn cell_radius(&self) -> f64 {
        self.cell_radius
    }

    pub fn cluster_radius(&self) -> f64 {
        self.cluster_radius
    }

    pub fn users_per_cluster(&self) -> usize {
        self.users_per_cluster
    }

    /// Expected number of cluster heads in the cell, `λ_c π R_cell²`.
    pub fn mean_parent_count(&self) -> f64 {
        self.parent_density * PI * self.cell_radius * self.cell_radius
    }

    /// Overall user density, `N λ_c`.
    pub fn user_density(&self) -> f64 {
        self.users_per_cluster as f64 * self.parent_density
    }
}

/// Draws one realisation of the cell. Users may fall outside the cell disk;
/// they stay attached to their cluster head.
pub fn sample_cell<R: Rng + ?Sized>(rng: &mut R, model: &CellModel) -> Vec<ClusterSample> {
    let parents = Poisson::new(model.mean_parent_count())
        .map(|p| p.sample(rng) as usize)
        .unwrap_or(0);
    (0..parents)
        .map(|_| {
            let center = uniform_in_disk(rng, PlanarPoint::ORIGIN, model.cell_radius);
            sample_uniform_disk(rng, center, model.cluster_radius, model.users_per_cluster)
                .expect("cell model invariants hold")
        })
        .collect()
}
