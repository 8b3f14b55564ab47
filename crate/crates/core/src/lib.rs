//! Plabic graphs, cluster seeds and superpotential polytopes for Grassmannians.

pub mod error;
mod linalg;
pub mod plabic;
pub mod poly;
pub mod polytope;
pub mod quiver;
pub mod seeds;
pub mod service;
pub mod subsets;
pub mod superpotential;

pub use error::{Error, Result};
