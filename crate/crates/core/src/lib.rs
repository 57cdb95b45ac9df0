//! Mean first return times of random walks on connected graphs.
//!
//! For a simple random walk the mean first return time of vertex `i` is
//! `2m / d_i`, and its average over all vertices (the GMFRT) depends on
//! the degree multiset alone. This crate computes those metrics exactly,
//! constructs the provably extremal graphs and trees for given vertex
//! and edge counts, certifies every extremality claim by exhaustive
//! enumeration, and validates the predictions by seeded Monte Carlo
//! simulation.

pub mod codec;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod rational;
pub mod realize;
pub mod trees;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{DegreeSequence, Graph};
pub use metrics::{gmfrt, gmfrt_of_degrees, mfrt, stationary, GmfrtReport};
pub use rational::Rational;
