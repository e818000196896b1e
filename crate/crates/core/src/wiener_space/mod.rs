//! Truncated abstract Wiener spaces: Cameron–Martin coordinates, the two
//! model families, and their ambient norms.
//!
//! Everything here is "at truncation": a model has finitely many basis
//! coefficients `K`, and convergence questions are studied by growing `K`.
//! The covariance is implicit in the basis: `diag(σ_k²)` for the diagonal
//! model, `min(s, t)` for the classical one.

mod model;
mod schauder;
mod vector;

pub use model::{
    h_divergent_geometric, AmbientNorm, ClassicalWiener, DiagonalSequence, ModelSpec,
    MAX_LEVELS, MAX_RESOLUTION,
};
pub use schauder::SchauderElement;
pub use vector::HVector;
pub(crate) use vector::dot;
