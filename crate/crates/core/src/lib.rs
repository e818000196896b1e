//! Reflection couplings of Brownian motions on truncated abstract Wiener
//! spaces, with the closed-form laws they are checked against.

pub mod analysis;
pub mod cli;
pub mod coupling;
mod error;
pub mod parallel;
pub mod simulation;
pub mod wiener_space;

pub use error::{Error, Result};
