//! Coefficient Brownian motions `β_k` driving `B(t) = Σ_k β_k(t) e_k`, with
//! counter-based randomness so every path is a pure function of
//! `(master_seed, replicate, coefficient)`.

pub mod bridge;
mod dump;
mod first_passage;
mod grid;
mod paths;
mod rng;

pub use dump::{read_dump, write_dump};
pub use first_passage::sample_first_passage;
pub use grid::TimeGrid;
pub use paths::{sample_paths, PathBundle, PathStream};
pub use rng::{RngPolicy, Stream};
