//! Cameron–Martin reflection couplings: the finite-time coupling for a
//! displacement in `H`, and the block decomposition that couples at time ∞.

mod detect;
mod deviation;
mod plan;
mod reflection;
mod runner;

pub use detect::Refinement;
pub use deviation::{factor_supremum, FactorSupremum};
pub use plan::{plan_blocks, BlockPlan};
pub use reflection::reflect;
pub use runner::{
    detect_coupling_time, run_block_coupling, run_block_coupling_on, run_reflection_coupling,
    stream_coupling_time, CouplingResult,
};
