//! Exact solver: safety-game attractor, threshold computation, adversarial
//! verification of spy strategies and solver-derived strategies.

pub mod policy;
pub mod safety;
pub mod sigma;
pub mod space;
pub mod verify;

use thiserror::Error;

use crate::graph::GraphClass;

pub use policy::{SolverRevs, SolverSpies};
pub use safety::{solve_safety, state_estimate, WinSet};
pub use sigma::{
    cycle_shape, sigma_exact, sigma_formula, trivial_bounds, Method, SigmaResult, Verdict,
};
pub use space::{all_configurations, team_successors, ConfigSpace};
pub use verify::{verify_strategy, Verification};

pub const DEFAULT_MAX_STATES: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("state space of {estimate} states exceeds the budget of {cap}")]
    StateSpaceTooLarge { estimate: u64, cap: u64 },
    #[error("no closed form for graph class {}", .0.name())]
    UnsupportedClass(GraphClass),
    #[error("r/m = {r}/{m} exceeds |V| = {n}")]
    AssumptionViolated { m: u32, r: u32, n: usize },
    #[error("spies lose with s = {s} (m = {m}, r = {r}) despite the upper trivial bound")]
    BoundViolated { m: u32, r: u32, s: u32 },
    #[error("spies win with s - 1 but lose with s = {s} (m = {m}, r = {r})")]
    NotMonotone { m: u32, r: u32, s: u32 },
}
