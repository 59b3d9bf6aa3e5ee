//! Spy strategies.

pub mod cycle;
pub mod greedy;
pub mod small;
pub mod tree;
pub mod unicyclic;

pub use cycle::CycleSpyState;
pub use greedy::GreedySpies;
pub use small::{GuardPlanner, SmallMode};
pub use tree::{TreeSpies, TreeSpyState};
pub use unicyclic::{CompositeSpyState, UnicyclicSpies};
