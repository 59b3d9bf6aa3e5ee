//! Revolutionaries and spies on graphs.
//!
//! `r` revolutionaries and `s` spies take turns on a graph; the
//! revolutionaries win by gathering `m` of them on a vertex with no spy at
//! the end of a round. This crate provides the game engine, constructive spy
//! strategies for trees, cycles and unicyclic graphs, scripted revolutionary
//! strategies for the matching lower bounds, and an exact safety-game solver
//! that computes the threshold number of spies on small graphs.

pub mod engine;
pub mod enumerate;
pub mod flow;
pub mod graph;
pub mod harness;
pub mod rev;
pub mod solver;
pub mod spy;

pub use engine::{
    play_match, play_match_observed, unguarded_meetings, GameConfig, Outcome, Position, Reason,
    RevStrategy, SpyStrategy, StrategyError, Team, Transcript,
};
pub use flow::{validate_team_move, MoveError, MoveFlow};
pub use graph::{classify, parse_graph, Graph, GraphClass, GraphError};
