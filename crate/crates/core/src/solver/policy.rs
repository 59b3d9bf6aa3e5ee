//! Strategies read off a solved game.

use std::sync::Arc;

use crate::engine::{Position, RevStrategy, SpyStrategy, StrategyError};
use crate::solver::safety::WinSet;

/// Spies that always pick a safe reply when one exists.
#[derive(Debug, Clone)]
pub struct SolverSpies {
    win: Arc<WinSet>,
}

impl SolverSpies {
    pub fn new(win: Arc<WinSet>) -> Self {
        SolverSpies { win }
    }
}

impl SpyStrategy for SolverSpies {
    fn name(&self) -> &str {
        "solver"
    }

    fn place(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        self.win.spy_placement(rev).ok_or_else(|| {
            StrategyError::PreconditionViolated("layout outside the solved game".into())
        })
    }

    fn respond(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        self.win.spy_reply(&pos.rev, &pos.spy).ok_or_else(|| {
            StrategyError::PreconditionViolated("position outside the solved game".into())
        })
    }
}

/// Revolutionaries that follow the rank-decreasing winning policy.
#[derive(Debug, Clone)]
pub struct SolverRevs {
    win: Arc<WinSet>,
}

impl SolverRevs {
    pub fn new(win: Arc<WinSet>) -> Self {
        SolverRevs { win }
    }
}

impl RevStrategy for SolverRevs {
    fn name(&self) -> &str {
        "solver"
    }

    fn place(&mut self) -> Result<Vec<u32>, StrategyError> {
        Ok(self.win.rev_placement())
    }

    fn step(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        self.win.rev_reply(&pos.rev, &pos.spy).ok_or_else(|| {
            StrategyError::PreconditionViolated("position outside the solved game".into())
        })
    }
}
