//! Exact solution of the game as a safety game.
//!
//! States are `(rev, spy)` pairs with either team to move. A rev-to-move
//! state is lost for the spies when it shows an unguarded meeting or some
//! revolutionary move reaches a lost spy-to-move state; a spy-to-move state
//! is lost when every spy reply reaches a lost rev-to-move state. The lost
//! sets are computed backwards from the unguarded states with successor
//! counters; ranks count rounds until the meeting under best play.

use std::collections::VecDeque;

use crate::engine::{configuration_count, GameConfig, Team};
use crate::graph::Graph;
use crate::solver::space::ConfigSpace;
use crate::solver::SolverError;

const SAFE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct WinSet {
    pub cfg: GameConfig,
    pub winner: Team,
    revs: ConfigSpace,
    spies: ConfigSpace,
    /// Rank per rev-to-move state, `SAFE` when the spies hold.
    rev_turn: Vec<u32>,
    /// Rank per spy-to-move state.
    spy_turn: Vec<u32>,
}

/// Number of solver states for `cfg` on an `n`-vertex graph.
pub fn state_estimate(n: usize, cfg: GameConfig) -> u64 {
    configuration_count(n, cfg.r)
        .saturating_mul(configuration_count(n, cfg.s))
        .saturating_mul(2)
}

pub fn solve_safety(g: &Graph, cfg: GameConfig, max_states: u64) -> Result<WinSet, SolverError> {
    let estimate = state_estimate(g.n(), cfg);
    if estimate > max_states {
        return Err(SolverError::StateSpaceTooLarge {
            estimate,
            cap: max_states,
        });
    }
    let revs = ConfigSpace::new(g, cfg.r);
    let spies = ConfigSpace::new(g, cfg.s);
    let (nr, ns) = (revs.len(), spies.len());
    let at = |r: usize, s: usize| r * ns + s;
    let mut rev_turn = vec![SAFE; nr * ns];
    let mut spy_turn = vec![SAFE; nr * ns];
    let mut counter: Vec<u32> = (0..nr * ns)
        .map(|i| spies.successors(i % ns).len() as u32)
        .collect();
    let mut queue = VecDeque::new();
    for r in 0..nr {
        let rc = revs.config(r);
        for s in 0..ns {
            let sc = spies.config(s);
            if rc.iter().zip(sc).any(|(&a, &b)| a >= cfg.m && b == 0) {
                rev_turn[at(r, s)] = 0;
                queue.push_back((Team::Revolutionaries, r, s));
            }
        }
    }
    while let Some((turn, r, s)) = queue.pop_front() {
        match turn {
            Team::Revolutionaries => {
                // Rev-to-move (r, s) is lost: spies that could move into it
                // from (r, s0) lose one safe option.
                let rank = rev_turn[at(r, s)];
                for &s0 in spies.successors(s) {
                    let i = at(r, s0 as usize);
                    if spy_turn[i] != SAFE {
                        continue;
                    }
                    counter[i] -= 1;
                    if counter[i] == 0 {
                        spy_turn[i] = rank;
                        queue.push_back((Team::Spies, r, s0 as usize));
                    }
                }
            }
            Team::Spies => {
                let rank = spy_turn[at(r, s)];
                for &r0 in revs.successors(r) {
                    let i = at(r0 as usize, s);
                    if rev_turn[i] == SAFE {
                        rev_turn[i] = rank + 1;
                        queue.push_back((Team::Revolutionaries, r0 as usize, s));
                    }
                }
            }
        }
    }
    let spies_hold = (0..nr).all(|r| (0..ns).any(|s| rev_turn[at(r, s)] == SAFE));
    let winner = if spies_hold {
        Team::Spies
    } else {
        Team::Revolutionaries
    };
    Ok(WinSet {
        cfg,
        winner,
        revs,
        spies,
        rev_turn,
        spy_turn,
    })
}

impl WinSet {
    pub fn states(&self) -> u64 {
        2 * (self.revs.len() * self.spies.len()) as u64
    }

    pub fn rev_space(&self) -> &ConfigSpace {
        &self.revs
    }

    pub fn spy_space(&self) -> &ConfigSpace {
        &self.spies
    }

    fn ids(&self, rev: &[u32], spy: &[u32]) -> Option<usize> {
        let r = self.revs.index_of(rev)?;
        let s = self.spies.index_of(spy)?;
        Some(r * self.spies.len() + s)
    }

    /// Rounds to a forced meeting with the revolutionaries to move, `None`
    /// when the spies hold.
    pub fn rev_turn_rank(&self, rev: &[u32], spy: &[u32]) -> Option<u32> {
        self.ids(rev, spy)
            .map(|i| self.rev_turn[i])
            .filter(|&k| k != SAFE)
    }

    pub fn spy_turn_rank(&self, rev: &[u32], spy: &[u32]) -> Option<u32> {
        self.ids(rev, spy)
            .map(|i| self.spy_turn[i])
            .filter(|&k| k != SAFE)
    }

    /// First safe spy placement against `rev`, or the one postponing the
    /// meeting longest.
    pub fn spy_placement(&self, rev: &[u32]) -> Option<Vec<u32>> {
        let r = self.revs.index_of(rev)?;
        let ns = self.spies.len();
        let best = (0..ns).max_by_key(|&s| (self.rev_turn[r * ns + s], std::cmp::Reverse(s)))?;
        Some(self.spies.config(best).to_vec())
    }

    /// Spy reply to revolutionaries at `rev` with spies at `spy`.
    pub fn spy_reply(&self, rev: &[u32], spy: &[u32]) -> Option<Vec<u32>> {
        let r = self.revs.index_of(rev)?;
        let s = self.spies.index_of(spy)?;
        let ns = self.spies.len();
        let best = self
            .spies
            .successors(s)
            .iter()
            .max_by_key(|&&s2| (self.rev_turn[r * ns + s2 as usize], std::cmp::Reverse(s2)))?;
        Some(self.spies.config(*best as usize).to_vec())
    }

    /// Winning placement for the revolutionaries when they win, else the
    /// placement that holds out against the most spy placements.
    pub fn rev_placement(&self) -> Vec<u32> {
        let ns = self.spies.len();
        let best = (0..self.revs.len())
            .max_by_key(|&r| {
                let lost = (0..ns)
                    .filter(|&s| self.rev_turn[r * ns + s] != SAFE)
                    .count();
                (lost, std::cmp::Reverse(r))
            })
            .unwrap_or(0);
        self.revs.config(best).to_vec()
    }

    /// Revolutionary move that decreases the rank; stays put when the
    /// position is not won.
    pub fn rev_reply(&self, rev: &[u32], spy: &[u32]) -> Option<Vec<u32>> {
        let r = self.revs.index_of(rev)?;
        let s = self.spies.index_of(spy)?;
        let ns = self.spies.len();
        let best = self
            .revs
            .successors(r)
            .iter()
            .filter(|&&r2| self.spy_turn[r2 as usize * ns + s] != SAFE)
            .min_by_key(|&&r2| (self.spy_turn[r2 as usize * ns + s], r2));
        Some(match best {
            Some(&r2) => self.revs.config(r2 as usize).to_vec(),
            None => rev.to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 5_000_000;

    #[test]
    fn p3_one_spy_holds() {
        let ws = solve_safety(&Graph::path(3), GameConfig::new(2, 2, 1), CAP).unwrap();
        assert_eq!(ws.winner, Team::Spies);
    }

    #[test]
    fn c5_three_revs_beat_one_spy() {
        let ws = solve_safety(&Graph::cycle(5), GameConfig::new(2, 3, 1), CAP).unwrap();
        assert_eq!(ws.winner, Team::Revolutionaries);
    }

    #[test]
    fn no_meeting_possible() {
        let ws = solve_safety(&Graph::cycle(4), GameConfig::new(3, 2, 0), CAP).unwrap();
        assert_eq!(ws.winner, Team::Spies);
    }

    #[test]
    fn budget_exceeded() {
        let e = solve_safety(&Graph::cycle(6), GameConfig::new(2, 7, 3), 1000).unwrap_err();
        assert!(matches!(
            e,
            SolverError::StateSpaceTooLarge {
                estimate: 88704,
                cap: 1000
            }
        ));
    }

    #[test]
    fn rank_decreases_along_rev_policy() {
        let g = Graph::cycle(5);
        let ws = solve_safety(&g, GameConfig::new(2, 3, 1), CAP).unwrap();
        let rev = ws.rev_placement();
        let mut spy = ws.spy_placement(&rev).unwrap();
        let mut rev = rev;
        let mut rank = ws.rev_turn_rank(&rev, &spy).unwrap();
        while rank > 0 {
            let r2 = ws.rev_reply(&rev, &spy).unwrap();
            let z = ws.spy_turn_rank(&r2, &spy).unwrap();
            assert!(z < rank);
            let s2 = ws.spy_reply(&r2, &spy).unwrap();
            let k = ws.rev_turn_rank(&r2, &s2).unwrap();
            assert!(k < rank);
            rev = r2;
            spy = s2;
            rank = k;
        }
    }
}
