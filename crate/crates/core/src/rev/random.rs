//! Seeded random play for both teams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{Position, RevStrategy, SpyStrategy, StrategyError};
use crate::graph::Graph;

fn random_layout(rng: &mut ChaCha8Rng, n: usize, units: u32) -> Vec<u32> {
    let mut out = vec![0; n];
    if n > 0 {
        for _ in 0..units {
            out[rng.gen_range(0..n)] += 1;
        }
    }
    out
}

/// Every unit independently stays or steps to a uniformly chosen neighbor.
fn random_step(rng: &mut ChaCha8Rng, g: &Graph, counts: &[u32]) -> Vec<u32> {
    let mut out = vec![0; counts.len()];
    for (v, &c) in counts.iter().enumerate() {
        for _ in 0..c {
            let k = rng.gen_range(0..=g.degree(v));
            out[if k == 0 { v } else { g.neighbors(v)[k - 1] }] += 1;
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct RandomRevs {
    g: Graph,
    r: u32,
    rng: ChaCha8Rng,
}

impl RandomRevs {
    pub fn new(g: &Graph, r: u32, seed: u64) -> Self {
        RandomRevs {
            g: g.clone(),
            r,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RevStrategy for RandomRevs {
    fn name(&self) -> &str {
        "random"
    }

    fn place(&mut self) -> Result<Vec<u32>, StrategyError> {
        Ok(random_layout(&mut self.rng, self.g.n(), self.r))
    }

    fn step(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        Ok(random_step(&mut self.rng, &self.g, &pos.rev))
    }
}

#[derive(Debug, Clone)]
pub struct RandomSpies {
    g: Graph,
    s: u32,
    rng: ChaCha8Rng,
}

impl RandomSpies {
    pub fn new(g: &Graph, s: u32, seed: u64) -> Self {
        RandomSpies {
            g: g.clone(),
            s,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl SpyStrategy for RandomSpies {
    fn name(&self) -> &str {
        "random"
    }

    fn place(&mut self, _rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        Ok(random_layout(&mut self.rng, self.g.n(), self.s))
    }

    fn respond(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        Ok(random_step(&mut self.rng, &self.g, &pos.spy))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::is_legal_move;

    #[test]
    fn random_moves_are_legal_and_seeded() {
        let g = Graph::cycle(6);
        let mut a = RandomRevs::new(&g, 7, 9);
        let mut b = RandomRevs::new(&g, 7, 9);
        let mut rev = a.place().unwrap();
        assert_eq!(rev, b.place().unwrap());
        assert_eq!(rev.iter().sum::<u32>(), 7);
        for _ in 0..50 {
            let pos = Position::new(rev.clone(), vec![0; 6]);
            let next = a.step(&pos).unwrap();
            assert_eq!(next, b.step(&pos).unwrap());
            assert!(is_legal_move(&g, &rev, &next));
            rev = next;
        }
    }
}
