//! Revolutionaries on a unicyclic graph with a long cycle: pin
//! `k = min{t, s-1}` spies with permanent meetings off the cycle and beat
//! the remaining spies on the cycle.

use crate::engine::{Position, RevStrategy, StrategyError};
use crate::graph::{decompose_unicyclic, Graph};
use crate::rev::long_cycle::LongCycleRevs;

#[derive(Debug, Clone)]
pub struct UnicyclicRevs {
    inner: LongCycleRevs,
    k: u32,
}

impl UnicyclicRevs {
    /// Requires `l >= max{s - t + 3, 4}` and `r > s*m`.
    pub fn new(g: &Graph, m: u32, r: u32, s: u32) -> Result<Self, StrategyError> {
        let dec = decompose_unicyclic(g)?;
        let len = dec.len() as i64;
        let t = dec.t;
        if len < (s as i64 - t as i64 + 3).max(4) {
            return Err(StrategyError::PreconditionViolated(format!(
                "cycle length {len} is below max(s - t + 3, 4) with s = {s}, t = {t}"
            )));
        }
        if r <= s * m {
            return Err(StrategyError::PreconditionViolated(format!(
                "{r} revolutionaries cannot outnumber {s} spies with m = {m}"
            )));
        }
        let k = (t as u32).min(s.saturating_sub(1));
        let mut pinned = vec![0; g.n()];
        for v in (0..g.n()).filter(|&v| !dec.on_cycle(v)).take(k as usize) {
            pinned[v] = m;
        }
        let inner =
            LongCycleRevs::on_cycle(g, dec.cycle.clone(), m, r - k * m, s - k, pinned, true)?;
        Ok(UnicyclicRevs { inner, k })
    }

    /// Number of spies held by the off-cycle meetings.
    pub fn pinned_meetings(&self) -> u32 {
        self.k
    }

    pub fn cycle_play(&self) -> &LongCycleRevs {
        &self.inner
    }
}

impl RevStrategy for UnicyclicRevs {
    fn name(&self) -> &str {
        "unicyclic"
    }

    fn place(&mut self) -> Result<Vec<u32>, StrategyError> {
        self.inner.place()
    }

    fn step(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        self.inner.step(pos)
    }

    fn annotation(&self) -> Option<String> {
        self.inner
            .annotation()
            .map(|a| format!("{a} pinned={}", self.k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_match, GameConfig, Team};
    use crate::spy::{GreedySpies, UnicyclicSpies};

    #[test]
    fn c5_plus_p2() {
        let g = Graph::cycle(5).disjoint_union(&Graph::path(2));
        let mut revs = UnicyclicRevs::new(&g, 2, 7, 3).unwrap();
        assert_eq!(revs.pinned_meetings(), 2);
        let rev = revs.place().unwrap();
        assert_eq!(&rev[5..], &[2, 2]);
        let cfg = GameConfig::new(2, 7, 3);
        let mut revs = UnicyclicRevs::new(&g, 2, 7, 3).unwrap();
        let (o, _) = play_match(&g, cfg, &mut revs, &mut GreedySpies::new(&g, 2, 3), 500);
        assert_eq!(o.winner, Team::Revolutionaries);
        let mut revs = UnicyclicRevs::new(&g, 2, 7, 3).unwrap();
        let (o, _) = play_match(
            &g,
            cfg,
            &mut revs,
            &mut UnicyclicSpies::new(&g, cfg).unwrap(),
            500,
        );
        assert_eq!(o.winner, Team::Revolutionaries);
    }

    #[test]
    fn no_trees_means_no_pins() {
        let mut revs = UnicyclicRevs::new(&Graph::cycle(6), 2, 5, 2).unwrap();
        assert_eq!(revs.pinned_meetings(), 0);
        assert_eq!(revs.place().unwrap().iter().sum::<u32>(), 5);
    }

    #[test]
    fn c6_pendant() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6)])
            .unwrap();
        let cfg = GameConfig::new(2, 5, 2);
        let mut revs = UnicyclicRevs::new(&g, 2, 5, 2).unwrap();
        assert_eq!(revs.pinned_meetings(), 1);
        let (o, _) = play_match(&g, cfg, &mut revs, &mut GreedySpies::new(&g, 2, 2), 500);
        assert_eq!(o.winner, Team::Revolutionaries);
    }
}
