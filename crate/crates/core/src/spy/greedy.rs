//! Greedy spies: each round, match as many meetings as possible with spies
//! at distance at most one, preferring spies that are already there.

use crate::engine::{Position, SpyStrategy, StrategyError};
use crate::flow::MinCostFlow;
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct GreedySpies {
    g: Graph,
    m: u32,
    s: u32,
    spy: Vec<u32>,
}

impl GreedySpies {
    pub fn new(g: &Graph, m: u32, s: u32) -> Self {
        GreedySpies {
            g: g.clone(),
            m,
            s,
            spy: vec![0; g.n()],
        }
    }

    /// Best response from `spy` to revolutionaries at `rev`.
    pub fn step(g: &Graph, m: u32, spy: &[u32], rev: &[u32]) -> Vec<u32> {
        let n = g.n();
        let meetings: Vec<usize> = (0..n).filter(|&v| rev[v] >= m).collect();
        if meetings.is_empty() {
            return spy.to_vec();
        }
        let src = 2 * n;
        let sink = 2 * n + 1;
        let mut net = MinCostFlow::new(2 * n + 2);
        let mut arcs = Vec::new();
        for u in (0..n).filter(|&u| spy[u] > 0) {
            net.add_edge(src, u, spy[u] as i64, 0);
            for &v in &meetings {
                if v == u || g.is_adjacent(u, v) {
                    let cost = if v == u { 0 } else { 1 };
                    arcs.push((u, v, net.add_edge(u, n + v, 1, cost)));
                }
            }
        }
        for &v in &meetings {
            net.add_edge(n + v, sink, 1, 0);
        }
        net.run(src, sink);
        let mut out = spy.to_vec();
        for (u, v, e) in arcs {
            if net.flow_on(e) > 0 {
                out[u] -= 1;
                out[v] += 1;
            }
        }
        out
    }
}

impl SpyStrategy for GreedySpies {
    fn name(&self) -> &str {
        "greedy"
    }

    fn place(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        let n = self.g.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| {
            (
                std::cmp::Reverse(rev[v] >= self.m),
                std::cmp::Reverse(rev[v]),
                v,
            )
        });
        let mut spy = vec![0; n];
        for &v in order.iter().cycle().take(self.s as usize) {
            spy[v] += 1;
        }
        self.spy = spy.clone();
        Ok(spy)
    }

    fn respond(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        self.spy = GreedySpies::step(&self.g, self.m, &pos.spy, &pos.rev);
        Ok(self.spy.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_onto_adjacent_meeting() {
        let g = Graph::path(3);
        assert_eq!(
            GreedySpies::step(&g, 2, &[1, 0, 0], &[0, 2, 0]),
            vec![0, 1, 0]
        );
    }

    #[test]
    fn keeps_guard_in_place() {
        let g = Graph::path(3);
        assert_eq!(
            GreedySpies::step(&g, 2, &[0, 1, 1], &[0, 2, 2]),
            vec![0, 1, 1]
        );
    }

    #[test]
    fn placement_covers_meetings_first() {
        let mut sp = GreedySpies::new(&Graph::path(4), 2, 2);
        assert_eq!(sp.place(&[0, 2, 1, 3]).unwrap(), vec![0, 1, 0, 1]);
    }
}
