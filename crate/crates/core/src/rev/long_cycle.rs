//! Revolutionaries beating `s` spies on a cycle of length at least `s + 3`
//! with more than `s*m` revolutionaries.
//!
//! One spy `S` is singled out. While `S` guards more than `rho = r - s*m`
//! revolutionaries, the group on `S` splits to both neighbors and the
//! neighbors make room further out (distract). Afterwards the
//! revolutionaries keep `S`'s closed neighborhood nearly empty and pack
//! themselves as far from `S` as possible, at most `m` per vertex, until
//! they can form meetings that the spies cannot cover in one move (strike).

use std::fmt;

use crate::engine::{Position, RevStrategy, StrategyError};
use crate::flow::{validate_team_move, MinCostFlow};
use crate::graph::{classify, find_cycle, Graph, GraphClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Placement, before the first move.
    Flood,
    Distract,
    Shorten,
    Strike,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Flood => "Flood",
            Phase::Distract => "Distract",
            Phase::Shorten => "Shorten",
            Phase::Strike => "Strike",
        })
    }
}

/// What the revolutionaries saw and chose in one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundLog {
    pub round: u64,
    pub phase: Phase,
    /// Vertex of the singled-out spy when the round started.
    pub spy: Option<usize>,
    /// Revolutionaries on that vertex when the round started.
    pub guarded: u32,
    /// The spy was designated this round rather than tracked from the last.
    pub fresh: bool,
    /// Largest count on any cycle vertex after the move.
    pub max_load: u32,
}

#[derive(Debug, Clone)]
pub struct LongCycleRevs {
    g: Graph,
    cycle: Vec<usize>,
    pos_of: Vec<Option<usize>>,
    m: u32,
    s: u32,
    r: u32,
    rho: u32,
    /// Revolutionaries held off the cycle; they never move.
    pinned: Vec<u32>,
    target: Option<usize>,
    last_spy: Option<Vec<u32>>,
    phase: Phase,
    round: u64,
    log: Vec<RoundLog>,
}

fn cyc_dist(a: usize, b: usize, len: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(len - d)
}

impl LongCycleRevs {
    /// Strategy on a cycle graph. Requires `l >= s + 3` and `r > s*m`.
    pub fn new(g: &Graph, m: u32, r: u32, s: u32) -> Result<Self, StrategyError> {
        if classify(g) != GraphClass::Cycle {
            return Err(StrategyError::PreconditionViolated(
                "graph is not a cycle".into(),
            ));
        }
        let cycle = find_cycle(g)?.expect("cycle");
        LongCycleRevs::on_cycle(g, cycle, m, r, s, vec![0; g.n()], true)
    }

    /// Same strategy without checking the length and count preconditions.
    pub fn unchecked(g: &Graph, m: u32, r: u32, s: u32) -> Result<Self, StrategyError> {
        let cycle = find_cycle(g)?
            .ok_or_else(|| StrategyError::PreconditionViolated("graph has no cycle".into()))?;
        LongCycleRevs::on_cycle(g, cycle, m, r, s, vec![0; g.n()], false)
    }

    /// Plays `r` revolutionaries on `cycle` against `s` spies there;
    /// `pinned` revolutionaries elsewhere stay put.
    pub(crate) fn on_cycle(
        g: &Graph,
        cycle: Vec<usize>,
        m: u32,
        r: u32,
        s: u32,
        pinned: Vec<u32>,
        checked: bool,
    ) -> Result<Self, StrategyError> {
        let len = cycle.len();
        if checked {
            if len < s as usize + 3 {
                return Err(StrategyError::PreconditionViolated(format!(
                    "cycle length {len} is below s + 3 = {}",
                    s + 3
                )));
            }
            if r <= s * m {
                return Err(StrategyError::PreconditionViolated(format!(
                    "{r} revolutionaries cannot outnumber {s} spies with m = {m}"
                )));
            }
        }
        let mut pos_of = vec![None; g.n()];
        for (i, &v) in cycle.iter().enumerate() {
            pos_of[v] = Some(i);
        }
        Ok(LongCycleRevs {
            g: g.clone(),
            cycle,
            pos_of,
            m,
            s,
            r,
            rho: r.saturating_sub(s * m).max(1),
            pinned,
            target: None,
            last_spy: None,
            phase: Phase::Flood,
            round: 0,
            log: Vec::new(),
        })
    }

    pub fn log(&self) -> &[RoundLog] {
        &self.log
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// Cap on what the singled-out spy may guard before shortening starts.
    pub fn spies(&self) -> u32 {
        self.s
    }

    pub fn rho(&self) -> u32 {
        self.rho
    }

    /// Follows `S` through the spies' move; returns whether it had to be
    /// designated afresh.
    fn track(&mut self, spy: &[u32], x: &[u32]) -> bool {
        if let (Some(prev), Some(p)) = (&self.last_spy, self.target) {
            let v = self.cycle[p];
            self.target = match validate_team_move(&self.g, prev, spy) {
                Ok(flow) if flow.stay[v] > 0 => Some(p),
                Ok(flow) => flow
                    .traverse
                    .iter()
                    .find(|e| e.0 == v)
                    .and_then(|e| self.pos_of[e.1]),
                Err(_) => None,
            };
        }
        let fresh = self.target.is_none_or(|p| spy[self.cycle[p]] == 0);
        if fresh {
            self.target = (0..self.cycle.len())
                .filter(|&p| spy[self.cycle[p]] > 0)
                .min_by_key(|&p| (x[p], self.cycle[p]));
        }
        self.last_spy = Some(spy.to_vec());
        fresh
    }

    /// Legal move of the cycle revolutionaries with `after[p] <= cap[p]`,
    /// minimizing the summed cost.
    fn capped_move(
        &self,
        x: &[u32],
        cap: &[u32],
        cost: impl Fn(usize, usize) -> i64,
    ) -> Option<Vec<u32>> {
        let len = self.cycle.len();
        let total: u32 = x.iter().sum();
        let (src, sink) = (2 * len, 2 * len + 1);
        let mut net = MinCostFlow::new(2 * len + 2);
        let mut outs = Vec::with_capacity(len);
        for p in 0..len {
            if x[p] > 0 {
                net.add_edge(src, p, x[p] as i64, 0);
                for q in [p, (p + 1) % len, (p + len - 1) % len] {
                    net.add_edge(p, len + q, x[p] as i64, cost(p, q));
                }
            }
            outs.push(net.add_edge(len + p, sink, cap[p] as i64, 0));
        }
        let (flow, _) = net.run(src, sink);
        (flow == total as i64).then(|| outs.iter().map(|&e| net.flow_on(e) as u32).collect())
    }

    /// Sends `m` revolutionaries to each target within one step; the rest
    /// stay put.
    fn fill(&self, x: &[u32], targets: &[usize]) -> Option<Vec<u32>> {
        let len = self.cycle.len();
        let (src, sink) = (2 * len, 2 * len + 1);
        let mut net = MinCostFlow::new(2 * len + 2);
        let mut arcs = Vec::new();
        for p in (0..len).filter(|&p| x[p] > 0) {
            net.add_edge(src, p, x[p] as i64, 0);
            for &q in targets {
                if cyc_dist(p, q, len) <= 1 {
                    arcs.push((
                        p,
                        q,
                        net.add_edge(p, len + q, x[p] as i64, i64::from(p != q)),
                    ));
                }
            }
        }
        for &q in targets {
            net.add_edge(len + q, sink, self.m as i64, 0);
        }
        let (flow, _) = net.run(src, sink);
        if flow != (self.m as usize * targets.len()) as i64 {
            return None;
        }
        let mut after = x.to_vec();
        for (p, q, e) in arcs {
            let f = net.flow_on(e) as u32;
            after[p] -= f;
            after[q] += f;
        }
        Some(after)
    }

    /// Largest number of `meetings` the spies can cover after one move.
    fn coverable(&self, spy: &[u32], meetings: &[usize]) -> usize {
        let n = self.g.n();
        let (src, sink) = (2 * n, 2 * n + 1);
        let mut net = MinCostFlow::new(2 * n + 2);
        for u in (0..n).filter(|&u| spy[u] > 0) {
            net.add_edge(src, u, spy[u] as i64, 0);
            for &v in meetings {
                if u == v || self.g.is_adjacent(u, v) {
                    net.add_edge(u, n + v, 1, 0);
                }
            }
        }
        for &v in meetings {
            net.add_edge(n + v, sink, 1, 0);
        }
        net.run(src, sink).0 as usize
    }

    /// A move after which some meeting is out of the spies' reach.
    fn strike(&self, x: &[u32], spy: &[u32]) -> Option<Vec<u32>> {
        let len = self.cycle.len();
        let pinned: Vec<usize> = (0..self.g.n())
            .filter(|&v| self.pinned[v] >= self.m)
            .collect();
        let most = ((x.iter().sum::<u32>() / self.m) as usize).min(len);
        for size in (1..=most).rev() {
            let mut pick: Vec<usize> = (0..size).collect();
            loop {
                let mut meetings: Vec<usize> = pick.iter().map(|&p| self.cycle[p]).collect();
                meetings.extend(&pinned);
                if self.coverable(spy, &meetings) < meetings.len() {
                    if let Some(after) = self.fill(x, &pick) {
                        return Some(after);
                    }
                }
                // next combination
                let mut i = size;
                while i > 0 && pick[i - 1] == len - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                pick[i - 1] += 1;
                for j in i..size {
                    pick[j] = pick[j - 1] + 1;
                }
            }
        }
        None
    }

    fn away_cost(&self, p: usize) -> impl Fn(usize, usize) -> i64 {
        let len = self.cycle.len();
        let w = self.r as i64 + 1;
        move |u, v| w * (len - cyc_dist(v, p, len)) as i64 + i64::from(u != v)
    }

    fn plan(&mut self, x: &[u32], spy: &[u32]) -> Vec<u32> {
        let len = self.cycle.len();
        let m = self.m;
        if let Some(after) = self.strike(x, spy) {
            self.phase = Phase::Strike;
            return after;
        }
        let Some(p) = self.target else {
            return x.to_vec();
        };
        let (l, rgt) = ((p + len - 1) % len, (p + 1) % len);
        let mut tries: Vec<Vec<u32>> = Vec::new();
        if x[p] > self.rho {
            self.phase = Phase::Distract;
            let half = x[p].div_ceil(2);
            for at_p in [0, half] {
                let mut cap = vec![m; len];
                cap[p] = at_p;
                cap[l] = half;
                cap[rgt] = half;
                tries.push(cap);
            }
        } else {
            self.phase = Phase::Shorten;
            for near in [0, self.rho] {
                let mut cap = vec![m; len];
                cap[p] = self.rho.min(x[p].max(near));
                cap[l] = near;
                cap[rgt] = near;
                tries.push(cap);
            }
        }
        tries.push(vec![m.max(*x.iter().max().unwrap_or(&0)); len]);
        let cost = self.away_cost(p);
        tries
            .iter()
            .find_map(|cap| self.capped_move(x, cap, &cost))
            .unwrap_or_else(|| x.to_vec())
    }
}

impl RevStrategy for LongCycleRevs {
    fn name(&self) -> &str {
        "long-cycle"
    }

    fn place(&mut self) -> Result<Vec<u32>, StrategyError> {
        let len = self.cycle.len();
        let mut out = self.pinned.clone();
        let mut left = self.r;
        for p in 0..len {
            let k = left.min(self.m);
            out[self.cycle[p]] += k;
            left -= k;
        }
        out[self.cycle[0]] += left;
        self.target = None;
        self.last_spy = None;
        self.phase = Phase::Flood;
        self.round = 0;
        self.log.clear();
        Ok(out)
    }

    fn step(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        self.round += 1;
        let x: Vec<u32> = self.cycle.iter().map(|&v| pos.rev[v]).collect();
        let fresh = self.track(&pos.spy, &x);
        let guarded = self.target.map_or(0, |p| x[p]);
        let after = self.plan(&x, &pos.spy);
        self.log.push(RoundLog {
            round: self.round,
            phase: self.phase,
            spy: self.target.map(|p| self.cycle[p]),
            guarded,
            fresh,
            max_load: after.iter().copied().max().unwrap_or(0),
        });
        let mut out = pos.rev.clone();
        for (p, &v) in self.cycle.iter().enumerate() {
            out[v] = after[p];
        }
        Ok(out)
    }

    fn annotation(&self) -> Option<String> {
        let spy = self
            .target
            .map_or("-".to_string(), |p| self.cycle[p].to_string());
        let guarded = self.log.last().map_or(0, |l| l.guarded);
        Some(format!("phase={} S={spy} guarded={guarded}", self.phase))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_match, GameConfig, Team};
    use crate::spy::{GreedySpies, UnicyclicSpies};

    #[test]
    fn preconditions() {
        assert!(LongCycleRevs::new(&Graph::cycle(5), 2, 7, 3).is_err());
        assert!(LongCycleRevs::new(&Graph::cycle(6), 2, 6, 3).is_err());
        assert!(LongCycleRevs::new(&Graph::path(6), 2, 7, 3).is_err());
        assert!(LongCycleRevs::new(&Graph::cycle(6), 2, 7, 3).is_ok());
    }

    #[test]
    fn distract_halves_guarded_group() {
        // m = 8: S sits on 8 revolutionaries
        let g = Graph::cycle(7);
        let mut revs = LongCycleRevs::unchecked(&g, 8, 9, 1).unwrap();
        let pos = Position::new(vec![8, 0, 0, 0, 1, 0, 0], vec![1, 0, 0, 0, 0, 0, 0]);
        let next = revs.step(&pos).unwrap();
        assert_eq!(revs.phase(), Phase::Distract);
        assert_eq!(next[0], 0);
        assert!(next[1] <= 4 && next[6] <= 4);
    }

    #[test]
    fn lone_guarded_revolutionary_means_shorten() {
        let g = Graph::cycle(6);
        let mut revs = LongCycleRevs::new(&g, 2, 3, 1).unwrap();
        let pos = Position::new(vec![1, 0, 0, 2, 0, 0], vec![1, 0, 0, 0, 0, 0]);
        revs.step(&pos).unwrap();
        assert_ne!(revs.phase(), Phase::Distract);
    }

    #[test]
    fn beats_floor_spies_on_c6() {
        let g = Graph::cycle(6);
        let cfg = GameConfig::new(2, 7, 3);
        let mut revs = LongCycleRevs::new(&g, 2, 7, 3).unwrap();
        let (o, _) = play_match(&g, cfg, &mut revs, &mut GreedySpies::new(&g, 2, 3), 500);
        assert_eq!(o.winner, Team::Revolutionaries);
        let mut revs = LongCycleRevs::new(&g, 2, 7, 3).unwrap();
        let (o, tr) = play_match(
            &g,
            cfg,
            &mut revs,
            &mut UnicyclicSpies::new(&g, cfg).unwrap(),
            500,
        );
        assert_eq!(o.winner, Team::Revolutionaries, "{}", tr.to_text());
    }
}
