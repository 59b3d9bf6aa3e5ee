//! Spies with the floor budget `floor(r/m)` on a cycle or in the cyclic
//! component of a unicyclic graph.
//!
//! Trees keep the tree-strategy targets. The remaining spies are loose and
//! sit on cycle vertices. Each round the planner enumerates distributions of
//! the loose spies that guard every cycle meeting, ranks them by how far
//! they stray from the preferred shape (reserves parked at mates, one loose
//! spy per vertex), and takes the cheapest one reachable in a single move.

use crate::engine::StrategyError;
use crate::flow::validate_team_move;
use crate::graph::{root_within, Graph, UnicyclicDecomposition};
use crate::spy::tree::TreeSpyState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmallMode {
    /// Bare cycle with `l <= s + 2`.
    ShortCycle,
    /// Attached trees each reserve `|V(T)|` spies at their mate.
    Reserved,
    /// Triangle: trees of `G - E(C)` rooted at the three cycle vertices,
    /// surplus spies on the roots.
    Triangle,
}

impl SmallMode {
    pub fn label(self) -> &'static str {
        match self {
            SmallMode::ShortCycle => "Short",
            SmallMode::Reserved => "Case1",
            SmallMode::Triangle => "Case2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Guarded {
    state: TreeSpyState,
    /// Index into the cycle of the vertex the tree hangs from.
    anchor: usize,
    reserve: u32,
}

#[derive(Debug, Clone)]
pub struct GuardPlanner {
    mode: SmallMode,
    g: Graph,
    m: u32,
    budget: u32,
    cycle: Vec<usize>,
    trees: Vec<Guarded>,
    spy: Vec<u32>,
}

/// Distributions of `total` loose spies over `len` slots, at least one on
/// every slot in `must`, in lexicographic order.
fn compositions(total: u32, len: usize, must: &[bool]) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, must: &[bool], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let len = must.len();
        if i + 1 == len {
            if !must[i] || left > 0 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let need_after = must[i + 1..].iter().filter(|&&b| b).count() as u32;
        let lo = u32::from(must[i]);
        if left < lo + need_after {
            return;
        }
        for c in (lo..=left - need_after).rev() {
            cur.push(c);
            rec(i + 1, left - c, must, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, must, &mut Vec::with_capacity(len), &mut out);
    out.reverse();
    out
}

impl GuardPlanner {
    /// Builds the planner for the cyclic component described by `dec`.
    /// `budget` is the number of spies assigned to that component.
    pub fn new(
        mode: SmallMode,
        g: &Graph,
        dec: &UnicyclicDecomposition,
        m: u32,
        budget: u32,
    ) -> Result<Self, StrategyError> {
        let mut trees = Vec::new();
        match mode {
            SmallMode::ShortCycle => {
                if dec.attached().next().is_some() {
                    return Err(StrategyError::PreconditionViolated(
                        "cycle has attached trees".into(),
                    ));
                }
            }
            SmallMode::Reserved => {
                for at in dec.attached() {
                    let mate = at.mate.expect("attached");
                    let anchor = dec.cycle_pos[mate].expect("mate on cycle");
                    let (_, state) =
                        TreeSpyState::place_capped(at.tree.clone(), &vec![0; g.n()], m);
                    trees.push(Guarded {
                        state,
                        anchor,
                        reserve: at.tree.size() as u32,
                    });
                }
            }
            SmallMode::Triangle => {
                if dec.len() != 3 {
                    return Err(StrategyError::PreconditionViolated(format!(
                        "triangle mode on a cycle of length {}",
                        dec.len()
                    )));
                }
                for (i, &v) in dec.cycle.iter().enumerate() {
                    let tree = root_within(g, v, |w| w == v || !dec.on_cycle(w))?;
                    let (_, state) = TreeSpyState::place(tree, &vec![0; g.n()], m);
                    trees.push(Guarded {
                        state,
                        anchor: i,
                        reserve: 0,
                    });
                }
            }
        }
        Ok(GuardPlanner {
            mode,
            g: g.clone(),
            m,
            budget,
            cycle: dec.cycle.clone(),
            trees,
            spy: vec![0; g.n()],
        })
    }

    pub fn mode(&self) -> SmallMode {
        self.mode
    }

    pub fn spies(&self) -> &[u32] {
        &self.spy
    }

    fn reset_trees(&mut self, rev: &[u32]) {
        for t in &mut self.trees {
            let tree = t.state.tree().clone();
            t.state = if t.state.is_capped() {
                TreeSpyState::place_capped(tree, rev, self.m).1
            } else {
                TreeSpyState::place(tree, rev, self.m).1
            };
        }
    }

    /// Initial layout for revolutionaries at `rev`.
    pub fn place(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        self.reset_trees(rev);
        self.spy = self.choose(rev, None)?;
        Ok(self.spy.clone())
    }

    pub fn respond(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        for t in &mut self.trees {
            t.state.update(rev)?;
        }
        let cur = self.spy.clone();
        self.spy = self.choose(rev, Some(&cur))?;
        Ok(self.spy.clone())
    }

    fn choose(&self, rev: &[u32], current: Option<&[u32]>) -> Result<Vec<u32>, StrategyError> {
        let n = self.g.n();
        let len = self.cycle.len();
        let mut base = vec![0u32; n];
        let mut want = vec![0u32; len];
        for t in &self.trees {
            for &v in t.state.tree().vertices() {
                base[v] += t.state.targets()[v];
            }
            want[t.anchor] += t.reserve.saturating_sub(t.state.total());
        }
        let used: u32 = base.iter().sum();
        let loose = self.budget.checked_sub(used).ok_or_else(|| {
            StrategyError::InvariantBroken(format!(
                "trees need {used} spies, budget is {}",
                self.budget
            ))
        })?;
        let must: Vec<bool> = self
            .cycle
            .iter()
            .map(|&v| rev[v] >= self.m && base[v] == 0)
            .collect();
        let penalty = |c: &[u32]| -> u32 {
            if self.mode == SmallMode::Triangle {
                return 0;
            }
            (0..len)
                .map(|i| want[i].saturating_sub(c[i]) + c[i].saturating_sub(want[i] + 1))
                .sum()
        };
        let mut cands: Vec<(u32, Vec<u32>)> = compositions(loose, len, &must)
            .into_iter()
            .map(|c| (penalty(&c), c))
            .collect();
        cands.sort();
        let layout = |c: &[u32]| {
            let mut full = base.clone();
            for (i, &k) in c.iter().enumerate() {
                full[self.cycle[i]] += k;
            }
            full
        };
        let Some(cur) = current else {
            return cands.first().map(|(_, c)| layout(c)).ok_or_else(|| {
                StrategyError::InvariantBroken(format!(
                    "{loose} loose spies cannot guard the cycle"
                ))
            });
        };
        let mut i = 0;
        while i < cands.len() {
            let p = cands[i].0;
            let mut best: Option<(u32, Vec<u32>)> = None;
            while i < cands.len() && cands[i].0 == p {
                let full = layout(&cands[i].1);
                if let Ok(flow) = validate_team_move(&self.g, cur, &full) {
                    let cost = flow.moved();
                    if best.as_ref().is_none_or(|b| cost < b.0) {
                        best = Some((cost, full));
                    }
                }
                i += 1;
            }
            if let Some((_, full)) = best {
                return Ok(full);
            }
        }
        Err(StrategyError::InvariantBroken(format!(
            "no reachable layout guards every meeting (revolutionaries {rev:?}, spies {cur:?})"
        )))
    }

    /// Reserve spies still parked per cycle vertex, for annotations.
    pub fn annotation(&self) -> String {
        let mut parts = vec![format!("mode={}", self.mode.label())];
        if self.mode == SmallMode::Reserved {
            let res: Vec<String> = self
                .trees
                .iter()
                .map(|t| {
                    let v = self.cycle[t.anchor];
                    format!("{v}:{}", t.reserve.saturating_sub(t.state.total()))
                })
                .collect();
            parts.push(format!("reserve={}", res.join(",")));
        }
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{unguarded_meetings, Position};
    use crate::graph::decompose_unicyclic;

    #[test]
    fn composition_enumeration() {
        assert_eq!(
            compositions(2, 2, &[false, false]),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(
            compositions(2, 3, &[true, false, true]),
            vec![vec![1, 0, 1]]
        );
        assert!(compositions(1, 2, &[true, true]).is_empty());
    }

    #[test]
    fn short_cycle_regroup() {
        let g = Graph::cycle(4);
        let dec = decompose_unicyclic(&g).unwrap();
        let mut p = GuardPlanner::new(SmallMode::ShortCycle, &g, &dec, 2, 2).unwrap();
        let spy = p.place(&[2, 2, 1, 0]).unwrap();
        assert_eq!(spy, vec![1, 1, 0, 0]);
        let spy = p.respond(&[2, 1, 2, 0]).unwrap();
        assert_eq!(spy, vec![1, 0, 1, 0]);
    }

    #[test]
    fn short_cycle_idle_revs() {
        let g = Graph::cycle(4);
        let dec = decompose_unicyclic(&g).unwrap();
        let mut p = GuardPlanner::new(SmallMode::ShortCycle, &g, &dec, 2, 2).unwrap();
        let spy = p.place(&[2, 2, 1, 0]).unwrap();
        for _ in 0..3 {
            assert_eq!(p.respond(&[2, 2, 1, 0]).unwrap(), spy);
        }
    }

    #[test]
    fn reserved_spy_waits_at_mate() {
        // C4 with a pendant 4 on vertex 0; m=2, r=7, s=3
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let dec = decompose_unicyclic(&g).unwrap();
        let mut p = GuardPlanner::new(SmallMode::Reserved, &g, &dec, 2, 3).unwrap();
        let rev = [2, 2, 2, 1, 0];
        let spy = p.place(&rev).unwrap();
        assert!(spy[0] >= 1);
        assert!(unguarded_meetings(&Position::new(rev.to_vec(), spy), 2).is_empty());
        let rev2 = [0, 2, 2, 1, 2];
        let spy2 = p.respond(&rev2).unwrap();
        assert_eq!(spy2[4], 1);
        assert!(unguarded_meetings(&Position::new(rev2.to_vec(), spy2), 2).is_empty());
    }

    #[test]
    fn triangle_frees_spies_from_other_roots() {
        // triangle 0,1,2 with pendants 3,4,5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        let dec = decompose_unicyclic(&g).unwrap();
        let mut p = GuardPlanner::new(SmallMode::Triangle, &g, &dec, 2, 2).unwrap();
        let spy = p.place(&[1, 2, 2, 0, 0, 0]).unwrap();
        assert_eq!(spy, vec![0, 1, 1, 0, 0, 0]);
        let spy = p.respond(&[5, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(spy, vec![2, 0, 0, 0, 0, 0]);
    }
}
