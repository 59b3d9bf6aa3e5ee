//! Spies on unicyclic graphs.
//!
//! With `ceil(r/m)` spies the cycle runs the follower strategy while every
//! attached tree runs the tree strategy. Revolutionaries that leave the cycle
//! for a tree are replaced by stationary fake units at the tree's mate, so
//! the cycle always carries exactly `m` units per cycle spy. When a tree
//! gains a multiple of `m`, a block of `m` units at the mate (which holds a
//! spy) is cut from the cycle and its spy steps into the tree; when a tree
//! loses one, the spy steps back and a block is spliced in.
//!
//! With `floor(r/m)` spies the strategy delegates to [`GuardPlanner`].
//! Placement always starts from a shadow position with every revolutionary
//! pulled onto the cycle and replays the walk out to the real start.

use std::collections::VecDeque;

use crate::engine::{GameConfig, Position, SpyStrategy, StrategyError};
use crate::flow::MoveFlow;
use crate::graph::{decompose_unicyclic, Graph, RootedTree, UnicyclicDecomposition};
use crate::spy::cycle::CycleSpyState;
use crate::spy::greedy::GreedySpies;
use crate::spy::small::{GuardPlanner, SmallMode};
use crate::spy::tree::{plan_components, ComponentPlan, TreeSpyState};

/// Tree hanging off the cycle, with its fake units at the mate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttachedSpies {
    pub state: TreeSpyState,
    pub mate: usize,
    pub mate_pos: usize,
    pub fake: u32,
}

/// Follower on the cycle plus tree strategies on the attached trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositeSpyState {
    n: usize,
    m: u32,
    cycle: CycleSpyState,
    attached: Vec<AttachedSpies>,
}

impl CompositeSpyState {
    /// Placement with every revolutionary of the cyclic component on the
    /// cycle; revolutionaries outside that component are ignored.
    pub fn place(
        dec: &UnicyclicDecomposition,
        rev: &[u32],
        m: u32,
    ) -> Result<(Vec<u32>, Self), StrategyError> {
        let n = rev.len();
        let mut attached = Vec::new();
        for at in dec.attached() {
            if let Some(&v) = at.tree.vertices().iter().find(|&&v| rev[v] > 0) {
                return Err(StrategyError::PreconditionViolated(format!(
                    "revolutionary at {v} off the cycle"
                )));
            }
            let mate = at.mate.expect("attached");
            let (_, state) = TreeSpyState::place(at.tree.clone(), rev, m);
            attached.push(AttachedSpies {
                state,
                mate,
                mate_pos: dec.cycle_pos[mate].expect("mate"),
                fake: 0,
            });
        }
        let mut on_cycle = vec![0; n];
        for &v in &dec.cycle {
            on_cycle[v] = rev[v];
        }
        let (_, cycle) = CycleSpyState::place(dec.cycle.clone(), &on_cycle, m)?;
        let st = CompositeSpyState {
            n,
            m,
            cycle,
            attached,
        };
        Ok((st.layout(), st))
    }

    pub fn cycle(&self) -> &CycleSpyState {
        &self.cycle
    }

    pub fn attached(&self) -> &[AttachedSpies] {
        &self.attached
    }

    pub fn layout(&self) -> Vec<u32> {
        let mut out = self.cycle.spy_counts(self.n);
        for at in &self.attached {
            for &v in at.state.tree().vertices() {
                out[v] += at.state.targets()[v];
            }
        }
        out
    }

    fn unit_counts(&self, rev: &[u32], fakes: &[u32]) -> Vec<u32> {
        let mut counts: Vec<u32> = self.cycle.cycle().iter().map(|&v| rev[v]).collect();
        let (pad_pos, pads) = self.cycle.pads();
        counts[pad_pos] += pads;
        for (at, &f) in self.attached.iter().zip(fakes) {
            counts[at.mate_pos] += f;
        }
        counts
    }

    /// Responds to `new_rev`; returns the spy flow.
    pub fn respond(&mut self, new_rev: &[u32]) -> Result<MoveFlow, StrategyError> {
        let m = self.m;
        let before = self.layout();
        let mut traverse = Vec::new();
        let mut deltas = Vec::with_capacity(self.attached.len());
        let mut fakes = Vec::with_capacity(self.attached.len());
        for at in &self.attached {
            let a2: u32 = at.state.tree().vertices().iter().map(|&v| new_rev[v]).sum();
            deltas.push((a2 / m) as i64 - (at.state.revs() / m) as i64);
            fakes.push(a2 % m);
        }
        for (at, &d) in self.attached.iter().zip(&deltas) {
            for _ in 0..d.max(0) {
                self.cycle.remove_block(at.mate_pos)?;
            }
            if d > 0 {
                traverse.push((at.mate, at.state.tree().root, d as u32));
            }
        }
        let mut counts = self.unit_counts(new_rev, &fakes);
        for (at, &d) in self.attached.iter().zip(&deltas) {
            if d < 0 {
                let need = m * (-d) as u32;
                if counts[at.mate_pos] < need {
                    return Err(StrategyError::CycleConditionBroken(format!(
                        "{} units at mate {}, returning spies need {need}",
                        counts[at.mate_pos], at.mate
                    )));
                }
                counts[at.mate_pos] -= need;
            }
        }
        for (from, to) in self.cycle.reindex(&counts)? {
            if from != to {
                traverse.push((self.cycle.cycle()[from], self.cycle.cycle()[to], 1));
            }
        }
        for (at, &d) in self.attached.iter().zip(&deltas) {
            for _ in 0..(-d).max(0) {
                self.cycle.insert_block(at.mate_pos);
            }
            if d < 0 {
                traverse.push((at.state.tree().root, at.mate, (-d) as u32));
            }
        }
        for ((at, &d), f) in self.attached.iter_mut().zip(&deltas).zip(fakes) {
            let plan = at.state.update(new_rev)?;
            if plan.root_exchange != d {
                return Err(StrategyError::InvariantBroken(format!(
                    "tree at {} expected exchange {d}, got {}",
                    at.state.tree().root,
                    plan.root_exchange
                )));
            }
            traverse.extend(plan.flow.traverse.iter().copied());
            at.fake = f;
        }
        let mut stay = before.clone();
        for &(u, _, k) in &traverse {
            stay[u] = stay[u].checked_sub(k).ok_or_else(|| {
                StrategyError::InvariantBroken(format!("more spies leave {u} than were there"))
            })?;
        }
        let flow = MoveFlow::from_parts(stay, traverse);
        if flow.after() != self.layout() {
            return Err(StrategyError::InvariantBroken(
                "composite flow does not reach the new layout".into(),
            ));
        }
        Ok(flow)
    }

    /// Cycle units equal actual revolutionaries plus fakes plus pads, and
    /// the follower guards every position with `m` units.
    pub fn check_cycle_condition(&self, rev: &[u32]) -> Result<(), String> {
        let fakes: Vec<u32> = self.attached.iter().map(|a| a.fake).collect();
        let expect = self.unit_counts(rev, &fakes);
        if self.cycle.unit_counts() != expect {
            return Err(format!(
                "cycle units {:?}, expected {:?}",
                self.cycle.unit_counts(),
                expect
            ));
        }
        for at in &self.attached {
            if at.fake != at.state.revs() % self.m {
                return Err(format!(
                    "tree at {} has {} fakes",
                    at.state.tree().root,
                    at.fake
                ));
            }
        }
        self.cycle.check_guarding()
    }

    pub fn annotation(&self) -> String {
        let mut per_mate: Vec<(usize, u32)> = Vec::new();
        for at in &self.attached {
            match per_mate.iter_mut().find(|e| e.0 == at.mate) {
                Some(e) => e.1 += at.fake,
                None => per_mate.push((at.mate, at.fake)),
            }
        }
        per_mate.sort_unstable();
        let fake: Vec<String> = per_mate.iter().map(|(v, f)| format!("{v}:{f}")).collect();
        format!(
            "fake={} mode=Large {}",
            fake.join(","),
            self.cycle.annotation()
        )
    }

    /// Hashable summary of the follower state.
    pub fn key(&self) -> Vec<u32> {
        let mut k: Vec<u32> = self.cycle.units().iter().map(|&p| p as u32).collect();
        k.push(self.cycle.spy_positions().len() as u32);
        k.extend(self.cycle.spy_positions().iter().map(|&p| p as u32));
        k
    }
}

/// Revolutionary layouts for the shadow start: every revolutionary in
/// `comp` first sits at the cycle vertex it hangs from, then all walk
/// outward one edge per round. The last layout is `rev`.
pub fn shadow_layouts(
    g: &Graph,
    dec: &UnicyclicDecomposition,
    comp: &[bool],
    rev: &[u32],
) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut queue: VecDeque<usize> = dec.cycle.iter().copied().collect();
    let mut seen = vec![false; n];
    for &v in &dec.cycle {
        seen[v] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let movers: Vec<usize> = (0..n).filter(|&v| comp[v] && rev[v] > 0).collect();
    let rounds = movers.iter().map(|&v| depth[v]).max().unwrap_or(0);
    (0..=rounds)
        .map(|k| {
            let mut out = rev.to_vec();
            for &v in &movers {
                out[v] -= rev[v];
                let mut u = v;
                for _ in 0..depth[v].saturating_sub(k) {
                    u = parent[u];
                }
                out[u] += rev[v];
            }
            out
        })
        .collect()
}

#[derive(Debug, Clone)]
enum Mode {
    Unplaced,
    /// One spy on every vertex.
    Cover,
    /// Fewer than `m` revolutionaries on the cyclic component.
    Idle,
    Large(Box<CompositeSpyState>),
    Small(Box<GuardPlanner>),
    /// Not enough spies for any guaranteed strategy.
    Greedy,
}

/// Spy strategy for cycles and unicyclic graphs (possibly with extra tree
/// components). Picks the follower strategy when `ceil(r_c/m)` spies are
/// available for the cyclic component and the floor-budget planner when the
/// graph shape allows it.
#[derive(Debug, Clone)]
pub struct UnicyclicSpies {
    g: Graph,
    cfg: GameConfig,
    force_large: bool,
    dec: UnicyclicDecomposition,
    comp: Vec<bool>,
    detached: Vec<RootedTree>,
    plans: Vec<ComponentPlan>,
    mode: Mode,
    surplus: u32,
    greedy: Vec<u32>,
}

impl UnicyclicSpies {
    pub fn new(g: &Graph, cfg: GameConfig) -> Result<Self, StrategyError> {
        let dec = decompose_unicyclic(g)?;
        let mut comp = vec![false; g.n()];
        for &v in &dec.cycle {
            comp[v] = true;
        }
        for at in dec.attached() {
            for &v in at.tree.vertices() {
                comp[v] = true;
            }
        }
        let detached = dec.detached().map(|at| at.tree.clone()).collect();
        Ok(UnicyclicSpies {
            g: g.clone(),
            cfg,
            force_large: false,
            dec,
            comp,
            detached,
            plans: Vec::new(),
            mode: Mode::Unplaced,
            surplus: 0,
            greedy: Vec::new(),
        })
    }

    /// Always runs the follower strategy; placement fails when fewer than
    /// `ceil(r_c/m)` spies are available.
    pub fn follower_only(g: &Graph, cfg: GameConfig) -> Result<Self, StrategyError> {
        let mut s = UnicyclicSpies::new(g, cfg)?;
        s.force_large = true;
        Ok(s)
    }

    pub fn decomposition(&self) -> &UnicyclicDecomposition {
        &self.dec
    }

    /// Name of the active mode.
    pub fn mode_name(&self) -> &'static str {
        match &self.mode {
            Mode::Unplaced => "Unplaced",
            Mode::Cover => "Cover",
            Mode::Idle => "Idle",
            Mode::Large(_) => "Large",
            Mode::Small(p) => p.mode().label(),
            Mode::Greedy => "Greedy",
        }
    }

    pub fn composite(&self) -> Option<&CompositeSpyState> {
        match &self.mode {
            Mode::Large(st) => Some(st),
            _ => None,
        }
    }

    fn park(&self) -> usize {
        self.dec.cycle[0]
    }

    fn layout(&self) -> Vec<u32> {
        let n = self.g.n();
        let mut out = match &self.mode {
            Mode::Cover => vec![1; n],
            Mode::Large(st) => st.layout(),
            Mode::Small(p) => p.spies().to_vec(),
            Mode::Greedy => return self.greedy.clone(),
            Mode::Idle | Mode::Unplaced => vec![0; n],
        };
        if !matches!(self.mode, Mode::Cover) {
            for p in &self.plans {
                p.write_spies(&mut out);
            }
        }
        out[self.park()] += self.surplus;
        out
    }

    fn select_small(&self, budget: u32, r_c: u32) -> Option<SmallMode> {
        let m = self.cfg.m;
        let len = self.dec.len() as u32;
        let t_c = self.comp.iter().filter(|&&b| b).count() as u32 - len;
        if budget != r_c / m || r_c.is_multiple_of(m) {
            return None;
        }
        if len == 3 && budget <= t_c {
            Some(SmallMode::Triangle)
        } else if budget > t_c && len <= budget - t_c + 2 {
            Some(if t_c == 0 {
                SmallMode::ShortCycle
            } else {
                SmallMode::Reserved
            })
        } else {
            None
        }
    }

    fn place_greedy(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        self.mode = Mode::Greedy;
        self.surplus = 0;
        let mut g = GreedySpies::new(&self.g, self.cfg.m, self.cfg.s);
        self.greedy = g.place(rev)?;
        Ok(self.greedy.clone())
    }
}

impl SpyStrategy for UnicyclicSpies {
    fn name(&self) -> &str {
        if self.force_large {
            "cycle"
        } else {
            "unicyclic"
        }
    }

    fn place(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        let m = self.cfg.m;
        let s = self.cfg.s;
        let n = self.g.n() as u32;
        self.plans.clear();
        if s >= n && !self.force_large {
            self.mode = Mode::Cover;
            self.surplus = s - n;
            return Ok(self.layout());
        }
        self.plans = plan_components(&self.detached, rev, m, true);
        let outside: u32 = self.plans.iter().map(ComponentPlan::spies_needed).sum();
        let r_c: u32 = (0..rev.len())
            .filter(|&v| self.comp[v])
            .map(|v| rev[v])
            .sum();
        let Some(budget) = s.checked_sub(outside) else {
            return self.place_greedy(rev);
        };
        let shadow = shadow_layouts(&self.g, &self.dec, &self.comp, rev);
        if r_c < m && !self.force_large {
            self.mode = Mode::Idle;
            self.surplus = budget;
            return Ok(self.layout());
        }
        if budget >= r_c.div_ceil(m) || self.force_large {
            if budget < r_c.div_ceil(m) {
                return Err(StrategyError::PreconditionViolated(format!(
                    "follower needs {} spies on the cyclic component, {budget} available",
                    r_c.div_ceil(m)
                )));
            }
            let (_, mut st) = CompositeSpyState::place(&self.dec, &shadow[0], m)?;
            for step in &shadow[1..] {
                st.respond(step)?;
            }
            self.surplus = budget - r_c.div_ceil(m);
            self.mode = Mode::Large(Box::new(st));
            return Ok(self.layout());
        }
        match self.select_small(budget, r_c) {
            Some(kind) => {
                let mut p = GuardPlanner::new(kind, &self.g, &self.dec, m, budget)?;
                p.place(&shadow[0])?;
                for step in &shadow[1..] {
                    p.respond(step)?;
                }
                self.surplus = 0;
                self.mode = Mode::Small(Box::new(p));
                Ok(self.layout())
            }
            None => self.place_greedy(rev),
        }
    }

    fn respond(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        if let Mode::Greedy = self.mode {
            self.greedy = GreedySpies::step(&self.g, self.cfg.m, &pos.spy, &pos.rev);
            return Ok(self.greedy.clone());
        }
        if !matches!(self.mode, Mode::Cover) {
            for p in &mut self.plans {
                p.update(&pos.rev)?;
            }
        }
        match &mut self.mode {
            Mode::Large(st) => {
                st.respond(&pos.rev)?;
            }
            Mode::Small(p) => {
                p.respond(&pos.rev)?;
            }
            Mode::Unplaced => {
                return Err(StrategyError::PreconditionViolated(
                    "respond before place".into(),
                ))
            }
            _ => {}
        }
        Ok(self.layout())
    }

    fn state_key(&self) -> Vec<u32> {
        match &self.mode {
            Mode::Large(st) => st.key(),
            _ => Vec::new(),
        }
    }

    fn annotation(&self) -> Option<String> {
        match &self.mode {
            Mode::Large(st) => Some(st.annotation()),
            Mode::Small(p) => Some(p.annotation()),
            _ => Some(format!("mode={}", self.mode_name())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::unguarded_meetings;
    use crate::flow::validate_team_move;

    fn triangle_pendant() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap()
    }

    #[test]
    fn shadow_walk_from_mate() {
        let g = triangle_pendant();
        let dec = decompose_unicyclic(&g).unwrap();
        let comp = vec![true; 4];
        let layouts = shadow_layouts(&g, &dec, &comp, &[0, 0, 0, 2]);
        assert_eq!(layouts, vec![vec![2, 0, 0, 0], vec![0, 0, 0, 2]]);
    }

    #[test]
    fn shadow_start_spy_follows_into_pendant() {
        let g = triangle_pendant();
        let mut sp = UnicyclicSpies::new(&g, GameConfig::new(2, 2, 1)).unwrap();
        assert_eq!(sp.place(&[0, 0, 0, 2]).unwrap(), vec![0, 0, 0, 1]);
        assert_eq!(sp.mode_name(), "Large");
    }

    #[test]
    fn first_arrivals_only_add_fakes() {
        // triangle + pendant, m=3, r=3: one revolutionary steps into the tree
        let g = triangle_pendant();
        let dec = decompose_unicyclic(&g).unwrap();
        let (spy, mut st) = CompositeSpyState::place(&dec, &[3, 0, 0, 0], 3).unwrap();
        assert_eq!(spy, vec![1, 0, 0, 0]);
        let flow = st.respond(&[2, 0, 0, 1]).unwrap();
        assert_eq!(flow.moved(), 0);
        assert_eq!(st.attached()[0].fake, 1);
        st.check_cycle_condition(&[2, 0, 0, 1]).unwrap();
    }

    #[test]
    fn completing_arrival_moves_spy() {
        let g = triangle_pendant();
        let dec = decompose_unicyclic(&g).unwrap();
        let (_, mut st) = CompositeSpyState::place(&dec, &[2, 0, 0, 0], 2).unwrap();
        st.respond(&[1, 0, 0, 1]).unwrap();
        assert_eq!(st.attached()[0].fake, 1);
        let flow = st.respond(&[0, 0, 0, 2]).unwrap();
        assert_eq!(flow.traverse, vec![(0, 3, 1)]);
        assert_eq!(st.attached()[0].fake, 0);
        st.check_cycle_condition(&[0, 0, 0, 2]).unwrap();
        let back = st.respond(&[1, 0, 0, 1]).unwrap();
        assert_eq!(back.traverse, vec![(3, 0, 1)]);
        st.check_cycle_condition(&[1, 0, 0, 1]).unwrap();
    }

    #[test]
    fn idle_revs_idle_spies() {
        let g = triangle_pendant();
        let dec = decompose_unicyclic(&g).unwrap();
        let (spy, mut st) = CompositeSpyState::place(&dec, &[1, 2, 1, 0], 2).unwrap();
        let flow = st.respond(&[1, 2, 1, 0]).unwrap();
        assert_eq!(flow, MoveFlow::identity(&spy));
    }

    #[test]
    fn mode_selection() {
        let c4 = Graph::cycle(4);
        let mut sp = UnicyclicSpies::new(&c4, GameConfig::new(2, 5, 2)).unwrap();
        sp.place(&[2, 2, 1, 0]).unwrap();
        assert_eq!(sp.mode_name(), "Short");
        let mut sp = UnicyclicSpies::new(&c4, GameConfig::new(2, 5, 3)).unwrap();
        sp.place(&[2, 2, 1, 0]).unwrap();
        assert_eq!(sp.mode_name(), "Large");
        let c6 = Graph::cycle(6);
        let mut sp = UnicyclicSpies::new(&c6, GameConfig::new(2, 7, 3)).unwrap();
        sp.place(&[2, 2, 2, 1, 0, 0]).unwrap();
        assert_eq!(sp.mode_name(), "Greedy");
        let tri6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)]).unwrap();
        let mut sp = UnicyclicSpies::new(&tri6, GameConfig::new(2, 5, 2)).unwrap();
        sp.place(&[2, 2, 1, 0, 0, 0]).unwrap();
        assert_eq!(sp.mode_name(), "Case2");
    }

    #[test]
    fn forest_component_gets_its_own_budget() {
        let g = Graph::cycle(5).disjoint_union(&Graph::path(2));
        let mut sp = UnicyclicSpies::new(&g, GameConfig::new(2, 7, 4)).unwrap();
        let rev = [1, 1, 1, 0, 0, 2, 2];
        let spy = sp.place(&rev).unwrap();
        assert_eq!(spy.iter().sum::<u32>(), 4);
        assert!(unguarded_meetings(&Position::new(rev.to_vec(), spy), 2).is_empty());
    }

    #[test]
    fn large_mode_moves_are_legal() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let mut sp = UnicyclicSpies::new(&g, GameConfig::new(2, 5, 3)).unwrap();
        let walk = [
            [2, 2, 1, 0, 0, 0],
            [1, 1, 1, 0, 2, 0],
            [0, 1, 0, 1, 1, 2],
            [1, 0, 0, 1, 1, 2],
        ];
        let mut spy = sp.place(&walk[0]).unwrap();
        for rev in &walk[1..] {
            let pos = Position::new(rev.to_vec(), spy.clone());
            let next = sp.respond(&pos).unwrap();
            validate_team_move(&g, &spy, &next).unwrap();
            assert!(unguarded_meetings(&Position::new(rev.to_vec(), next.clone()), 2).is_empty());
            sp.composite().unwrap().check_cycle_condition(rev).unwrap();
            spy = next;
        }
    }
}
