//! Spies on trees: keep `s(v) = floor(w(v)/m) - sum_{u in C(v)} floor(w(u)/m)`
//! at every vertex, where `w(v)` counts revolutionaries in the subtree of `v`.
//! After each revolutionary move the targets are restored leaf-to-root, each
//! child exchanging `floor(w'(u)/m) - floor(w(u)/m)` spies with its parent.

use crate::engine::{GameConfig, Position, SpyStrategy, StrategyError};
use crate::flow::MoveFlow;
use crate::graph::{classify, root_tree, Graph, RootedTree};

/// Subtree weights and per-vertex spy targets for a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeSpyState {
    tree: RootedTree,
    m: u32,
    w: Vec<u32>,
    target: Vec<u32>,
    rev: Vec<u32>,
    /// Subtree sizes when demands are capped at one spy per vertex.
    cap: Option<Vec<u32>>,
}

/// One sibling group `C(v)` split by whether its subtree weight grew.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiblingGroup {
    pub parent: usize,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustmentPlan {
    /// `floor(w'(u)/m) - floor(w(u)/m)` per vertex (zero off the tree).
    pub delta: Vec<i64>,
    pub groups: Vec<SiblingGroup>,
    /// Flow inside the tree. Spies crossing between the root and the
    /// outside are not included; see `root_exchange`.
    pub flow: MoveFlow,
    /// Spies the root must receive from outside (negative: send out).
    pub root_exchange: i64,
}

/// Spies owed to the subtree of `v` holding `w` revolutionaries.
fn demand(cap: &Option<Vec<u32>>, v: usize, w: u32, m: u32) -> u32 {
    match cap {
        Some(size) => (w / m).min(size[v]),
        None => w / m,
    }
}

fn weights(tree: &RootedTree, rev: &[u32], m: u32, cap: &Option<Vec<u32>>) -> (Vec<u32>, Vec<u32>) {
    let n = tree.member.len();
    let mut w = vec![0u32; n];
    let mut target = vec![0u32; n];
    for &v in &tree.postorder {
        let below: u32 = tree.children[v].iter().map(|&c| w[c]).sum();
        let below_demand: u32 = tree.children[v]
            .iter()
            .map(|&c| demand(cap, c, w[c], m))
            .sum();
        w[v] = rev[v] + below;
        target[v] = demand(cap, v, w[v], m) - below_demand;
    }
    (w, target)
}

fn subtree_sizes(tree: &RootedTree) -> Vec<u32> {
    let mut size = vec![0u32; tree.member.len()];
    for &v in &tree.postorder {
        size[v] = 1 + tree.children[v].iter().map(|&c| size[c]).sum::<u32>();
    }
    size
}

impl TreeSpyState {
    /// Initial placement: spies exactly on the targets.
    pub fn place(tree: RootedTree, rev: &[u32], m: u32) -> (Vec<u32>, Self) {
        TreeSpyState::place_with(tree, rev, m, None)
    }

    /// Like [`TreeSpyState::place`], with every subtree owed at most one spy
    /// per vertex, so the tree never holds more spies than vertices.
    pub fn place_capped(tree: RootedTree, rev: &[u32], m: u32) -> (Vec<u32>, Self) {
        let size = subtree_sizes(&tree);
        TreeSpyState::place_with(tree, rev, m, Some(size))
    }

    fn place_with(
        tree: RootedTree,
        rev: &[u32],
        m: u32,
        cap: Option<Vec<u32>>,
    ) -> (Vec<u32>, Self) {
        let (w, target) = weights(&tree, rev, m, &cap);
        let mut rev_in = vec![0; rev.len()];
        for &v in tree.vertices() {
            rev_in[v] = rev[v];
        }
        let st = TreeSpyState {
            tree,
            m,
            w,
            target: target.clone(),
            rev: rev_in,
            cap,
        };
        (target, st)
    }

    fn owed(&self, v: usize, w: u32) -> u32 {
        demand(&self.cap, v, w, self.m)
    }

    pub fn is_capped(&self) -> bool {
        self.cap.is_some()
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn weights(&self) -> &[u32] {
        &self.w
    }

    pub fn targets(&self) -> &[u32] {
        &self.target
    }

    pub fn total(&self) -> u32 {
        self.owed(self.tree.root, self.w[self.tree.root])
    }

    /// Revolutionaries currently in the tree.
    pub fn revs(&self) -> u32 {
        self.w[self.tree.root]
    }

    /// Recomputes targets for `new_rev` and the spy flow realizing them.
    /// Revolutionaries outside the tree are ignored.
    pub fn update(&mut self, new_rev: &[u32]) -> Result<AdjustmentPlan, StrategyError> {
        let m = self.m;
        let n = self.w.len();
        let mut rev_in = vec![0; n];
        for &v in self.tree.vertices() {
            rev_in[v] = new_rev[v];
        }
        let (w2, t2) = weights(&self.tree, &rev_in, m, &self.cap);
        let mut delta = vec![0i64; n];
        for &v in self.tree.vertices() {
            delta[v] = self.owed(v, w2[v]) as i64 - self.owed(v, self.w[v]) as i64;
        }
        let mut groups = Vec::new();
        let mut stay = vec![0u32; n];
        let mut traverse = Vec::new();
        for &v in &self.tree.postorder {
            let kids = &self.tree.children[v];
            let (plus, minus): (Vec<usize>, Vec<usize>) =
                kids.iter().partition(|&&u| w2[u] > self.w[u]);
            let pulled: i64 = plus.iter().map(|&u| delta[u]).sum();
            let pushed: i64 = minus.iter().map(|&u| -delta[u]).sum();
            if pulled > self.target[v] as i64 {
                return Err(StrategyError::InvariantBroken(format!(
                    "vertex {v}: children need {pulled} spies, only {} present",
                    self.target[v]
                )));
            }
            if pushed > t2[v] as i64 {
                return Err(StrategyError::InvariantBroken(format!(
                    "vertex {v}: children return {pushed} spies, target is {}",
                    t2[v]
                )));
            }
            let up = (-delta[v]).max(0);
            let out = pulled + up;
            if out > self.target[v] as i64 {
                return Err(StrategyError::InvariantBroken(format!(
                    "vertex {v}: {out} spies must leave, {} present",
                    self.target[v]
                )));
            }
            stay[v] = self.target[v] - out as u32;
            for &u in kids {
                match delta[u] {
                    d if d > 0 => traverse.push((v, u, d as u32)),
                    d if d < 0 => traverse.push((u, v, (-d) as u32)),
                    _ => {}
                }
            }
            if !kids.is_empty() {
                groups.push(SiblingGroup {
                    parent: v,
                    plus,
                    minus,
                });
            }
        }
        let root_exchange = delta[self.tree.root];
        self.w = w2;
        self.target = t2;
        self.rev = rev_in;
        Ok(AdjustmentPlan {
            delta,
            groups,
            flow: MoveFlow::from_parts(stay, traverse),
            root_exchange,
        })
    }

    /// Checks the target formula at every vertex and the subtree sums.
    pub fn check_invariants(&self, spy: &[u32]) -> Result<(), String> {
        let m = self.m;
        for &v in self.tree.vertices() {
            let below: u32 = self.tree.children[v].iter().map(|&c| self.w[c]).sum();
            if self.w[v] != self.rev[v] + below {
                return Err(format!("weight mismatch at {v}"));
            }
            let floors: u32 = self.tree.children[v]
                .iter()
                .map(|&c| self.owed(c, self.w[c]))
                .sum();
            let expect = self.owed(v, self.w[v]) - floors;
            if spy[v] != expect {
                return Err(format!(
                    "vertex {v}: {} spies, formula gives {expect}",
                    spy[v]
                ));
            }
            let sub: u32 = self.tree.descendants(v).iter().map(|&u| spy[u]).sum();
            if sub != self.owed(v, self.w[v]) {
                return Err(format!(
                    "subtree of {v}: {sub} spies, expected {}",
                    self.owed(v, self.w[v])
                ));
            }
            if self.rev[v] >= m && spy[v] == 0 {
                return Err(format!("unguarded meeting at {v}"));
            }
        }
        Ok(())
    }

    pub fn annotation(&self) -> String {
        let vs = self.tree.vertices();
        let list = |x: &[u32]| {
            let mut order: Vec<usize> = vs.to_vec();
            order.sort_unstable();
            order
                .iter()
                .map(|&v| x[v].to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("w={} target={}", list(&self.w), list(&self.target))
    }
}

/// How a tree component is defended.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ComponentPlan {
    Tree(TreeSpyState),
    /// One spy on every vertex; used when the floor budget covers the tree.
    Cover {
        vertices: Vec<usize>,
    },
}

impl ComponentPlan {
    pub fn spies_needed(&self) -> u32 {
        match self {
            ComponentPlan::Tree(st) => st.total(),
            ComponentPlan::Cover { vertices } => vertices.len() as u32,
        }
    }

    pub fn write_spies(&self, out: &mut [u32]) {
        match self {
            ComponentPlan::Tree(st) => {
                for &v in st.tree().vertices() {
                    out[v] += st.targets()[v];
                }
            }
            ComponentPlan::Cover { vertices } => {
                for &v in vertices {
                    out[v] += 1;
                }
            }
        }
    }

    pub fn update(&mut self, rev: &[u32]) -> Result<(), StrategyError> {
        if let ComponentPlan::Tree(st) = self {
            let plan = st.update(rev)?;
            if plan.root_exchange != 0 {
                return Err(StrategyError::IllegalRevMove(
                    "revolutionaries crossed between components".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Per-component budgets on a forest: `floor(r_i/m)` each.
#[derive(Debug, Clone)]
pub struct ForestComponent {
    pub cfg: GameConfig,
    pub state: TreeSpyState,
}

pub fn forest_allocate(
    g: &Graph,
    rev: &[u32],
    m: u32,
) -> Result<Vec<ForestComponent>, StrategyError> {
    if !classify(g).is_acyclic() {
        return Err(StrategyError::PreconditionViolated(
            "graph is not a forest".into(),
        ));
    }
    let mut out = Vec::new();
    for comp in g.components() {
        let tree = root_tree(g, comp[0])?;
        let r_i: u32 = comp.iter().map(|&v| rev[v]).sum();
        let (_, state) = TreeSpyState::place(tree, rev, m);
        out.push(ForestComponent {
            cfg: GameConfig::new(m, r_i, r_i / m),
            state,
        });
    }
    Ok(out)
}

/// Plans for a set of tree components: the tree strategy, or a static cover
/// when `cap_at_size` is set and the floor budget reaches the tree size.
pub(crate) fn plan_components(
    trees: &[RootedTree],
    rev: &[u32],
    m: u32,
    cap_at_size: bool,
) -> Vec<ComponentPlan> {
    trees
        .iter()
        .map(|t| {
            let r_i: u32 = t.vertices().iter().map(|&v| rev[v]).sum();
            if cap_at_size && (r_i / m) as usize >= t.size() {
                let mut vertices = t.vertices().to_vec();
                vertices.sort_unstable();
                ComponentPlan::Cover { vertices }
            } else {
                ComponentPlan::Tree(TreeSpyState::place(t.clone(), rev, m).1)
            }
        })
        .collect()
}

/// Tree / forest spy strategy. Spies beyond the component budgets stay on
/// the root of the first component.
#[derive(Debug, Clone)]
pub struct TreeSpies {
    n: usize,
    m: u32,
    s: u32,
    trees: Vec<RootedTree>,
    plans: Vec<ComponentPlan>,
    surplus: u32,
    deficient: bool,
}

impl TreeSpies {
    pub fn new(g: &Graph, cfg: GameConfig) -> Result<Self, StrategyError> {
        if !classify(g).is_acyclic() {
            return Err(StrategyError::PreconditionViolated(
                "graph is not a forest".into(),
            ));
        }
        let trees = g
            .components()
            .iter()
            .map(|c| root_tree(g, c[0]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TreeSpies {
            n: g.n(),
            m: cfg.m,
            s: cfg.s,
            trees,
            plans: Vec::new(),
            surplus: 0,
            deficient: false,
        })
    }

    pub fn plans(&self) -> &[ComponentPlan] {
        &self.plans
    }

    fn layout(&self) -> Vec<u32> {
        let mut out = vec![0; self.n];
        for p in &self.plans {
            p.write_spies(&mut out);
        }
        if let Some(t) = self.trees.first() {
            out[t.root] += self.surplus;
        }
        out
    }

    /// Checks the target formula on every component against `spy`.
    pub fn check_invariants(&self, spy: &[u32]) -> Result<(), String> {
        let mut rest = spy.to_vec();
        if let Some(t) = self.trees.first() {
            rest[t.root] -= self.surplus.min(rest[t.root]);
        }
        for p in &self.plans {
            if let ComponentPlan::Tree(st) = p {
                st.check_invariants(&rest)?;
            }
        }
        Ok(())
    }
}

impl SpyStrategy for TreeSpies {
    fn name(&self) -> &str {
        "tree"
    }

    fn place(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError> {
        self.plans = plan_components(&self.trees, rev, self.m, false);
        let need: u32 = self.plans.iter().map(ComponentPlan::spies_needed).sum();
        if need > self.s {
            // Not enough spies: place what we have on the targets, in
            // postorder, and give up on later rounds.
            self.deficient = true;
            self.surplus = 0;
            let full = self.layout();
            let mut out = vec![0; self.n];
            let mut left = self.s;
            for t in &self.trees {
                for &v in t.vertices() {
                    let k = full[v].min(left);
                    out[v] = k;
                    left -= k;
                }
            }
            return Ok(out);
        }
        self.deficient = false;
        self.surplus = self.s - need;
        Ok(self.layout())
    }

    fn respond(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        if self.deficient {
            return Err(StrategyError::InvariantBroken(format!(
                "{} spies cannot cover floor(r/m) targets",
                self.s
            )));
        }
        for p in &mut self.plans {
            p.update(&pos.rev)?;
        }
        Ok(self.layout())
    }

    fn annotation(&self) -> Option<String> {
        let parts: Vec<String> = self
            .plans
            .iter()
            .filter_map(|p| match p {
                ComponentPlan::Tree(st) => Some(st.annotation()),
                ComponentPlan::Cover { .. } => None,
            })
            .collect();
        Some(parts.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::validate_team_move;

    #[test]
    fn all_weight_at_root() {
        let tree = root_tree(&Graph::path(3), 2).unwrap();
        let (spy, _) = TreeSpyState::place(tree, &[0, 0, 4], 2);
        assert_eq!(spy, vec![0, 0, 2]);
    }

    #[test]
    fn star_targets() {
        // leaf 3 holds a meeting; center: floor(5/2) - 1 = 1
        let tree = root_tree(&Graph::star(3), 0).unwrap();
        let (spy, st) = TreeSpyState::place(tree, &[1, 1, 1, 2], 2);
        assert_eq!(spy, vec![1, 0, 0, 1]);
        assert_eq!(st.total(), 2);
        st.check_invariants(&spy).unwrap();
    }

    #[test]
    fn total_is_floor() {
        let tree = root_tree(&Graph::path(5), 0).unwrap();
        for rev in [[5, 0, 0, 0, 0], [1, 1, 1, 1, 1], [0, 2, 0, 3, 0]] {
            let (spy, _) = TreeSpyState::place(tree.clone(), &rev, 2);
            assert_eq!(spy.iter().sum::<u32>(), 2);
        }
    }

    #[test]
    fn update_identity() {
        let tree = root_tree(&Graph::star(3), 0).unwrap();
        let rev = [1, 1, 1, 2];
        let (spy, mut st) = TreeSpyState::place(tree, &rev, 2);
        let plan = st.update(&rev).unwrap();
        assert!(plan.delta.iter().all(|&d| d == 0));
        assert_eq!(plan.flow, MoveFlow::identity(&spy));
    }

    #[test]
    fn update_p3_single_spy_moves() {
        // rooted at c=2; revs a -> b
        let tree = root_tree(&Graph::path(3), 2).unwrap();
        let (spy, mut st) = TreeSpyState::place(tree, &[2, 0, 0], 2);
        assert_eq!(spy, vec![1, 0, 0]);
        let plan = st.update(&[0, 2, 0]).unwrap();
        assert_eq!(plan.delta[0], -1);
        assert_eq!(plan.delta[1], 0);
        assert_eq!(plan.flow.traverse, vec![(0, 1, 1)]);
        assert_eq!(st.targets(), &[0, 1, 0]);
    }

    #[test]
    fn update_star_gathering() {
        let g = Graph::star(3);
        let tree = root_tree(&g, 0).unwrap();
        let (spy, mut st) = TreeSpyState::place(tree, &[0, 1, 1, 2], 2);
        assert_eq!(spy, vec![1, 0, 0, 1]);
        let plan = st.update(&[2, 0, 0, 2]).unwrap();
        let after = plan.flow.after();
        assert_eq!(after, vec![1, 0, 0, 1]);
        validate_team_move(&g, &spy, &after).unwrap();
        for grp in &plan.groups {
            let pulled: i64 = grp.plus.iter().map(|&u| plan.delta[u]).sum();
            assert!(pulled <= spy[grp.parent] as i64);
        }
    }

    #[test]
    fn root_exchange_reports_outside_demand() {
        let tree = root_tree(&Graph::path(2), 0).unwrap();
        let (_, mut st) = TreeSpyState::place(tree, &[1, 0], 2);
        assert_eq!(st.total(), 0);
        let plan = st.update(&[2, 0]).unwrap();
        assert_eq!(plan.root_exchange, 1);
        assert_eq!(st.targets()[0], 1);
    }

    #[test]
    fn forest_budgets() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2));
        let comps = forest_allocate(&g, &[2, 1, 1, 1], 2).unwrap();
        assert_eq!(
            comps.iter().map(|c| c.cfg.s).collect::<Vec<_>>(),
            vec![1, 1]
        );
        let comps = forest_allocate(&g, &[1, 0, 0, 1], 2).unwrap();
        assert!(comps.iter().all(|c| c.cfg.s == 0));
        let whole = forest_allocate(&Graph::path(3), &[1, 2, 1], 2).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].state.targets(), &[1, 1, 0]);
    }

    #[test]
    fn surplus_parks_on_first_root() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2));
        let mut spies = TreeSpies::new(&g, GameConfig::new(2, 5, 2)).unwrap();
        let spy = spies.place(&[2, 1, 1, 1]).unwrap();
        // budgets 1 + 1 use both spies
        assert_eq!(spy.iter().sum::<u32>(), 2);
        let mut spies = TreeSpies::new(&g, GameConfig::new(2, 5, 3)).unwrap();
        let spy = spies.place(&[0, 0, 5, 0]).unwrap();
        assert_eq!(spy, vec![1, 0, 2, 0]);
    }

    #[test]
    fn rejects_cyclic_graph() {
        assert!(TreeSpies::new(&Graph::cycle(3), GameConfig::new(2, 2, 1)).is_err());
    }
}
