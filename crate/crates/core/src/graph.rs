//! Labeled undirected graphs and the structural decompositions the
//! strategies consume: rooted trees and cycle-plus-attached-trees.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: malformed input {text:?}")]
    Malformed { line: usize, text: String },
    #[error("missing vertex count line")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range for n={n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has more than one cycle")]
    MultipleCycles,
    #[error("graph is not unicyclic")]
    NotUnicyclic,
    #[error("component of vertex {0} contains a cycle")]
    ComponentHasCycle(usize),
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange {
                    line: 0,
                    vertex: u,
                    n,
                });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    line: 0,
                    vertex: v,
                    n,
                });
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].binary_search(&v).is_ok() {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(())
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = Graph::empty(off + other.n());
        for (u, v) in self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + off, v + off)))
        {
            g.add_edge(u, v).expect("union of simple graphs is simple");
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by smallest label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Component id per vertex, numbered as in [`Graph::components`].
    pub fn component_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.n()];
        for (i, comp) in self.components().iter().enumerate() {
            for &v in comp {
                ids[v] = i;
            }
        }
        ids
    }

    /// Number of independent cycles, `|E| - |V| + c`.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + self.components().len() - self.n()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} E=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "]")
    }
}

/// Parses the line-oriented graph format: vertex count, then one `u v` per
/// edge. Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(GraphError::MissingHeader)?;
    let n: usize = header.parse().map_err(|_| GraphError::Malformed {
        line: hline,
        text: header.to_string(),
    })?;
    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let malformed = || GraphError::Malformed {
            line,
            text: l.to_string(),
        };
        let mut it = l.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(malformed)?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(malformed)?;
        if it.next().is_some() {
            return Err(malformed());
        }
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { line, vertex: x, n });
            }
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphClass {
    Tree,
    Forest,
    Cycle,
    Unicyclic,
    UnicyclicForest,
    Other,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Tree => "tree",
            GraphClass::Forest => "forest",
            GraphClass::Cycle => "cycle",
            GraphClass::Unicyclic => "unicyclic",
            GraphClass::UnicyclicForest => "unicyclic-forest",
            GraphClass::Other => "other",
        }
    }

    pub fn is_acyclic(self) -> bool {
        matches!(self, GraphClass::Tree | GraphClass::Forest)
    }

    pub fn has_one_cycle(self) -> bool {
        matches!(
            self,
            GraphClass::Cycle | GraphClass::Unicyclic | GraphClass::UnicyclicForest
        )
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify(g: &Graph) -> GraphClass {
    let connected = g.components().len() <= 1;
    match (g.cycle_rank(), connected) {
        (0, true) => GraphClass::Tree,
        (0, false) => GraphClass::Forest,
        (1, true) if (0..g.n()).all(|v| g.degree(v) == 2) => GraphClass::Cycle,
        (1, true) => GraphClass::Unicyclic,
        (1, false) => GraphClass::UnicyclicForest,
        _ => GraphClass::Other,
    }
}

/// The unique cycle, starting at its smallest label and stepping first to
/// the smaller of that vertex's two cycle neighbors.
pub fn find_cycle(g: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    match g.cycle_rank() {
        0 => return Ok(None),
        1 => {}
        _ => return Err(GraphError::MultipleCycles),
    }
    // Peel leaves; with exactly one cycle the 2-core is that cycle.
    let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut queue: VecDeque<usize> = (0..g.n()).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    queue.push_back(u);
                }
            }
        }
    }
    let start = (0..g.n())
        .find(|&v| alive[v])
        .expect("rank-1 graph has a cycle");
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = g
        .neighbors(start)
        .iter()
        .copied()
        .find(|&u| alive[u])
        .expect("cycle vertex has cycle neighbors");
    while cur != start {
        cycle.push(cur);
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&u| alive[u] && u != prev)
            .expect("cycle continues");
        prev = cur;
        cur = next;
    }
    Ok(Some(cycle))
}

/// A tree component rooted at `root`. Per-vertex tables are indexed by the
/// global vertex label; vertices outside the tree have `member == false`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Every child precedes its parent; the root is last.
    pub postorder: Vec<usize>,
    pub member: Vec<bool>,
    pub depth: Vec<usize>,
}

impl RootedTree {
    pub fn size(&self) -> usize {
        self.postorder.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.member.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.postorder
    }

    /// Vertices of the subtree `D(v)`, including `v`.
    pub fn descendants(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            i += 1;
            out.extend_from_slice(&self.children[u]);
        }
        out
    }

    /// Path from `v` up to the root, inclusive at both ends.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out
    }
}

/// Roots the tree spanned by `z` inside the vertex set admitted by `allowed`.
pub(crate) fn root_within(
    g: &Graph,
    z: usize,
    allowed: impl Fn(usize) -> bool,
) -> Result<RootedTree, GraphError> {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut member = vec![false; n];
    let mut depth = vec![0; n];
    let mut order = vec![z];
    member[z] = true;
    let mut edges_inside = 0usize;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &v in g.neighbors(u) {
            if !allowed(v) {
                continue;
            }
            edges_inside += 1;
            if !member[v] {
                member[v] = true;
                parent[v] = Some(u);
                depth[v] = depth[u] + 1;
                children[u].push(v);
                order.push(v);
            }
        }
    }
    if edges_inside / 2 != order.len() - 1 {
        return Err(GraphError::ComponentHasCycle(z));
    }
    let mut postorder = Vec::with_capacity(order.len());
    let mut stack = vec![(z, 0usize)];
    while let Some((u, k)) = stack.pop() {
        if k < children[u].len() {
            stack.push((u, k + 1));
            stack.push((children[u][k], 0));
        } else {
            postorder.push(u);
        }
    }
    Ok(RootedTree {
        root: z,
        parent,
        children,
        postorder,
        member,
        depth,
    })
}

pub fn root_tree(g: &Graph, z: usize) -> Result<RootedTree, GraphError> {
    root_within(g, z, |_| true)
}

/// A component of `G - V(C)` with its root and, when it touches the cycle,
/// the cycle neighbor of the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AttachedTree {
    pub tree: RootedTree,
    pub mate: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnicyclicDecomposition {
    pub cycle: Vec<usize>,
    /// Cycle index of each vertex, `None` off the cycle.
    pub cycle_pos: Vec<Option<usize>>,
    pub trees: Vec<AttachedTree>,
    /// Number of vertices off the cycle.
    pub t: usize,
}

impl UnicyclicDecomposition {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        self.cycle_pos[v].is_some()
    }

    /// Trees hanging off the cycle (mate present).
    pub fn attached(&self) -> impl Iterator<Item = &AttachedTree> {
        self.trees.iter().filter(|t| t.mate.is_some())
    }

    /// Tree components not connected to the cycle.
    pub fn detached(&self) -> impl Iterator<Item = &AttachedTree> {
        self.trees.iter().filter(|t| t.mate.is_none())
    }
}

pub fn decompose_unicyclic(g: &Graph) -> Result<UnicyclicDecomposition, GraphError> {
    if !classify(g).has_one_cycle() {
        return Err(GraphError::NotUnicyclic);
    }
    let cycle = find_cycle(g)?.ok_or(GraphError::NotUnicyclic)?;
    let mut cycle_pos = vec![None; g.n()];
    for (i, &v) in cycle.iter().enumerate() {
        cycle_pos[v] = Some(i);
    }
    let mut covered = vec![false; g.n()];
    let mut trees = Vec::new();
    for v in 0..g.n() {
        if cycle_pos[v].is_some() || covered[v] {
            continue;
        }
        // Component of v in G - V(C), in label order.
        let mut comp = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if cycle_pos[w].is_none() && comp.insert(w) {
                    stack.push(w);
                }
            }
        }
        let attach = comp.iter().find_map(|&u| {
            g.neighbors(u)
                .iter()
                .find(|&&w| cycle_pos[w].is_some())
                .map(|&w| (u, w))
        });
        let (root, mate) = match attach {
            Some((z, zs)) => (z, Some(zs)),
            None => (*comp.iter().next().expect("nonempty"), None),
        };
        let tree = root_within(g, root, |w| cycle_pos[w].is_none())?;
        for &u in tree.vertices() {
            covered[u] = true;
        }
        trees.push(AttachedTree { tree, mate });
    }
    let t = g.n() - cycle.len();
    Ok(UnicyclicDecomposition {
        cycle,
        cycle_pos,
        trees,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_pendant() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap()
    }

    fn c5_p2() -> Graph {
        Graph::cycle(5).disjoint_union(&Graph::path(2))
    }

    #[test]
    fn parse_examples() {
        let p3 = parse_graph("3\n0 1\n1 2").unwrap();
        assert_eq!(p3, Graph::path(3));
        let c5 = parse_graph("5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap();
        assert_eq!(c5, Graph::cycle(5));
        assert_eq!(
            parse_graph("3\n0 1\n0 1"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_graph("# nothing\n"), Err(GraphError::MissingHeader));
        assert!(matches!(
            parse_graph("x\n"),
            Err(GraphError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("3\n0\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3\n0 1 2\n"),
            Err(GraphError::Malformed { .. })
        ));
        assert_eq!(
            parse_graph("3\n0 3\n"),
            Err(GraphError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 3
            })
        );
        assert_eq!(parse_graph("3\n1 1\n"), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn parse_comments_and_round_trip() {
        let g = parse_graph("# c4\n4\n\n0 1\n# edge\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, Graph::cycle(4));
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Graph::path(3)), GraphClass::Tree);
        assert_eq!(classify(&c5_p2()), GraphClass::UnicyclicForest);
        let mut chord = Graph::cycle(5);
        chord.add_edge(0, 2).unwrap();
        assert_eq!(classify(&chord), GraphClass::Other);
        assert_eq!(classify(&Graph::cycle(4)), GraphClass::Cycle);
        assert_eq!(classify(&triangle_pendant()), GraphClass::Unicyclic);
        assert_eq!(
            classify(&Graph::path(2).disjoint_union(&Graph::path(3))),
            GraphClass::Forest
        );
        assert_eq!(classify(&Graph::empty(1)), GraphClass::Tree);
    }

    #[test]
    fn find_cycle_examples() {
        assert_eq!(find_cycle(&Graph::path(4)).unwrap(), None);
        assert_eq!(
            find_cycle(&Graph::cycle(4)).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
        assert_eq!(
            find_cycle(&triangle_pendant()).unwrap(),
            Some(vec![0, 1, 2])
        );
        let mut chord = Graph::cycle(5);
        chord.add_edge(0, 2).unwrap();
        assert_eq!(find_cycle(&chord), Err(GraphError::MultipleCycles));
        // orientation: 0 steps to its smaller cycle neighbor
        let g = Graph::from_edges(4, &[(0, 3), (3, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(find_cycle(&g).unwrap(), Some(vec![0, 2, 1, 3]));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_unicyclic(&triangle_pendant()).unwrap();
        assert_eq!(d.cycle, vec![0, 1, 2]);
        assert_eq!(d.trees.len(), 1);
        assert_eq!(d.trees[0].tree.root, 3);
        assert_eq!(d.trees[0].mate, Some(0));
        assert_eq!(d.t, 1);

        let d = decompose_unicyclic(&c5_p2()).unwrap();
        assert_eq!(d.len(), 5);
        assert_eq!(d.trees.len(), 1);
        assert_eq!(d.trees[0].tree.size(), 2);
        assert_eq!(d.trees[0].mate, None);
        assert_eq!(d.t, 2);

        let d = decompose_unicyclic(&Graph::cycle(4)).unwrap();
        assert_eq!((d.len(), d.trees.len(), d.t), (4, 0, 0));

        assert_eq!(
            decompose_unicyclic(&Graph::path(3)),
            Err(GraphError::NotUnicyclic)
        );
    }

    #[test]
    fn root_tree_examples() {
        let t = root_tree(&Graph::path(3), 2).unwrap();
        assert_eq!(t.parent[0], Some(1));
        assert_eq!(t.parent[1], Some(2));
        assert_eq!(t.parent[2], None);
        assert_eq!(t.postorder, vec![0, 1, 2]);

        let t = root_tree(&Graph::star(3), 0).unwrap();
        assert_eq!(t.children[0], vec![1, 2, 3]);
        assert!((1..=3).all(|v| t.children[v].is_empty()));
        assert_eq!(t.descendants(0).len(), 4);

        assert_eq!(
            root_tree(&Graph::cycle(4), 1),
            Err(GraphError::ComponentHasCycle(1))
        );
    }

    #[test]
    fn root_tree_on_forest_component() {
        let g = Graph::path(2).disjoint_union(&Graph::path(3));
        let t = root_tree(&g, 3).unwrap();
        assert_eq!(t.size(), 3);
        assert!(!t.contains(0));
        assert_eq!(t.path_to_root(2), vec![2, 3]);
    }
}
