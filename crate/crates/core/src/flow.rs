//! Team moves as unit flows. Every unit either stays or crosses one edge;
//! a move between two count vectors is legal iff such a flow exists.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("count vectors have {got} entries, graph has {n} vertices")]
    LengthMismatch { n: usize, got: usize },
    #[error("unit count changed from {before} to {after}")]
    SumMismatch { before: u64, after: u64 },
    #[error("no assignment moves every unit along at most one edge")]
    IllegalMove,
}

/// Witness of a legal team move.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveFlow {
    pub stay: Vec<u32>,
    /// `(from, to, units)` over directed edges, sorted, no zero entries.
    pub traverse: Vec<(usize, usize, u32)>,
}

impl MoveFlow {
    pub fn identity(counts: &[u32]) -> Self {
        MoveFlow {
            stay: counts.to_vec(),
            traverse: Vec::new(),
        }
    }

    /// Builds a flow from raw parts, merging duplicate edges.
    pub fn from_parts(stay: Vec<u32>, mut traverse: Vec<(usize, usize, u32)>) -> Self {
        traverse.retain(|e| e.2 > 0);
        traverse.sort_unstable();
        let mut merged: Vec<(usize, usize, u32)> = Vec::with_capacity(traverse.len());
        for (u, v, c) in traverse {
            match merged.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += c,
                _ => merged.push((u, v, c)),
            }
        }
        MoveFlow {
            stay,
            traverse: merged,
        }
    }

    pub fn before(&self) -> Vec<u32> {
        let mut c = self.stay.clone();
        for &(u, _, k) in &self.traverse {
            c[u] += k;
        }
        c
    }

    pub fn after(&self) -> Vec<u32> {
        let mut c = self.stay.clone();
        for &(_, v, k) in &self.traverse {
            c[v] += k;
        }
        c
    }

    pub fn moved(&self) -> u32 {
        self.traverse.iter().map(|e| e.2).sum()
    }

    /// Units leaving `v` along edges.
    pub fn outflow(&self, v: usize) -> u32 {
        self.traverse.iter().filter(|e| e.0 == v).map(|e| e.2).sum()
    }

    /// Checks that the flow only uses edges of `g`.
    pub fn is_valid_on(&self, g: &Graph) -> bool {
        self.stay.len() == g.n() && self.traverse.iter().all(|&(u, v, _)| g.is_adjacent(u, v))
    }
}

/// Returns a minimum-movement witness flow for `before -> after`.
pub fn validate_team_move(g: &Graph, before: &[u32], after: &[u32]) -> Result<MoveFlow, MoveError> {
    let n = g.n();
    for len in [before.len(), after.len()] {
        if len != n {
            return Err(MoveError::LengthMismatch { n, got: len });
        }
    }
    let sb: u64 = before.iter().map(|&x| x as u64).sum();
    let sa: u64 = after.iter().map(|&x| x as u64).sum();
    if sb != sa {
        return Err(MoveError::SumMismatch {
            before: sb,
            after: sa,
        });
    }
    // Fast path: nothing changed.
    if before == after {
        return Ok(MoveFlow::identity(before));
    }
    let src = 2 * n;
    let sink = 2 * n + 1;
    let mut net = MinCostFlow::new(2 * n + 2);
    let mut unit_edges = Vec::new();
    for u in 0..n {
        if before[u] > 0 {
            net.add_edge(src, u, before[u] as i64, 0);
        }
        if after[u] > 0 {
            net.add_edge(n + u, sink, after[u] as i64, 0);
        }
    }
    for u in 0..n {
        if before[u] == 0 {
            continue;
        }
        if after[u] > 0 {
            unit_edges.push((u, u, net.add_edge(u, n + u, sb as i64, 0)));
        }
        for &v in g.neighbors(u) {
            if after[v] > 0 {
                unit_edges.push((u, v, net.add_edge(u, n + v, sb as i64, 1)));
            }
        }
    }
    let (flow, _) = net.run(src, sink);
    if flow as u64 != sb {
        return Err(MoveError::IllegalMove);
    }
    let mut stay = vec![0u32; n];
    let mut traverse = Vec::new();
    for (u, v, e) in unit_edges {
        let f = net.flow_on(e) as u32;
        if f == 0 {
            continue;
        }
        if u == v {
            stay[u] = f;
        } else {
            traverse.push((u, v, f));
        }
    }
    Ok(MoveFlow::from_parts(stay, traverse))
}

pub fn is_legal_move(g: &Graph, before: &[u32], after: &[u32]) -> bool {
    validate_team_move(g, before, after).is_ok()
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Successive shortest paths with Bellman-Ford; sized for a few dozen nodes.
#[derive(Debug, Clone)]
pub(crate) struct MinCostFlow {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    orig_cap: Vec<i64>,
}

impl MinCostFlow {
    pub(crate) fn new(nodes: usize) -> Self {
        MinCostFlow {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
            orig_cap: Vec::new(),
        }
    }

    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.adj[from].push(id);
        self.edges.push(Edge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        self.adj[to].push(id + 1);
        self.orig_cap.push(cap);
        self.orig_cap.push(0);
        id
    }

    pub(crate) fn flow_on(&self, id: usize) -> i64 {
        self.orig_cap[id] - self.edges[id].cap
    }

    pub(crate) fn run(&mut self, s: usize, t: usize) -> (i64, i64) {
        let nodes = self.adj.len();
        let (mut flow, mut cost) = (0, 0);
        loop {
            let mut dist = vec![i64::MAX; nodes];
            let mut via = vec![usize::MAX; nodes];
            dist[s] = 0;
            let mut changed = true;
            while changed {
                changed = false;
                for u in 0..nodes {
                    if dist[u] == i64::MAX {
                        continue;
                    }
                    for &e in &self.adj[u] {
                        let ed = &self.edges[e];
                        if ed.cap > 0 && dist[u] + ed.cost < dist[ed.to] {
                            dist[ed.to] = dist[u] + ed.cost;
                            via[ed.to] = e;
                            changed = true;
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                return (flow, cost);
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.edges[e].cap);
                v = self.edges[e ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.edges[e].cap -= push;
                self.edges[e ^ 1].cap += push;
                v = self.edges[e ^ 1].to;
            }
            flow += push;
            cost += push * dist[t];
        }
    }
}
