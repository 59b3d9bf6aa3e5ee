//! Exhaustive enumeration of small graph families up to isomorphism.

use std::collections::BTreeSet;

use crate::graph::Graph;

fn rooted_code(g: &Graph, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| rooted_code(g, u, Some(v)))
        .collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

/// Center vertices of a tree (one or two).
pub fn tree_centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            deg[v] = 0;
            for &u in g.neighbors(v) {
                if deg[u] > 0 {
                    deg[u] -= 1;
                    if deg[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Isomorphism-invariant code of a tree.
pub fn tree_code(g: &Graph) -> String {
    tree_centers(g)
        .into_iter()
        .map(|c| rooted_code(g, c, None))
        .min()
        .unwrap_or_default()
}

/// All trees on `n` vertices, one per isomorphism class, each labeled so
/// that every vertex other than 0 has a smaller-labeled neighbor.
pub fn trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut edges: Vec<(usize, usize)> = t.edges().collect();
                edges.push((v, k - 1));
                let g = Graph::from_edges(k, &edges).expect("valid tree");
                if seen.insert(tree_code(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Lexicographically smallest sorted edge list over all relabelings.
/// Exponential; meant for graphs of at most eight vertices.
pub fn canonical_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> = g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

/// Unicyclic graphs with cycle `0..len` and `t` further vertices, one per
/// isomorphism class. With `connected` unset, the extra vertices may also
/// form tree components apart from the cycle.
pub fn unicyclic_family(len: usize, t: usize, connected: bool) -> Vec<Graph> {
    let base: Vec<(usize, usize)> = Graph::cycle(len).edges().collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    // choice[k] = parent of vertex len+k, or None for a new component root
    let mut choice: Vec<Option<usize>> = vec![None; t];
    loop {
        if !connected || choice.iter().all(Option::is_some) {
            let mut edges = base.clone();
            for (k, p) in choice.iter().enumerate() {
                if let Some(p) = p {
                    edges.push((*p, len + k));
                }
            }
            let g = Graph::from_edges(len + t, &edges).expect("valid graph");
            if seen.insert(canonical_edges(&g)) {
                out.push(g);
            }
        }
        // advance the mixed-radix counter
        let mut k = 0;
        loop {
            if k == t {
                return out;
            }
            choice[k] = match choice[k] {
                None => Some(0),
                Some(p) if p + 1 < len + k => Some(p + 1),
                Some(_) => None,
            };
            if choice[k].is_some() {
                break;
            }
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{classify, GraphClass};

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn trees_are_trees() {
        for g in trees(6) {
            assert_eq!(classify(&g), GraphClass::Tree);
        }
    }

    #[test]
    fn centers() {
        assert_eq!(tree_centers(&Graph::path(5)), vec![2]);
        assert_eq!(tree_centers(&Graph::path(4)), vec![1, 2]);
        assert_eq!(tree_centers(&Graph::star(4)), vec![0]);
    }

    #[test]
    fn unicyclic_counts() {
        // connected: C3 + one pendant; C3 + two extra: path of 2 or two pendants
        // (same or different cycle vertex)
        assert_eq!(unicyclic_family(3, 0, true).len(), 1);
        assert_eq!(unicyclic_family(3, 1, true).len(), 1);
        assert_eq!(unicyclic_family(3, 2, true).len(), 3);
        assert_eq!(unicyclic_family(4, 2, true).len(), 4);
        // with detached parts: C3+K1+K1, C3+K2, C3+pendant+K1, and the 3 connected
        assert_eq!(unicyclic_family(3, 2, false).len(), 6);
        for g in unicyclic_family(5, 2, false) {
            assert!(classify(&g).has_one_cycle());
        }
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        let b = Graph::from_edges(4, &[(3, 1), (1, 2), (2, 3), (2, 0)]).unwrap();
        assert_eq!(canonical_edges(&a), canonical_edges(&b));
    }
}
