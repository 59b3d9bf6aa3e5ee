//! Count-vector configurations and their one-step successors.

use std::collections::{BTreeSet, HashMap};

use crate::graph::Graph;

/// All ways to place `units` indistinguishable units on `n` vertices, in
/// lexicographic order.
pub fn all_configurations(n: usize, units: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if units == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, units, &mut vec![0; n], &mut out);
    out
}

/// Every count vector reachable by moving each unit along at most one
/// edge, sorted. Vertices are expanded one at a time, merging duplicate
/// partial results after each.
pub fn team_successors(g: &Graph, counts: &[u32]) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut partial: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; n]]);
    for v in 0..n {
        let c = counts[v];
        if c == 0 {
            continue;
        }
        let mut targets = vec![v];
        targets.extend_from_slice(g.neighbors(v));
        let splits = splits(c, targets.len());
        let mut next = BTreeSet::new();
        for base in &partial {
            for split in &splits {
                let mut out = base.clone();
                for (&t, &k) in targets.iter().zip(split) {
                    out[t] += k;
                }
                next.insert(out);
            }
        }
        partial = next;
    }
    partial.into_iter().collect()
}

fn splits(total: u32, parts: usize) -> Vec<Vec<u32>> {
    all_configurations(parts, total)
}

/// Indexed configurations of one team with successor lists.
#[derive(Debug, Clone)]
pub struct ConfigSpace {
    configs: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    succ: Vec<Vec<u32>>,
}

impl ConfigSpace {
    pub fn new(g: &Graph, units: u32) -> Self {
        let configs = all_configurations(g.n(), units);
        let index: HashMap<Vec<u32>, u32> = configs
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u32))
            .collect();
        let succ = configs
            .iter()
            .map(|c| team_successors(g, c).iter().map(|s| index[s]).collect())
            .collect();
        ConfigSpace {
            configs,
            index,
            succ,
        }
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn config(&self, i: usize) -> &[u32] {
        &self.configs[i]
    }

    pub fn index_of(&self, c: &[u32]) -> Option<usize> {
        self.index.get(c).map(|&i| i as usize)
    }

    pub fn successors(&self, i: usize) -> &[u32] {
        &self.succ[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::configuration_count;

    /// Independent oracle: move units one at a time.
    fn brute(g: &Graph, counts: &[u32]) -> BTreeSet<Vec<u32>> {
        let units: Vec<usize> = counts
            .iter()
            .enumerate()
            .flat_map(|(v, &c)| std::iter::repeat_n(v, c as usize))
            .collect();
        let mut out = BTreeSet::new();
        let mut choice = vec![0usize; units.len()];
        loop {
            let mut c = vec![0u32; g.n()];
            for (i, &u) in units.iter().enumerate() {
                let opts: Vec<usize> = std::iter::once(u)
                    .chain(g.neighbors(u).iter().copied())
                    .collect();
                c[opts[choice[i]]] += 1;
            }
            out.insert(c);
            let mut i = 0;
            loop {
                if i == units.len() {
                    return out;
                }
                choice[i] += 1;
                if choice[i] <= g.degree(units[i]) {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn p2_two_units() {
        let s = team_successors(&Graph::path(2), &[2, 0]);
        assert_eq!(s, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn c3_single_unit() {
        assert_eq!(team_successors(&Graph::cycle(3), &[1, 0, 0]).len(), 3);
    }

    #[test]
    fn p3_ends_matches_brute_force() {
        let g = Graph::path(3);
        let s = team_successors(&g, &[1, 0, 1]);
        assert_eq!(s.len(), 4);
        assert_eq!(
            s.into_iter().collect::<BTreeSet<_>>(),
            brute(&g, &[1, 0, 1])
        );
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        for c in all_configurations(5, 3) {
            let s: BTreeSet<_> = team_successors(&g, &c).into_iter().collect();
            assert_eq!(s, brute(&g, &c), "{c:?}");
        }
    }

    #[test]
    fn configuration_counts() {
        assert_eq!(
            all_configurations(6, 7).len() as u64,
            configuration_count(6, 7)
        );
        assert_eq!(all_configurations(1, 3), vec![vec![3]]);
    }

    #[test]
    fn successors_symmetric() {
        let g = Graph::cycle(4);
        let sp = ConfigSpace::new(&g, 3);
        for i in 0..sp.len() {
            for &j in sp.successors(i) {
                assert!(sp.successors(j as usize).contains(&(i as u32)));
            }
        }
    }
}
