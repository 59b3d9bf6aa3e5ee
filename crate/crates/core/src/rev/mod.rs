//! Revolutionary strategies.

pub mod long_cycle;
pub mod random;
pub mod unicyclic;

use crate::engine::StaticRevs;
use crate::graph::Graph;

pub use long_cycle::{LongCycleRevs, Phase, RoundLog};
pub use random::RandomRevs;
pub use unicyclic::UnicyclicRevs;

/// `floor(r/m)` meetings of exactly `m` on the smallest labels (at most
/// one per vertex), the remainder on the next vertex, or on vertex 0 when
/// every vertex already holds a meeting.
pub fn flood_placement(g: &Graph, m: u32, r: u32) -> Vec<u32> {
    let n = g.n();
    let mut out = vec![0; n];
    if n == 0 {
        return out;
    }
    let k = ((r / m) as usize).min(n);
    for v in out.iter_mut().take(k) {
        *v = m;
    }
    let rest = r - k as u32 * m;
    out[if k < n { k } else { 0 }] += rest;
    out
}

/// Flooded placement that never moves.
pub fn flood_revs(g: &Graph, m: u32, r: u32) -> StaticRevs {
    StaticRevs::new(flood_placement(g, m, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flood_examples() {
        assert_eq!(flood_placement(&Graph::path(4), 2, 6), vec![2, 2, 2, 0]);
        assert_eq!(flood_placement(&Graph::path(3), 2, 7), vec![3, 2, 2]);
        assert_eq!(flood_placement(&Graph::path(3), 3, 2), vec![2, 0, 0]);
        assert_eq!(flood_placement(&Graph::cycle(5), 2, 7), vec![2, 2, 2, 1, 0]);
    }
}
