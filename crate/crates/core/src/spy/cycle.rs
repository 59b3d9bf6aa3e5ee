//! Follower strategy on a cycle.
//!
//! Units (revolutionaries plus stationary pad/fake markers) are indexed in
//! cyclic order; spy `i` sits on the unit with index `i*m`. Any vertex holding
//! `m` units holds `m` consecutive indices, hence one multiple of `m`, hence a
//! spy. After a move the indices are realigned so that every index moves at
//! most one edge, and the spies move with their indices.

use crate::engine::StrategyError;
use crate::flow::MoveFlow;

/// Cyclic unit sequence with every `m`-th index carrying a spy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleSpyState {
    cycle: Vec<usize>,
    m: u32,
    /// Cycle position of each unit index; some rotation of this is sorted.
    units: Vec<usize>,
    /// Spy indices are those congruent to `phase` modulo `m`.
    phase: usize,
    pad_pos: usize,
    pads: u32,
}

fn cyc_dist(a: usize, b: usize, len: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(len - d)
}

/// Index where a cyclically sorted sequence starts, or `None` when the
/// sequence is not cyclically sorted.
fn cyclic_start(units: &[usize]) -> Option<usize> {
    let total = units.len();
    let mut descents = (0..total).filter(|&i| units[i] > units[(i + 1) % total]);
    match (descents.next(), descents.next()) {
        (None, _) => Some(0),
        (Some(i), None) => Some((i + 1) % total),
        _ => None,
    }
}

impl CycleSpyState {
    /// Builds the index sequence from per-position unit counts, starting the
    /// indexing at `start` (a cycle position).
    pub fn from_units(cycle: Vec<usize>, m: u32, counts: &[u32], start: usize, pads: u32) -> Self {
        let len = cycle.len();
        let mut units = Vec::new();
        for k in 0..len {
            let p = (start + k) % len;
            units.extend(std::iter::repeat_n(p, counts[p] as usize));
        }
        assert_eq!(
            units.len() % m as usize,
            0,
            "unit count must be a multiple of m"
        );
        CycleSpyState {
            cycle,
            m,
            units,
            phase: 0,
            pad_pos: start,
            pads,
        }
    }

    /// Initial placement on a bare cycle. Revolutionaries must all be on the
    /// cycle; `ceil(r/m)` spies are used, padding with stationary units
    /// co-located with index 0 when `m` does not divide `r`.
    pub fn place(
        cycle: Vec<usize>,
        rev: &[u32],
        m: u32,
    ) -> Result<(Vec<u32>, Self), StrategyError> {
        let mut on = vec![false; rev.len()];
        for &v in &cycle {
            on[v] = true;
        }
        if let Some(v) = (0..rev.len()).find(|&v| rev[v] > 0 && !on[v]) {
            return Err(StrategyError::PreconditionViolated(format!(
                "revolutionary off the cycle at vertex {v}"
            )));
        }
        let mut counts: Vec<u32> = cycle.iter().map(|&v| rev[v]).collect();
        let r: u32 = counts.iter().sum();
        let pads = r.div_ceil(m) * m - r;
        // Start at the smallest-label occupied vertex.
        let start = (0..cycle.len())
            .filter(|&p| counts[p] > 0)
            .min_by_key(|&p| cycle[p])
            .unwrap_or(0);
        counts[start] += pads;
        let st = CycleSpyState::from_units(cycle, m, &counts, start, pads);
        let spies = st.spy_counts(rev.len());
        Ok((spies, st))
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn pads(&self) -> (usize, u32) {
        (self.pad_pos, self.pads)
    }

    pub fn spy_count(&self) -> usize {
        self.units.len() / self.m as usize
    }

    /// Cycle positions of the spies, in index order.
    pub fn spy_positions(&self) -> Vec<usize> {
        self.units
            .iter()
            .enumerate()
            .filter(|(i, _)| i % self.m as usize == self.phase)
            .map(|(_, &p)| p)
            .collect()
    }

    pub fn spy_counts(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for p in self.spy_positions() {
            out[self.cycle[p]] += 1;
        }
        out
    }

    /// Units per cycle position.
    pub fn unit_counts(&self) -> Vec<u32> {
        let mut out = vec![0; self.len()];
        for &p in &self.units {
            out[p] += 1;
        }
        out
    }

    /// Every position holding `m` units holds a spy, and spies sit exactly
    /// on indices congruent to the phase.
    pub fn check_guarding(&self) -> Result<(), String> {
        if !self.units.len().is_multiple_of(self.m as usize) {
            return Err(format!(
                "{} units is not a multiple of m={}",
                self.units.len(),
                self.m
            ));
        }
        let spies = self.spy_positions();
        for (p, &c) in self.unit_counts().iter().enumerate() {
            if c >= self.m && !spies.contains(&p) {
                return Err(format!("position {p} holds {c} units but no spy"));
            }
        }
        if cyclic_start(&self.units).is_none() {
            return Err("unit sequence lost cyclic order".into());
        }
        Ok(())
    }

    /// Realigns the indices onto `new_counts` (units per cycle position) so
    /// that every index moves at most one edge. Returns `(from, to)` cycle
    /// positions for each spy in index order.
    pub fn reindex(&mut self, new_counts: &[u32]) -> Result<Vec<(usize, usize)>, StrategyError> {
        let len = self.len();
        let mut q = Vec::with_capacity(self.units.len());
        for (p, &c) in new_counts.iter().enumerate() {
            q.extend(std::iter::repeat_n(p, c as usize));
        }
        if q.len() != self.units.len() {
            return Err(StrategyError::CycleConditionBroken(format!(
                "{} units before, {} after",
                self.units.len(),
                q.len()
            )));
        }
        let total = q.len();
        if total == 0 {
            return Ok(Vec::new());
        }
        let old = &self.units;
        let k = (0..total)
            .find(|&k| (0..total).all(|i| cyc_dist(old[i], q[(i + k) % total], len) <= 1))
            .ok_or(StrategyError::NoValidReindexing)?;
        let new: Vec<usize> = (0..total).map(|i| q[(i + k) % total]).collect();
        let m = self.m as usize;
        let moves = (0..total)
            .filter(|i| i % m == self.phase)
            .map(|i| (old[i], new[i]))
            .collect();
        self.units = new;
        Ok(moves)
    }

    /// Removes a block of `m` consecutive units at `pos`; the block's spy
    /// is released. Fails when fewer than `m` units are there.
    pub fn remove_block(&mut self, pos: usize) -> Result<(), StrategyError> {
        let m = self.m as usize;
        let total = self.units.len();
        let run = self.units.iter().filter(|&&p| p == pos).count();
        if run < m {
            return Err(StrategyError::CycleConditionBroken(format!(
                "only {run} units at cycle position {pos}, need {m}"
            )));
        }
        // The run at `pos` may wrap past the end of the index sequence.
        let a = (0..total)
            .find(|&i| self.units[i] == pos && self.units[(i + total - 1) % total] != pos)
            .unwrap_or(0);
        let head = (a + m).saturating_sub(total);
        if head == 0 {
            self.units.drain(a..a + m);
        } else {
            self.units.truncate(a);
            self.units.drain(..head);
            self.phase = (self.phase + m - head % m) % m;
        }
        Ok(())
    }

    /// Inserts a block of `m` units at `pos` carrying one newly arrived spy.
    pub fn insert_block(&mut self, pos: usize) {
        let m = self.m as usize;
        if self.units.is_empty() {
            self.units = vec![pos; m];
            self.phase = 0;
            return;
        }
        let len = self.len();
        let total = self.units.len();
        let start = cyclic_start(&self.units).expect("units are cyclically sorted");
        let base = self.units[start];
        let lift = |p: usize| (p + len - base) % len;
        let k = (0..total)
            .find(|&k| lift(self.units[(start + k) % total]) > lift(pos))
            .unwrap_or(total);
        let at = (start + k) % total;
        self.units.splice(at..at, std::iter::repeat_n(pos, m));
    }

    /// Follower step on a bare cycle: realign onto the new
    /// revolutionary layout (pads stay put) and move spies with their
    /// indices.
    pub fn follow(&mut self, new_rev: &[u32]) -> Result<MoveFlow, StrategyError> {
        let n = new_rev.len();
        let mut counts: Vec<u32> = self.cycle.iter().map(|&v| new_rev[v]).collect();
        counts[self.pad_pos] += self.pads;
        let before = self.spy_counts(n);
        let moves = self.reindex(&counts)?;
        Ok(self.flow_from_moves(&before, &moves))
    }

    pub(crate) fn flow_from_moves(&self, before: &[u32], moves: &[(usize, usize)]) -> MoveFlow {
        let mut stay = before.to_vec();
        let mut traverse = Vec::new();
        for &(a, b) in moves {
            if a != b {
                stay[self.cycle[a]] -= 1;
                traverse.push((self.cycle[a], self.cycle[b], 1));
            }
        }
        MoveFlow::from_parts(stay, traverse)
    }

    pub fn annotation(&self) -> String {
        let idx: Vec<String> = self
            .units
            .iter()
            .map(|&p| self.cycle[p].to_string())
            .collect();
        format!("indices={}", idx.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{unguarded_meetings, Position};
    use crate::flow::validate_team_move;
    use crate::graph::Graph;

    #[test]
    fn c6_one_per_vertex() {
        let (spy, st) = CycleSpyState::place((0..6).collect(), &[1; 6], 2).unwrap();
        // indices 0,2,4 on vertices 0,2,4
        assert_eq!(spy, vec![1, 0, 1, 0, 1, 0]);
        st.check_guarding().unwrap();
    }

    #[test]
    fn all_on_one_vertex() {
        let (spy, _) = CycleSpyState::place((0..4).collect(), &[0, 0, 6, 0], 2).unwrap();
        assert_eq!(spy, vec![0, 0, 3, 0]);
    }

    #[test]
    fn c5_padding() {
        let rev = [2, 1, 2, 1, 1];
        let (spy, st) = CycleSpyState::place((0..5).collect(), &rev, 2).unwrap();
        assert_eq!(st.pads(), (0, 1));
        assert_eq!(spy.iter().sum::<u32>(), 4);
        // units: 0,0,0,1,2,2,3,4 -> spies at indices 0,2,4,6 = vertices 0,0,2,3
        assert_eq!(spy, vec![2, 0, 1, 1, 0]);
        assert!(unguarded_meetings(&Position::new(rev.to_vec(), spy), 2).is_empty());
    }

    #[test]
    fn rejects_off_cycle() {
        assert!(CycleSpyState::place(vec![0, 1, 2], &[1, 0, 0, 1], 2).is_err());
    }

    #[test]
    fn rotation_shifts_spies() {
        let g = Graph::cycle(6);
        let rev = [2, 0, 2, 0, 2, 0];
        let (spy, mut st) = CycleSpyState::place((0..6).collect(), &rev, 2).unwrap();
        let flow = st.follow(&[0, 2, 0, 2, 0, 2]).unwrap();
        assert_eq!(flow.before(), spy);
        assert_eq!(flow.after(), vec![0, 1, 0, 1, 0, 1]);
        assert!(validate_team_move(&g, &spy, &flow.after()).is_ok());
    }

    #[test]
    fn identity_when_nothing_moves() {
        let rev = [1, 2, 0, 1];
        let (spy, mut st) = CycleSpyState::place((0..4).collect(), &rev, 2).unwrap();
        let flow = st.follow(&rev).unwrap();
        assert_eq!(flow, MoveFlow::identity(&spy));
    }

    #[test]
    fn c4_realignment() {
        let (spy, mut st) = CycleSpyState::place((0..4).collect(), &[2, 1, 1, 0], 2).unwrap();
        let flow = st.follow(&[1, 2, 0, 1]).unwrap();
        assert_eq!(flow.before(), spy);
        let after = flow.after();
        assert!(unguarded_meetings(&Position::new(vec![1, 2, 0, 1], after.clone()), 2).is_empty());
        assert!(validate_team_move(&Graph::cycle(4), &spy, &after).is_ok());
        st.check_guarding().unwrap();
    }

    #[test]
    fn remove_and_insert_blocks() {
        let mut st = CycleSpyState::from_units((0..5).collect(), 2, &[2, 1, 0, 3, 0], 0, 0);
        assert_eq!(st.spy_count(), 3);
        st.remove_block(3).unwrap();
        assert_eq!(st.unit_counts(), vec![2, 1, 0, 1, 0]);
        st.check_guarding().unwrap();
        assert!(st.remove_block(1).is_err());
        st.insert_block(4);
        assert_eq!(st.unit_counts(), vec![2, 1, 0, 1, 2]);
        st.check_guarding().unwrap();
        assert!(st.spy_positions().contains(&4));
    }

    #[test]
    fn remove_block_with_wrapped_run() {
        // Sequence starting mid-run at position 0: 0,1,1,0 is not sorted; build
        // a wrapped run via reindexing instead.
        let mut st = CycleSpyState::from_units((0..4).collect(), 2, &[1, 0, 0, 1], 3, 0);
        assert_eq!(st.units(), &[3, 0]);
        st.remove_block(3).unwrap_err();
        let mut st = CycleSpyState::from_units((0..4).collect(), 2, &[2, 0, 0, 2], 3, 0);
        st.remove_block(0).unwrap();
        assert_eq!(st.unit_counts(), vec![0, 0, 0, 2]);
        st.check_guarding().unwrap();
    }

    #[test]
    fn remove_block_keeps_foreign_units() {
        let mut st = CycleSpyState::from_units((0..4).collect(), 3, &[5, 0, 0, 1], 0, 0);
        st.units = vec![0, 0, 0, 0, 3, 0];
        st.remove_block(0).unwrap();
        assert_eq!(st.unit_counts(), vec![2, 0, 0, 1]);
        st.check_guarding().unwrap();
    }

    #[test]
    fn insert_block_into_wrapped_sequence() {
        // units 3,0,0,3 on C4: the run at 3 wraps past the end
        let mut st = CycleSpyState::from_units((0..4).collect(), 2, &[2, 0, 0, 2], 0, 0);
        st.reindex(&[2, 0, 0, 2]).unwrap();
        st.units = vec![3, 0, 0, 3];
        st.insert_block(0);
        assert_eq!(st.units(), &[3, 0, 0, 0, 0, 3]);
        st.check_guarding().unwrap();
        st.insert_block(3);
        st.check_guarding().unwrap();
        st.insert_block(1);
        assert_eq!(st.unit_counts(), vec![4, 2, 0, 4]);
        st.check_guarding().unwrap();
    }
}
