//! Adversarial closure: run a deterministic spy strategy against every
//! revolutionary placement and every sequence of revolutionary moves.

use std::collections::{HashSet, VecDeque};

use crate::engine::{
    unguarded_meetings, GameConfig, Outcome, Position, SpyStrategy, Team, Transcript,
};
use crate::flow::validate_team_move;
use crate::graph::Graph;
use crate::solver::space::ConfigSpace;
use crate::solver::state_estimate;
use crate::solver::SolverError;

#[derive(Debug, Clone)]
pub enum Verification {
    /// No reachable position has an unguarded meeting.
    Holds { states: u64 },
    /// Shortest losing play found.
    Counterexample(Box<Transcript>),
}

impl Verification {
    pub fn holds(&self) -> bool {
        matches!(self, Verification::Holds { .. })
    }
}

struct Node {
    rev: u32,
    spy: Vec<u32>,
    parent: Option<usize>,
}

fn transcript(
    nodes: &[Node],
    revs: &ConfigSpace,
    cfg: GameConfig,
    mut at: Option<usize>,
) -> Transcript {
    let mut path = Vec::new();
    while let Some(i) = at {
        path.push(i);
        at = nodes[i].parent;
    }
    path.reverse();
    let mut tr = Transcript::new("", cfg, 0);
    for (round, &i) in path.iter().enumerate() {
        tr.push(
            round as u64,
            Team::Revolutionaries,
            revs.config(nodes[i].rev as usize).to_vec(),
            None,
        );
        tr.push(round as u64, Team::Spies, nodes[i].spy.clone(), None);
    }
    tr
}

/// Explores all plays of `proto` (cloned per branch) breadth first. The
/// budget caps the number of distinct `(rev, spy, strategy state)` nodes.
pub fn verify_strategy<S>(
    g: &Graph,
    cfg: GameConfig,
    proto: &S,
    max_states: u64,
) -> Result<Verification, SolverError>
where
    S: SpyStrategy + Clone,
{
    let rev_count = state_estimate(g.n(), GameConfig::new(cfg.m, cfg.r, 0)) / 2;
    if rev_count > max_states {
        return Err(SolverError::StateSpaceTooLarge {
            estimate: rev_count,
            cap: max_states,
        });
    }
    let revs = ConfigSpace::new(g, cfg.r);
    let mut nodes: Vec<Node> = Vec::new();
    let mut seen: HashSet<(u32, Vec<u32>, Vec<u32>)> = HashSet::new();
    let mut queue: VecDeque<(usize, S)> = VecDeque::new();

    let fail = |nodes: &[Node],
                parent: Option<usize>,
                round: u64,
                rev: &[u32],
                spy: Option<Vec<u32>>,
                outcome: Outcome| {
        let mut tr = transcript(nodes, &revs, cfg, parent);
        tr.push(round, Team::Revolutionaries, rev.to_vec(), None);
        if let Some(spy) = spy {
            let note = match &outcome.reason {
                crate::engine::Reason::Forfeit { .. } => Some("rejected".to_string()),
                _ => None,
            };
            tr.push(round, Team::Spies, spy, note);
        }
        tr.outcome = Some(outcome);
        Ok(Verification::Counterexample(Box::new(tr)))
    };

    for r0 in 0..revs.len() {
        let rev = revs.config(r0);
        let mut strat = proto.clone();
        let spy = match strat.place(rev) {
            Ok(s) => s,
            Err(e) => {
                return fail(
                    &nodes,
                    None,
                    0,
                    rev,
                    None,
                    Outcome::forfeit(Team::Spies, 0, e.to_string()),
                )
            }
        };
        if spy.len() != g.n() || spy.iter().sum::<u32>() != cfg.s {
            return fail(
                &nodes,
                None,
                0,
                rev,
                Some(spy),
                Outcome::forfeit(Team::Spies, 0, "wrong spy count"),
            );
        }
        if let Some(&v) =
            unguarded_meetings(&Position::new(rev.to_vec(), spy.clone()), cfg.m).first()
        {
            return fail(&nodes, None, 0, rev, Some(spy), Outcome::meeting(v, 0));
        }
        if seen.insert((r0 as u32, spy.clone(), strat.state_key())) {
            nodes.push(Node {
                rev: r0 as u32,
                spy,
                parent: None,
            });
            queue.push_back((nodes.len() - 1, strat));
        }
    }

    while let Some((i, strat)) = queue.pop_front() {
        let depth = {
            let mut d = 0u64;
            let mut at = nodes[i].parent;
            while let Some(p) = at {
                d += 1;
                at = nodes[p].parent;
            }
            d
        };
        let round = depth + 1;
        let r = nodes[i].rev as usize;
        for &r2 in revs.successors(r) {
            let rev2 = revs.config(r2 as usize);
            let spy = nodes[i].spy.clone();
            let mut next = strat.clone();
            let pos = Position::new(rev2.to_vec(), spy.clone());
            let spy2 = match next.respond(&pos) {
                Ok(s) => s,
                Err(e) => {
                    return fail(
                        &nodes,
                        Some(i),
                        round,
                        rev2,
                        None,
                        Outcome::forfeit(Team::Spies, round, e.to_string()),
                    )
                }
            };
            if let Err(e) = validate_team_move(g, &spy, &spy2) {
                return fail(
                    &nodes,
                    Some(i),
                    round,
                    rev2,
                    Some(spy2),
                    Outcome::forfeit(Team::Spies, round, e.to_string()),
                );
            }
            if let Some(&v) =
                unguarded_meetings(&Position::new(rev2.to_vec(), spy2.clone()), cfg.m).first()
            {
                return fail(
                    &nodes,
                    Some(i),
                    round,
                    rev2,
                    Some(spy2),
                    Outcome::meeting(v, round),
                );
            }
            if seen.insert((r2, spy2.clone(), next.state_key())) {
                if nodes.len() as u64 >= max_states {
                    return Err(SolverError::StateSpaceTooLarge {
                        estimate: nodes.len() as u64 + 1,
                        cap: max_states,
                    });
                }
                nodes.push(Node {
                    rev: r2,
                    spy: spy2,
                    parent: Some(i),
                });
                queue.push_back((nodes.len() - 1, next));
            }
        }
    }
    Ok(Verification::Holds {
        states: nodes.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spy::{TreeSpies, UnicyclicSpies};

    const CAP: u64 = 5_000_000;

    #[test]
    fn tree_strategy_on_p4() {
        let g = Graph::path(4);
        let cfg = GameConfig::new(2, 4, 2);
        let v = verify_strategy(&g, cfg, &TreeSpies::new(&g, cfg).unwrap(), CAP).unwrap();
        assert!(v.holds());
    }

    #[test]
    fn too_few_spies_lose_at_placement() {
        let g = Graph::path(4);
        let cfg = GameConfig::new(2, 4, 1);
        let v = verify_strategy(&g, cfg, &TreeSpies::new(&g, cfg).unwrap(), CAP).unwrap();
        let Verification::Counterexample(tr) = v else {
            panic!("expected a counterexample")
        };
        assert_eq!(tr.rounds(), 0);
        tr.replay(&g).unwrap();
    }

    #[test]
    fn follower_on_c5() {
        let g = Graph::cycle(5);
        let cfg = GameConfig::new(2, 5, 3);
        let v = verify_strategy(
            &g,
            cfg,
            &UnicyclicSpies::follower_only(&g, cfg).unwrap(),
            CAP,
        )
        .unwrap();
        assert!(v.holds(), "{v:?}");
    }
}
