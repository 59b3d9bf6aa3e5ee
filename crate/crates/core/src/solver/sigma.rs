//! The threshold number of spies, exactly and by closed formula.

use std::fmt;

use crate::engine::{GameConfig, Team};
use crate::graph::{classify, find_cycle, Graph, GraphClass};
use crate::solver::safety::solve_safety;
use crate::solver::SolverError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Formula,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Formula => "formula",
        })
    }
}

/// One solved game `(m, r, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub s: u32,
    pub winner: Team,
    pub states: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaResult {
    pub graph: String,
    pub m: u32,
    pub r: u32,
    pub sigma: u32,
    pub method: Method,
    pub verdicts: Vec<Verdict>,
}

impl SigmaResult {
    pub fn states(&self) -> u64 {
        self.verdicts.iter().map(|v| v.states).sum()
    }
}

/// `min{|V|, floor(r/m)} ..= min{|V|, r-m+1}`.
pub fn trivial_bounds(n: usize, m: u32, r: u32) -> (u32, u32) {
    let n = n as u32;
    let lo = n.min(r / m);
    let hi = n.min((r + 1).saturating_sub(m));
    (lo, hi.max(lo))
}

/// Smallest `s` for which the spies win, probing upward from the lower
/// trivial bound. One extra probe at `sigma + 1` checks monotonicity.
pub fn sigma_exact(g: &Graph, m: u32, r: u32, max_states: u64) -> Result<SigmaResult, SolverError> {
    let (lo, hi) = trivial_bounds(g.n(), m, r);
    let mut verdicts = Vec::new();
    let mut sigma = None;
    for s in lo..=hi {
        let ws = solve_safety(g, GameConfig::new(m, r, s), max_states)?;
        verdicts.push(Verdict {
            s,
            winner: ws.winner,
            states: ws.states(),
        });
        if ws.winner == Team::Spies {
            sigma = Some(s);
            break;
        }
    }
    let sigma = sigma.ok_or(SolverError::BoundViolated { m, r, s: hi })?;
    if sigma < g.n() as u32 {
        let s = sigma + 1;
        if let Ok(ws) = solve_safety(g, GameConfig::new(m, r, s), max_states) {
            if ws.winner != Team::Spies {
                return Err(SolverError::NotMonotone { m, r, s });
            }
            verdicts.push(Verdict {
                s,
                winner: ws.winner,
                states: ws.states(),
            });
        }
    }
    Ok(SigmaResult {
        graph: String::new(),
        m,
        r,
        sigma,
        method: Method::Exact,
        verdicts,
    })
}

/// Cycle length and number of vertices off the cycle.
pub fn cycle_shape(g: &Graph) -> Option<(usize, usize)> {
    let c = find_cycle(g).ok()??;
    Some((c.len(), g.n() - c.len()))
}

/// Closed-form threshold for forests, cycles and unicyclic graphs.
pub fn sigma_formula(g: &Graph, m: u32, r: u32) -> Result<SigmaResult, SolverError> {
    let class = classify(g);
    let n = g.n() as u64;
    if r as u64 > m as u64 * n {
        return Err(SolverError::AssumptionViolated { m, r, n: g.n() });
    }
    let floor = r / m;
    let ceil = r.div_ceil(m);
    if class == GraphClass::Other {
        return Err(SolverError::UnsupportedClass(class));
    }
    let sigma = match class {
        GraphClass::Tree | GraphClass::Forest => floor,
        _ if r.is_multiple_of(m) || r < m => floor,
        _ => {
            let (len, t) = cycle_shape(g).ok_or(SolverError::UnsupportedClass(class))?;
            let limit = (floor as i64 - t as i64 + 2).max(3);
            if len as i64 <= limit {
                floor
            } else {
                ceil
            }
        }
    };
    Ok(SigmaResult {
        graph: String::new(),
        m,
        r,
        sigma,
        method: Method::Formula,
        verdicts: Vec::new(),
    })
}
