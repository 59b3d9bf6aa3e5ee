//! Batch runs over instance families with a delimited report.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::enumerate::{trees, unicyclic_family};
use crate::graph::{classify, Graph, GraphClass};
use crate::harness::config::{Family, RunConfig};
use crate::harness::{graph_id, HarnessError};
use crate::solver::{cycle_shape, sigma_exact, sigma_formula, SolverError};

pub const SCHEMA: &str = "#schema graph,class,l,t,m,r,s,method,verdict,states,millis";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
    pub class: GraphClass,
    pub len: Option<usize>,
    pub t: usize,
}

impl Instance {
    pub fn new(graph: Graph) -> Self {
        let class = classify(&graph);
        let (len, t) = match cycle_shape(&graph) {
            Some((l, t)) => (Some(l), t),
            None => (None, graph.n()),
        };
        Instance {
            id: graph_id(&graph),
            graph,
            class,
            len,
            t,
        }
    }
}

/// Instances of a family in a fixed order.
pub fn instances(family: &Family) -> Vec<Instance> {
    let graphs: Vec<Graph> = match *family {
        Family::Trees(max) => (1..=max).flat_map(trees).collect(),
        Family::Cycles { min, max } => (min..=max).map(Graph::cycle).collect(),
        Family::Unicyclic { len, t } => (len.0..=len.1)
            .flat_map(|l| (t.0..=t.1).flat_map(move |t| unicyclic_family(l, t, false)))
            .collect(),
    };
    graphs.into_iter().map(Instance::new).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMethod {
    Exact,
    Formula,
    Compare,
}

impl SweepMethod {
    pub fn from_config(cfg: &RunConfig) -> Self {
        match (cfg.exact, cfg.formula, cfg.compare) {
            (true, false, false) => SweepMethod::Exact,
            (false, true, false) => SweepMethod::Formula,
            _ => SweepMethod::Compare,
        }
    }

    fn name(self) -> &'static str {
        match self {
            SweepMethod::Exact => "exact",
            SweepMethod::Formula => "formula",
            SweepMethod::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Solved,
    Agree,
    Disagree {
        formula: u32,
    },
    Budget,
    Unsupported,
    /// Solver result contradicting the trivial bounds or monotonicity.
    Anomaly(String),
}

impl Status {
    fn text(&self) -> String {
        match self {
            Status::Solved => "ok".into(),
            Status::Agree => "agree".into(),
            Status::Disagree { formula } => format!("DISAGREE:formula={formula}"),
            Status::Budget => "budget".into(),
            Status::Unsupported => "unsupported".into(),
            Status::Anomaly(msg) => format!("ANOMALY:{}", msg.replace(',', ";")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub graph: String,
    pub class: GraphClass,
    pub len: Option<usize>,
    pub t: usize,
    pub m: u32,
    pub r: u32,
    pub s: Option<u32>,
    pub method: SweepMethod,
    pub status: Status,
    pub states: u64,
    pub millis: u128,
}

impl Row {
    pub fn to_line(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.graph,
            self.class.name(),
            opt(self.len.map(|l| l.to_string())),
            self.t,
            self.m,
            self.r,
            opt(self.s.map(|s| s.to_string())),
            self.method.name(),
            self.status.text(),
            self.states,
            self.millis
        )
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Disagree { .. } | Status::Anomaly(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::from(SCHEMA);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_line());
            out.push('\n');
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.failed())
    }

    pub fn budget_rows(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status == Status::Budget)
            .count()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "rows={} failures={} budget={}",
            self.rows.len(),
            self.failures().count(),
            self.budget_rows()
        );
        for row in self.failures() {
            let _ = write!(s, "\n!! {}", row.to_line());
        }
        s
    }
}

/// Solves one instance at one `r`.
pub fn run_row(
    inst: &Instance,
    m: u32,
    r: u32,
    method: SweepMethod,
    max_states: u64,
    timings: bool,
) -> Row {
    let start = Instant::now();
    let mut row = Row {
        graph: inst.id.clone(),
        class: inst.class,
        len: inst.len,
        t: inst.t,
        m,
        r,
        s: None,
        method,
        status: Status::Solved,
        states: 0,
        millis: 0,
    };
    let formula = match method {
        SweepMethod::Exact => None,
        _ => match sigma_formula(&inst.graph, m, r) {
            Ok(f) => Some(f.sigma),
            Err(_) => {
                row.status = Status::Unsupported;
                return row;
            }
        },
    };
    if method == SweepMethod::Formula {
        row.s = formula;
    } else {
        match sigma_exact(&inst.graph, m, r, max_states) {
            Ok(res) => {
                row.s = Some(res.sigma);
                row.states = res.states();
                row.status = match formula {
                    None => Status::Solved,
                    Some(f) if f == res.sigma => Status::Agree,
                    Some(f) => Status::Disagree { formula: f },
                };
            }
            Err(SolverError::StateSpaceTooLarge { .. }) => row.status = Status::Budget,
            Err(e @ (SolverError::BoundViolated { .. } | SolverError::NotMonotone { .. })) => {
                row.status = Status::Anomaly(e.to_string())
            }
            Err(_) => row.status = Status::Unsupported,
        }
    }
    if timings {
        row.millis = start.elapsed().as_millis();
    }
    row
}

/// Runs every `(instance, r)` pair with `r <= m*n`; rows run in parallel
/// and come back in instance order.
pub fn sweep(cfg: &RunConfig) -> Result<Report, HarnessError> {
    let family = cfg
        .family
        .as_ref()
        .ok_or_else(|| HarnessError::Usage("missing --family".into()))?;
    let m = cfg.need_m()?;
    if cfg.r.is_empty() {
        return Err(HarnessError::Usage("missing -r".into()));
    }
    let method = SweepMethod::from_config(cfg);
    let insts = instances(family);
    let jobs: Vec<(&Instance, u32)> = insts
        .iter()
        .flat_map(|i| {
            cfg.r
                .iter()
                .filter(move |&&r| r as u64 <= m as u64 * i.graph.n() as u64)
                .map(move |&r| (i, r))
        })
        .collect();
    let rows = jobs
        .par_iter()
        .map(|&(inst, r)| run_row(inst, m, r, method, cfg.max_states, cfg.timings))
        .collect();
    Ok(Report { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_sweep_is_deterministic_and_agrees() {
        let cfg = RunConfig {
            family: Some(Family::Cycles { min: 3, max: 5 }),
            m: Some(2),
            r: vec![3, 5],
            ..RunConfig::default()
        };
        let a = sweep(&cfg).unwrap();
        let b = sweep(&cfg).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.rows.len(), 6);
        assert_eq!(a.failures().count(), 0);
        assert!(a.to_text().starts_with(SCHEMA));
        assert_eq!(
            a.rows[0].to_line(),
            format!(
                "3:0-1/0-2/1-2,cycle,3,0,2,3,1,compare,agree,{},0",
                a.rows[0].states
            )
        );
    }

    #[test]
    fn over_budget_rows_are_kept() {
        let cfg = RunConfig {
            family: Some(Family::Cycles { min: 5, max: 5 }),
            m: Some(2),
            r: vec![7],
            max_states: 10,
            ..RunConfig::default()
        };
        let rep = sweep(&cfg).unwrap();
        assert_eq!(rep.rows[0].status, Status::Budget);
        assert_eq!(rep.budget_rows(), 1);
    }

    #[test]
    fn tree_family_size() {
        assert_eq!(instances(&Family::Trees(6)).len(), 1 + 1 + 1 + 2 + 3 + 6);
    }
}
