//! Command-line front end: configuration, named strategies, subcommands
//! and batch sweeps.

pub mod cli;
pub mod config;
pub mod sweep;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::engine::{
    default_horizon, play_match, GameConfig, RevStrategy, SpyStrategy, StrategyError,
};
use crate::graph::{classify, parse_graph, Graph, GraphError};
use crate::rev::random::RandomSpies;
use crate::rev::{flood_revs, LongCycleRevs, RandomRevs, UnicyclicRevs};
use crate::solver::{
    cycle_shape, sigma_exact, sigma_formula, solve_safety, verify_strategy, SolverError,
    SolverRevs, SolverSpies, Verification,
};
use crate::spy::{GreedySpies, TreeSpies, UnicyclicSpies};

pub use cli::cli_main;
pub use config::{parse_config, Family, RunConfig};
pub use sweep::{sweep, Report, Row, Status, SCHEMA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const SPY_STRATEGIES: &[&str] = &["tree", "cycle", "unicyclic", "greedy", "random", "solver"];
pub const REV_STRATEGIES: &[&str] = &["flood", "random", "long-cycle", "unicyclic", "solver"];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    BadGraph { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Solver(SolverError::StateSpaceTooLarge { .. }) => EXIT_BUDGET,
            HarnessError::Solver(
                SolverError::BoundViolated { .. } | SolverError::NotMonotone { .. },
            ) => EXIT_FOUND,
            _ => EXIT_USAGE,
        }
    }
}

/// Text printed by a command and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            stdout,
            code: EXIT_OK,
        }
    }
}

/// Compact, deterministic identifier: `n:u-v/u-v/...` with sorted edges.
pub fn graph_id(g: &Graph) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    let edges: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{}:{}", g.n(), edges.join("/"))
}

/// Reads a graph file. Names such as `cycle:5`, `path:4` or `star:3` that
/// are not existing files build the graph directly.
pub fn load_graph(path: &Path) -> Result<Graph, HarnessError> {
    if !path.exists() {
        let text = path.to_string_lossy();
        if let Some((kind, k)) = text.split_once(':') {
            if let Ok(k) = k.parse::<usize>() {
                match kind {
                    "cycle" if k >= 3 => return Ok(Graph::cycle(k)),
                    "path" if k >= 1 => return Ok(Graph::path(k)),
                    "star" => return Ok(Graph::star(k)),
                    _ => {}
                }
            }
        }
    }
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.into(),
        source,
    })?;
    parse_graph(&text).map_err(|source| HarnessError::BadGraph {
        path: path.into(),
        source,
    })
}

fn write_out(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.into(),
        source,
    })
}

fn one_graph(cfg: &RunConfig) -> Result<(Graph, String), HarnessError> {
    match cfg.graphs.as_slice() {
        [p] => Ok((load_graph(p)?, p.display().to_string())),
        [] => Err(HarnessError::Usage("missing --graph".into())),
        _ => Err(HarnessError::Usage(
            "--graph: expected a single graph".into(),
        )),
    }
}

fn unknown(kind: &str, name: &str, known: &[&str]) -> HarnessError {
    HarnessError::Usage(format!(
        "unknown {kind} strategy `{name}` (known: {})",
        known.join(", ")
    ))
}

pub fn spy_strategy(
    name: &str,
    g: &Graph,
    game: GameConfig,
    cfg: &RunConfig,
) -> Result<Box<dyn SpyStrategy>, HarnessError> {
    Ok(match name {
        "tree" => Box::new(TreeSpies::new(g, game)?),
        "cycle" => Box::new(UnicyclicSpies::follower_only(g, game)?),
        "unicyclic" => Box::new(UnicyclicSpies::new(g, game)?),
        "greedy" => Box::new(GreedySpies::new(g, game.m, game.s)),
        "random" => Box::new(RandomSpies::new(g, game.s, cfg.seed)),
        "solver" => Box::new(SolverSpies::new(Arc::new(solve_safety(
            g,
            game,
            cfg.max_states,
        )?))),
        _ => return Err(unknown("spy", name, SPY_STRATEGIES)),
    })
}

pub fn rev_strategy(
    name: &str,
    g: &Graph,
    game: GameConfig,
    cfg: &RunConfig,
) -> Result<Box<dyn RevStrategy>, HarnessError> {
    Ok(match name {
        "flood" => Box::new(flood_revs(g, game.m, game.r)),
        "random" => Box::new(RandomRevs::new(g, game.r, cfg.seed)),
        "long-cycle" => Box::new(LongCycleRevs::new(g, game.m, game.r, game.s)?),
        "unicyclic" => Box::new(UnicyclicRevs::new(g, game.m, game.r, game.s)?),
        "solver" => Box::new(SolverRevs::new(Arc::new(solve_safety(
            g,
            game,
            cfg.max_states,
        )?))),
        _ => return Err(unknown("revolutionary", name, REV_STRATEGIES)),
    })
}

/// Closure check of a named deterministic spy strategy.
pub fn verify_named(
    name: &str,
    g: &Graph,
    game: GameConfig,
    max_states: u64,
) -> Result<Verification, HarnessError> {
    let v = match name {
        "tree" => verify_strategy(g, game, &TreeSpies::new(g, game)?, max_states),
        "cycle" => verify_strategy(
            g,
            game,
            &UnicyclicSpies::follower_only(g, game)?,
            max_states,
        ),
        "unicyclic" => verify_strategy(g, game, &UnicyclicSpies::new(g, game)?, max_states),
        "greedy" => verify_strategy(g, game, &GreedySpies::new(g, game.m, game.s), max_states),
        "solver" => {
            let win = Arc::new(solve_safety(g, game, max_states)?);
            verify_strategy(g, game, &SolverSpies::new(win), max_states)
        }
        _ => {
            return Err(unknown(
                "verifiable spy",
                name,
                &["tree", "cycle", "unicyclic", "greedy", "solver"],
            ))
        }
    };
    Ok(v?)
}

fn record(id: &str, game: GameConfig, winner: &str, states: u64, millis: u128) -> String {
    format!(
        "graph={id} m={} r={} s={} winner={winner} states={states} millis={millis}",
        game.m, game.r, game.s
    )
}

pub fn run_classify(cfg: &RunConfig) -> Result<CommandOutput, HarnessError> {
    if cfg.graphs.is_empty() {
        return Err(HarnessError::Usage("missing --graph".into()));
    }
    let mut out = String::new();
    for p in &cfg.graphs {
        let g = load_graph(p)?;
        let shape = match cycle_shape(&g) {
            Some((l, t)) => format!(" l={l} t={t}"),
            None => String::new(),
        };
        out.push_str(&format!(
            "{}: class={} n={}{shape}\n",
            p.display(),
            classify(&g).name(),
            g.n()
        ));
    }
    Ok(CommandOutput::ok(out))
}

pub fn run_sigma(cfg: &RunConfig) -> Result<CommandOutput, HarnessError> {
    let (g, _) = one_graph(cfg)?;
    let (m, r) = (cfg.need_m()?, cfg.need_r()?);
    let id = graph_id(&g);
    let want_exact = cfg.exact || cfg.compare || !cfg.formula;
    let want_formula = cfg.formula || cfg.compare;
    let formula = if want_formula {
        Some(sigma_formula(&g, m, r)?.sigma)
    } else {
        None
    };
    let exact = if want_exact {
        let start = Instant::now();
        let res = sigma_exact(&g, m, r, cfg.max_states)?;
        let millis = if cfg.timings {
            start.elapsed().as_millis()
        } else {
            0
        };
        if let Some(path) = &cfg.out {
            let lines: Vec<String> = res
                .verdicts
                .iter()
                .map(|v| {
                    record(
                        &id,
                        GameConfig::new(m, r, v.s),
                        v.winner.name(),
                        v.states,
                        millis,
                    )
                })
                .collect();
            write_out(path, &(lines.join("\n") + "\n"))?;
        }
        Some(res.sigma)
    } else {
        None
    };
    Ok(match (exact, formula) {
        (Some(e), Some(f)) if want_formula && (cfg.compare || cfg.exact) => {
            if e == f {
                CommandOutput::ok(format!("agree: {e}\n"))
            } else {
                CommandOutput {
                    stdout: format!("DISAGREE: exact={e} formula={f}\n"),
                    code: EXIT_FOUND,
                }
            }
        }
        (Some(s), _) | (None, Some(s)) => CommandOutput::ok(format!("sigma={s}\n")),
        (None, None) => unreachable!("one method always runs"),
    })
}

pub fn run_verify(cfg: &RunConfig) -> Result<CommandOutput, HarnessError> {
    let (g, label) = one_graph(cfg)?;
    let game = GameConfig::new(cfg.need_m()?, cfg.need_r()?, cfg.need_s()?);
    let name = cfg
        .strategy
        .as_deref()
        .ok_or_else(|| HarnessError::Usage("missing --strategy".into()))?;
    let start = Instant::now();
    let v = verify_named(name, &g, game, cfg.max_states)?;
    let millis = if cfg.timings {
        start.elapsed().as_millis()
    } else {
        0
    };
    let id = graph_id(&g);
    Ok(match v {
        Verification::Holds { states } => {
            if let Some(path) = &cfg.out {
                write_out(path, &(record(&id, game, "spies", states, millis) + "\n"))?;
            }
            CommandOutput::ok(format!(
                "holds: {name} on {label} ({game}) states={states}\n"
            ))
        }
        Verification::Counterexample(mut tr) => {
            tr.graph_label = id;
            let text = tr.to_text();
            let mut stdout = format!(
                "counterexample: {name} on {label} ({game}) rounds={}\n",
                tr.rounds()
            );
            match &cfg.out {
                Some(path) => write_out(path, &text)?,
                None => stdout.push_str(&text),
            }
            CommandOutput {
                stdout,
                code: EXIT_FOUND,
            }
        }
    })
}

pub fn run_match(cfg: &RunConfig) -> Result<CommandOutput, HarnessError> {
    let (g, _) = one_graph(cfg)?;
    let game = GameConfig::new(cfg.need_m()?, cfg.need_r()?, cfg.need_s()?);
    let spies = cfg
        .spies
        .as_deref()
        .ok_or_else(|| HarnessError::Usage("missing --spies".into()))?;
    let revs = cfg
        .revs
        .as_deref()
        .ok_or_else(|| HarnessError::Usage("missing --revs".into()))?;
    let mut sp = spy_strategy(spies, &g, game, cfg)?;
    let mut rv = rev_strategy(revs, &g, game, cfg)?;
    let rounds = cfg
        .max_rounds
        .unwrap_or_else(|| default_horizon(g.n(), game.r));
    let (outcome, mut tr) = play_match(&g, game, rv.as_mut(), sp.as_mut(), rounds);
    tr.graph_label = graph_id(&g);
    tr.seed = cfg.seed;
    if let Some(path) = &cfg.out {
        write_out(path, &tr.to_text())?;
    }
    Ok(CommandOutput::ok(format!(
        "{outcome}\ngraph={} m={} r={} s={} spies={spies} revs={revs} rounds={}\n",
        tr.graph_label,
        game.m,
        game.r,
        game.s,
        tr.rounds()
    )))
}

pub fn run_sweep(cfg: &RunConfig) -> Result<CommandOutput, HarnessError> {
    let report = sweep(cfg)?;
    let mut stdout = String::new();
    match &cfg.out {
        Some(path) => write_out(path, &report.to_text())?,
        None => stdout.push_str(&report.to_text()),
    }
    stdout.push_str(&report.summary());
    stdout.push('\n');
    let code = if report.failures().next().is_some() {
        EXIT_FOUND
    } else if report.budget_rows() > 0 {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok(CommandOutput { stdout, code })
}
