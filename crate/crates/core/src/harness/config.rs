//! Run configuration: `key=value` files layered under command-line flags.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::harness::HarnessError;
use crate::solver::DEFAULT_MAX_STATES;

/// Environment variable that overrides the state budget.
pub const MAX_STATES_ENV: &str = "REVSPY_MAX_STATES";

/// Instance generators for sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// All trees with at most this many vertices.
    Trees(usize),
    /// Cycles with lengths in the range.
    Cycles { min: usize, max: usize },
    /// Unicyclic graphs, connected or not, with cycle lengths and numbers of
    /// off-cycle vertices in the given ranges.
    Unicyclic {
        len: (usize, usize),
        t: (usize, usize),
    },
}

fn parse_range(text: &str) -> Option<(usize, usize)> {
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.parse().ok()?, b.trim_start_matches('=').parse().ok()?);
            (a <= b).then_some((a, b))
        }
        None => text.parse().ok().map(|a| (a, a)),
    }
}

impl FromStr for Family {
    type Err = HarnessError;

    /// `trees:N`, `cycles:A..B`, `unicyclic:A..B:C..D`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::Usage(format!("--family: cannot parse `{s}`"));
        let mut parts = s.split(':');
        let fam = match (parts.next(), parts.next(), parts.next()) {
            (Some("trees"), Some(n), None) => Family::Trees(n.parse().map_err(|_| bad())?),
            (Some("cycles"), Some(r), None) => {
                let (min, max) = parse_range(r).ok_or_else(bad)?;
                Family::Cycles {
                    min: min.max(3),
                    max,
                }
            }
            (Some("unicyclic"), Some(l), Some(t)) => {
                let len = parse_range(l).ok_or_else(bad)?;
                Family::Unicyclic {
                    len: (len.0.max(3), len.1),
                    t: parse_range(t).ok_or_else(bad)?,
                }
            }
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(fam)
    }
}

/// Parses `7`, `3,5,7` or `1..7`.
pub fn parse_values(text: &str) -> Option<Vec<u32>> {
    if text.contains("..") {
        let (a, b) = parse_range(text)?;
        return Some((a as u32..=b as u32).collect());
    }
    text.split(',').map(|v| v.trim().parse().ok()).collect()
}

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, HarnessError> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            HarnessError::Usage(format!("config line {}: expected key=value", i + 1))
        })?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub graphs: Vec<PathBuf>,
    pub family: Option<Family>,
    pub m: Option<u32>,
    pub r: Vec<u32>,
    pub s: Option<u32>,
    pub strategy: Option<String>,
    pub spies: Option<String>,
    pub revs: Option<String>,
    pub exact: bool,
    pub formula: bool,
    pub compare: bool,
    pub max_rounds: Option<u64>,
    pub max_states: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            graphs: Vec::new(),
            family: None,
            m: None,
            r: Vec::new(),
            s: None,
            strategy: None,
            spies: None,
            revs: None,
            exact: false,
            formula: false,
            compare: false,
            max_rounds: None,
            max_states: DEFAULT_MAX_STATES,
            seed: 0,
            out: None,
            timings: false,
        }
    }
}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T, HarnessError> {
    v.parse()
        .map_err(|_| HarnessError::Usage(format!("{key}: cannot parse `{v}`")))
}

fn flag(key: &str, v: &str) -> Result<bool, HarnessError> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(HarnessError::Usage(format!(
            "{key}: expected true or false, got `{v}`"
        ))),
    }
}

impl RunConfig {
    /// Builds a configuration from settings; later layers win. The state
    /// budget from the environment, when given, beats every layer.
    pub fn from_layers(
        layers: &[BTreeMap<String, String>],
        env_budget: Option<&str>,
    ) -> Result<Self, HarnessError> {
        let mut merged = BTreeMap::new();
        for layer in layers {
            merged.extend(layer.iter().map(|(k, v)| (k.clone(), v.clone())));
        }
        let mut cfg = RunConfig::default();
        for (k, v) in &merged {
            let v = v.as_str();
            match k.as_str() {
                "graph" => cfg.graphs = v.split(',').map(|p| PathBuf::from(p.trim())).collect(),
                "family" => cfg.family = Some(v.parse()?),
                "m" => cfg.m = Some(num(k, v)?),
                "r" => {
                    cfg.r = parse_values(v)
                        .ok_or_else(|| HarnessError::Usage(format!("r: cannot parse `{v}`")))?
                }
                "s" => cfg.s = Some(num(k, v)?),
                "strategy" => cfg.strategy = Some(v.to_string()),
                "spies" => cfg.spies = Some(v.to_string()),
                "revs" => cfg.revs = Some(v.to_string()),
                "exact" => cfg.exact = flag(k, v)?,
                "formula" => cfg.formula = flag(k, v)?,
                "compare" => cfg.compare = flag(k, v)?,
                "max_rounds" | "rounds" => cfg.max_rounds = Some(num(k, v)?),
                "max_states" => cfg.max_states = num(k, v)?,
                "seed" => cfg.seed = num(k, v)?,
                "out" => cfg.out = Some(PathBuf::from(v)),
                "timings" => cfg.timings = flag(k, v)?,
                _ => return Err(HarnessError::Usage(format!("unknown setting `{k}`"))),
            }
        }
        if let Some(b) = env_budget {
            cfg.max_states = num(MAX_STATES_ENV, b)?;
        }
        if cfg.m == Some(0) {
            return Err(HarnessError::Usage("m: must be at least 1".into()));
        }
        Ok(cfg)
    }

    pub fn need_m(&self) -> Result<u32, HarnessError> {
        self.m
            .ok_or_else(|| HarnessError::Usage("missing -m".into()))
    }

    pub fn need_r(&self) -> Result<u32, HarnessError> {
        match self.r.as_slice() {
            [r] => Ok(*r),
            [] => Err(HarnessError::Usage("missing -r".into())),
            _ => Err(HarnessError::Usage("-r: expected a single value".into())),
        }
    }

    pub fn need_s(&self) -> Result<u32, HarnessError> {
        self.s
            .ok_or_else(|| HarnessError::Usage("missing -s".into()))
    }
}
