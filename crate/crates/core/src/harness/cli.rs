//! Argument parsing for the `revspy` binary.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::harness::config::{parse_config, RunConfig, MAX_STATES_ENV};
use crate::harness::{
    run_classify, run_match, run_sigma, run_sweep, run_verify, CommandOutput, HarnessError,
};

#[derive(Parser, Debug)]
#[command(
    name = "revspy",
    version,
    about = "Revolutionaries and spies on graphs"
)]
struct Cli {
    /// File of key=value settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Default)]
struct Game {
    /// Graph file, or cycle:N, path:N, star:N.
    #[arg(long)]
    graph: Vec<String>,
    /// Meeting size.
    #[arg(short = 'm')]
    m: Option<u32>,
    /// Revolutionaries; a list or range in sweeps.
    #[arg(short = 'r')]
    r: Option<String>,
    /// Spies.
    #[arg(short = 's')]
    s: Option<u32>,
    #[arg(long)]
    max_states: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file for records, transcripts or reports.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock times (reports are no longer reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args, Debug, Default)]
struct Methods {
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    formula: bool,
    #[arg(long)]
    compare: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the class, cycle length and off-cycle count of graphs.
    Classify {
        #[command(flatten)]
        game: Game,
    },
    /// Threshold number of spies.
    Sigma {
        #[command(flatten)]
        game: Game,
        #[command(flatten)]
        methods: Methods,
    },
    /// Check a spy strategy against every revolutionary play.
    Verify {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Play one match between named strategies.
    Match {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        spies: Option<String>,
        #[arg(long)]
        revs: Option<String>,
        #[arg(long)]
        rounds: Option<u64>,
    },
    /// Threshold over a family of graphs.
    Sweep {
        #[command(flatten)]
        game: Game,
        #[command(flatten)]
        methods: Methods,
        /// trees:N, cycles:A..B or unicyclic:A..B:C..D
        #[arg(long)]
        family: Option<String>,
    },
}

impl Game {
    fn pairs(&self, out: &mut BTreeMap<String, String>) {
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.insert(k.to_string(), v);
            }
        };
        put(
            "graph",
            (!self.graph.is_empty()).then(|| self.graph.join(",")),
        );
        put("m", self.m.map(|v| v.to_string()));
        put("r", self.r.clone());
        put("s", self.s.map(|v| v.to_string()));
        put("max_states", self.max_states.map(|v| v.to_string()));
        put("seed", self.seed.map(|v| v.to_string()));
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("timings", self.timings.then(|| "true".into()));
    }
}

impl Methods {
    fn pairs(&self, out: &mut BTreeMap<String, String>) {
        for (k, on) in [
            ("exact", self.exact),
            ("formula", self.formula),
            ("compare", self.compare),
        ] {
            if on {
                out.insert(k.into(), "true".into());
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<CommandOutput, HarnessError> {
    let file = match &cli.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|source| HarnessError::Io {
                path: p.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    let mut flags = BTreeMap::new();
    let mut opt = |k: &str, v: &Option<String>| {
        if let Some(v) = v {
            flags.insert(k.to_string(), v.clone());
        }
    };
    let run: fn(&RunConfig) -> Result<CommandOutput, HarnessError> = match &cli.cmd {
        Command::Classify { .. } => run_classify,
        Command::Sigma { .. } => run_sigma,
        Command::Verify { strategy, .. } => {
            opt("strategy", strategy);
            run_verify
        }
        Command::Match {
            spies,
            revs,
            rounds,
            ..
        } => {
            opt("spies", spies);
            opt("revs", revs);
            opt("max_rounds", &rounds.map(|r| r.to_string()));
            run_match
        }
        Command::Sweep { family, .. } => {
            opt("family", family);
            run_sweep
        }
    };
    match &cli.cmd {
        Command::Classify { game } | Command::Verify { game, .. } | Command::Match { game, .. } => {
            game.pairs(&mut flags)
        }
        Command::Sigma { game, methods } | Command::Sweep { game, methods, .. } => {
            game.pairs(&mut flags);
            methods.pairs(&mut flags);
        }
    }
    let env = std::env::var(MAX_STATES_ENV).ok();
    let cfg = RunConfig::from_layers(&[file, flags], env.as_deref())?;
    run(&cfg)
}

/// Runs the command line `args` (program name first) and returns the text
/// for standard output, the text for standard error, and the exit code.
pub fn run_cli<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                (text, String::new(), 0)
            } else {
                (String::new(), text, code)
            };
        }
    };
    match dispatch(cli) {
        Ok(out) => (out.stdout, String::new(), out.code),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}

/// Entry point of the binary: prints and returns the exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (out, err, code) = run_cli(args);
    print!("{out}");
    eprint!("{err}");
    code
}
