//! Rules of the game: positions, round structure, win detection, match
//! orchestration and transcripts.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::flow::{validate_team_move, MoveError};
use crate::graph::{Graph, GraphError};

/// Meeting size `m`, revolutionary count `r`, spy count `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameConfig {
    pub m: u32,
    pub r: u32,
    pub s: u32,
}

impl GameConfig {
    pub fn new(m: u32, r: u32, s: u32) -> Self {
        assert!(m >= 1, "meeting size must be positive");
        GameConfig { m, r, s }
    }

    pub fn floor(&self) -> u32 {
        self.r / self.m
    }

    pub fn ceil(&self) -> u32 {
        self.r.div_ceil(self.m)
    }
}

impl fmt::Display for GameConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} r={} s={}", self.m, self.r, self.s)
    }
}

/// Full public state: per-vertex revolutionary and spy counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    pub rev: Vec<u32>,
    pub spy: Vec<u32>,
}

impl Position {
    pub fn new(rev: Vec<u32>, spy: Vec<u32>) -> Self {
        assert_eq!(rev.len(), spy.len());
        Position { rev, spy }
    }
}

/// Vertices holding at least `m` revolutionaries and no spy.
pub fn unguarded_meetings(p: &Position, m: u32) -> Vec<usize> {
    (0..p.rev.len())
        .filter(|&v| p.rev[v] >= m && p.spy[v] == 0)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Team {
    Revolutionaries,
    Spies,
}

impl Team {
    pub fn letter(self) -> char {
        match self {
            Team::Revolutionaries => 'R',
            Team::Spies => 'S',
        }
    }

    pub fn other(self) -> Team {
        match self {
            Team::Revolutionaries => Team::Spies,
            Team::Spies => Team::Revolutionaries,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Team::Revolutionaries => "revolutionaries",
            Team::Spies => "spies",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invariant broken: {0}")]
    InvariantBroken(String),
    #[error("no cyclic reindexing displaces every unit by at most one edge")]
    NoValidReindexing,
    #[error("cycle condition broken: {0}")]
    CycleConditionBroken(String),
    #[error("illegal revolutionary move: {0}")]
    IllegalRevMove(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Spy side of a match. `respond` sees the revolutionaries' new layout in
/// `pos.rev` and the spies' current layout in `pos.spy`.
pub trait SpyStrategy {
    fn name(&self) -> &str;
    fn place(&mut self, rev: &[u32]) -> Result<Vec<u32>, StrategyError>;
    fn respond(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError>;
    /// Serialized internal state beyond the public position.
    fn state_key(&self) -> Vec<u32> {
        Vec::new()
    }
    fn annotation(&self) -> Option<String> {
        None
    }
}

/// Revolutionary side of a match. `step` sees the position after the spies
/// moved.
pub trait RevStrategy {
    fn name(&self) -> &str;
    fn place(&mut self) -> Result<Vec<u32>, StrategyError>;
    fn step(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError>;
    fn annotation(&self) -> Option<String> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    UnguardedMeeting {
        vertex: usize,
        round: u64,
    },
    HorizonSurvived {
        rounds: u64,
    },
    Forfeit {
        team: Team,
        round: u64,
        detail: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub winner: Team,
    pub reason: Reason,
}

impl Outcome {
    pub fn meeting(vertex: usize, round: u64) -> Self {
        Outcome {
            winner: Team::Revolutionaries,
            reason: Reason::UnguardedMeeting { vertex, round },
        }
    }

    pub fn survived(rounds: u64) -> Self {
        Outcome {
            winner: Team::Spies,
            reason: Reason::HorizonSurvived { rounds },
        }
    }

    pub fn forfeit(team: Team, round: u64, detail: impl Into<String>) -> Self {
        Outcome {
            winner: team.other(),
            reason: Reason::Forfeit {
                team,
                round,
                detail: detail.into(),
            },
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.winner.name())?;
        match &self.reason {
            Reason::UnguardedMeeting { vertex, round } => {
                write!(f, "unguarded(vertex={vertex},round={round})")
            }
            Reason::HorizonSurvived { rounds } => write!(f, "horizon(rounds={rounds})"),
            Reason::Forfeit { team, round, .. } => {
                write!(f, "forfeit(team={},round={round})", team.letter())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranscriptError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("round {round} team {team}: {source}")]
    Replay {
        round: u64,
        team: char,
        source: MoveError,
    },
    #[error("entry {index}: expected {expected} units, found {found}")]
    Conservation {
        index: usize,
        expected: u64,
        found: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub round: u64,
    pub team: Team,
    pub counts: Vec<u32>,
    pub note: Option<String>,
}

/// Replayable per-half-round log of a match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub graph_label: String,
    pub cfg: GameConfig,
    pub seed: u64,
    pub entries: Vec<TranscriptEntry>,
    pub outcome: Option<Outcome>,
}

impl Transcript {
    pub fn new(graph_label: impl Into<String>, cfg: GameConfig, seed: u64) -> Self {
        Transcript {
            graph_label: graph_label.into(),
            cfg,
            seed,
            entries: Vec::new(),
            outcome: None,
        }
    }

    pub fn push(&mut self, round: u64, team: Team, counts: Vec<u32>, note: Option<String>) {
        self.entries.push(TranscriptEntry {
            round,
            team,
            counts,
            note,
        });
    }

    pub fn rounds(&self) -> u64 {
        self.entries.last().map_or(0, |e| e.round)
    }

    /// Re-validates every pair of consecutive same-team entries and unit
    /// conservation. Entries noted `rejected` are skipped.
    pub fn replay(&self, g: &Graph) -> Result<(), TranscriptError> {
        let mut last: [Option<&TranscriptEntry>; 2] = [None, None];
        for (index, e) in self.entries.iter().enumerate() {
            if e.note.as_deref().is_some_and(|n| n.starts_with("rejected")) {
                continue;
            }
            let expected = match e.team {
                Team::Revolutionaries => self.cfg.r,
                Team::Spies => self.cfg.s,
            } as u64;
            let found: u64 = e.counts.iter().map(|&c| c as u64).sum();
            if found != expected {
                return Err(TranscriptError::Conservation {
                    index,
                    expected,
                    found,
                });
            }
            let slot = &mut last[(e.team == Team::Spies) as usize];
            if let Some(prev) = slot {
                validate_team_move(g, &prev.counts, &e.counts).map_err(|source| {
                    TranscriptError::Replay {
                        round: e.round,
                        team: e.team.letter(),
                        source,
                    }
                })?;
            }
            *slot = Some(e);
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "graph={} m={} r={} s={} seed={}\n",
            self.graph_label, self.cfg.m, self.cfg.r, self.cfg.s, self.seed
        );
        for e in &self.entries {
            s.push_str(&format!("{} {}", e.round, e.team.letter()));
            for c in &e.counts {
                s.push_str(&format!(" {c}"));
            }
            if let Some(note) = &e.note {
                s.push_str(&format!(" note={note}"));
            }
            s.push('\n');
        }
        if let Some(o) = &self.outcome {
            s.push_str(&format!("outcome={o}\n"));
        }
        s
    }
}

impl FromStr for Transcript {
    type Err = TranscriptError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, msg: &str| TranscriptError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty transcript"))?;
        let mut label = None;
        let (mut m, mut r, mut s, mut seed) = (None, None, None, None);
        for tok in header.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| err(1, "header token without '='"))?;
            let num = || v.parse::<u64>().map_err(|_| err(1, "bad header number"));
            match k {
                "graph" => label = Some(v.to_string()),
                "m" => m = Some(num()? as u32),
                "r" => r = Some(num()? as u32),
                "s" => s = Some(num()? as u32),
                "seed" => seed = Some(num()?),
                _ => return Err(err(1, "unknown header key")),
            }
        }
        let cfg = match (m, r, s) {
            (Some(m), Some(r), Some(s)) if m > 0 => GameConfig::new(m, r, s),
            _ => return Err(err(1, "header needs m>0, r, s")),
        };
        let mut t = Transcript::new(label.unwrap_or_default(), cfg, seed.unwrap_or(0));
        for (line, l) in lines {
            if l.trim().is_empty() {
                continue;
            }
            if let Some(rest) = l.strip_prefix("outcome=") {
                t.outcome = Some(parse_outcome(rest).ok_or_else(|| err(line, "bad outcome"))?);
                continue;
            }
            let (body, note) = match l.find(" note=") {
                Some(i) => (&l[..i], Some(l[i + 6..].to_string())),
                None => (l, None),
            };
            let mut it = body.split_whitespace();
            let round = it
                .next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| err(line, "bad round"))?;
            let team = match it.next() {
                Some("R") => Team::Revolutionaries,
                Some("S") => Team::Spies,
                _ => return Err(err(line, "team must be R or S")),
            };
            let counts = it
                .map(|x| x.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| err(line, "bad count"))?;
            t.push(round, team, counts, note);
        }
        Ok(t)
    }
}

fn parse_outcome(s: &str) -> Option<Outcome> {
    let (winner, reason) = s.split_once(':')?;
    let winner = match winner {
        "revolutionaries" => Team::Revolutionaries,
        "spies" => Team::Spies,
        _ => return None,
    };
    let (kind, args) = reason.strip_suffix(')')?.split_once('(')?;
    let field = |key: &str| -> Option<&str> {
        args.split(',')
            .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
    };
    let reason = match kind {
        "unguarded" => Reason::UnguardedMeeting {
            vertex: field("vertex")?.parse().ok()?,
            round: field("round")?.parse().ok()?,
        },
        "horizon" => Reason::HorizonSurvived {
            rounds: field("rounds")?.parse().ok()?,
        },
        "forfeit" => Reason::Forfeit {
            team: match field("team")? {
                "R" => Team::Revolutionaries,
                "S" => Team::Spies,
                _ => return None,
            },
            round: field("round")?.parse().ok()?,
            detail: String::new(),
        },
        _ => return None,
    };
    Some(Outcome { winner, reason })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of ways to place `units` indistinguishable units on `n` vertices.
pub fn configuration_count(n: usize, units: u32) -> u64 {
    if n == 0 {
        return (units == 0) as u64;
    }
    binomial(units as u64 + n as u64 - 1, n as u64 - 1)
}

/// Default match horizon: four times the number of revolutionary layouts.
pub fn default_horizon(n: usize, r: u32) -> u64 {
    configuration_count(n, r).saturating_mul(4).min(1_000_000)
}

fn check_layout(counts: &[u32], n: usize, total: u32) -> Result<(), MoveError> {
    if counts.len() != n {
        return Err(MoveError::LengthMismatch {
            n,
            got: counts.len(),
        });
    }
    let sum: u64 = counts.iter().map(|&c| c as u64).sum();
    if sum != total as u64 {
        return Err(MoveError::SumMismatch {
            before: total as u64,
            after: sum,
        });
    }
    Ok(())
}

pub fn play_match<R, S>(
    g: &Graph,
    cfg: GameConfig,
    revs: &mut R,
    spies: &mut S,
    max_rounds: u64,
) -> (Outcome, Transcript)
where
    R: RevStrategy + ?Sized,
    S: SpyStrategy + ?Sized,
{
    play_match_observed(g, cfg, revs, spies, max_rounds, |_, _| {})
}

/// Like [`play_match`], calling `observe` after every accepted spy action.
pub fn play_match_observed<R, S>(
    g: &Graph,
    cfg: GameConfig,
    revs: &mut R,
    spies: &mut S,
    max_rounds: u64,
    mut observe: impl FnMut(&Position, &S),
) -> (Outcome, Transcript)
where
    R: RevStrategy + ?Sized,
    S: SpyStrategy + ?Sized,
{
    let n = g.n();
    let mut tr = Transcript::new("", cfg, 0);
    let finish = |mut tr: Transcript, o: Outcome| {
        tr.outcome = Some(o.clone());
        (o, tr)
    };
    let rejected = |e: &dyn fmt::Display| Some(format!("rejected {e}"));

    let rev = match revs.place() {
        Ok(v) => v,
        Err(e) => {
            return finish(
                tr,
                Outcome::forfeit(Team::Revolutionaries, 0, e.to_string()),
            )
        }
    };
    if let Err(e) = check_layout(&rev, n, cfg.r) {
        tr.push(0, Team::Revolutionaries, rev, rejected(&e));
        return finish(
            tr,
            Outcome::forfeit(Team::Revolutionaries, 0, e.to_string()),
        );
    }
    tr.push(0, Team::Revolutionaries, rev.clone(), revs.annotation());
    let spy = match spies.place(&rev) {
        Ok(v) => v,
        Err(e) => return finish(tr, Outcome::forfeit(Team::Spies, 0, e.to_string())),
    };
    if let Err(e) = check_layout(&spy, n, cfg.s) {
        tr.push(0, Team::Spies, spy, rejected(&e));
        return finish(tr, Outcome::forfeit(Team::Spies, 0, e.to_string()));
    }
    tr.push(0, Team::Spies, spy.clone(), spies.annotation());
    let mut pos = Position::new(rev, spy);
    observe(&pos, spies);
    if let Some(&v) = unguarded_meetings(&pos, cfg.m).first() {
        return finish(tr, Outcome::meeting(v, 0));
    }

    for round in 1..=max_rounds {
        let next = match revs.step(&pos) {
            Ok(v) => v,
            Err(e) => {
                return finish(
                    tr,
                    Outcome::forfeit(Team::Revolutionaries, round, e.to_string()),
                )
            }
        };
        if let Err(e) = validate_team_move(g, &pos.rev, &next) {
            tr.push(round, Team::Revolutionaries, next, rejected(&e));
            return finish(
                tr,
                Outcome::forfeit(Team::Revolutionaries, round, e.to_string()),
            );
        }
        tr.push(
            round,
            Team::Revolutionaries,
            next.clone(),
            revs.annotation(),
        );
        pos.rev = next;

        let next = match spies.respond(&pos) {
            Ok(v) => v,
            Err(e) => return finish(tr, Outcome::forfeit(Team::Spies, round, e.to_string())),
        };
        if let Err(e) = validate_team_move(g, &pos.spy, &next) {
            tr.push(round, Team::Spies, next, rejected(&e));
            return finish(tr, Outcome::forfeit(Team::Spies, round, e.to_string()));
        }
        tr.push(round, Team::Spies, next.clone(), spies.annotation());
        pos.spy = next;
        observe(&pos, spies);
        if let Some(&v) = unguarded_meetings(&pos, cfg.m).first() {
            return finish(tr, Outcome::meeting(v, round));
        }
    }
    finish(tr, Outcome::survived(max_rounds))
}

/// Revolutionaries that never leave their initial layout.
#[derive(Debug, Clone)]
pub struct StaticRevs {
    layout: Vec<u32>,
}

impl StaticRevs {
    pub fn new(layout: Vec<u32>) -> Self {
        StaticRevs { layout }
    }
}

impl RevStrategy for StaticRevs {
    fn name(&self) -> &str {
        "static"
    }

    fn place(&mut self) -> Result<Vec<u32>, StrategyError> {
        Ok(self.layout.clone())
    }

    fn step(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
        Ok(pos.rev.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unguarded_examples() {
        let p = Position::new(vec![2, 0], vec![0, 1]);
        assert_eq!(unguarded_meetings(&p, 2), vec![0]);
        let p = Position::new(vec![2, 0], vec![1, 0]);
        assert!(unguarded_meetings(&p, 2).is_empty());
        let p = Position::new(vec![1, 1], vec![0, 0]);
        assert!(unguarded_meetings(&p, 2).is_empty());
    }

    struct Lazy(Vec<u32>);

    impl SpyStrategy for Lazy {
        fn name(&self) -> &str {
            "lazy"
        }
        fn place(&mut self, _: &[u32]) -> Result<Vec<u32>, StrategyError> {
            Ok(self.0.clone())
        }
        fn respond(&mut self, pos: &Position) -> Result<Vec<u32>, StrategyError> {
            Ok(pos.spy.clone())
        }
    }

    #[test]
    fn no_meeting_possible_means_spies_survive() {
        let g = Graph::cycle(4);
        let cfg = GameConfig::new(3, 2, 0);
        let mut revs = StaticRevs::new(vec![1, 1, 0, 0]);
        let (o, t) = play_match(&g, cfg, &mut revs, &mut Lazy(vec![0; 4]), 5);
        assert_eq!(o, Outcome::survived(5));
        assert_eq!(t.entries.len(), 12);
        t.replay(&g).unwrap();
    }

    #[test]
    fn placement_meeting_ends_game() {
        let g = Graph::path(3);
        let cfg = GameConfig::new(2, 4, 1);
        let mut revs = StaticRevs::new(vec![2, 0, 2]);
        let (o, _) = play_match(&g, cfg, &mut revs, &mut Lazy(vec![1, 0, 0]), 5);
        assert_eq!(o, Outcome::meeting(2, 0));
    }

    #[test]
    fn bad_placement_forfeits() {
        let g = Graph::path(3);
        let cfg = GameConfig::new(2, 2, 1);
        let mut revs = StaticRevs::new(vec![2, 0, 0]);
        let (o, t) = play_match(&g, cfg, &mut revs, &mut Lazy(vec![1, 1, 0]), 5);
        assert_eq!(o.winner, Team::Revolutionaries);
        assert!(matches!(
            o.reason,
            Reason::Forfeit {
                team: Team::Spies,
                round: 0,
                ..
            }
        ));
        assert!(t
            .entries
            .last()
            .unwrap()
            .note
            .as_deref()
            .unwrap()
            .starts_with("rejected"));
    }

    #[test]
    fn transcript_text_round_trip() {
        let g = Graph::cycle(4);
        let cfg = GameConfig::new(2, 3, 2);
        let mut revs = StaticRevs::new(vec![2, 1, 0, 0]);
        let (_, mut t) = play_match(&g, cfg, &mut revs, &mut Lazy(vec![1, 1, 0, 0]), 3);
        t.graph_label = "c4.txt".into();
        t.seed = 9;
        t.entries[1].note = Some("w=1,2 target=0 1".into());
        let parsed: Transcript = t.to_text().parse().unwrap();
        assert_eq!(parsed.entries, t.entries);
        assert_eq!(parsed.cfg, t.cfg);
        assert_eq!(parsed.outcome, t.outcome);
        assert_eq!(parsed.to_text(), t.to_text());
    }

    #[test]
    fn replay_catches_tampering() {
        let g = Graph::path(3);
        let mut t = Transcript::new("p3", GameConfig::new(2, 1, 0), 0);
        t.push(0, Team::Revolutionaries, vec![1, 0, 0], None);
        t.push(1, Team::Revolutionaries, vec![0, 0, 1], None);
        assert!(matches!(
            t.replay(&g),
            Err(TranscriptError::Replay { round: 1, .. })
        ));
        t.entries[1].counts = vec![0, 2, 0];
        assert!(matches!(
            t.replay(&g),
            Err(TranscriptError::Conservation { index: 1, .. })
        ));
    }

    #[test]
    fn horizon_counts_layouts() {
        assert_eq!(configuration_count(5, 7), 330);
        assert_eq!(default_horizon(5, 7), 1320);
        assert_eq!(configuration_count(3, 0), 1);
    }
}
