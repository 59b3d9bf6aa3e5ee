//! Checks a spy strategy against every revolutionary play, printing a
//! counterexample when one exists.

use revspy::solver::{verify_strategy, Verification};
use revspy::spy::{GreedySpies, UnicyclicSpies};
use revspy::{GameConfig, Graph};

fn main() {
    let g = Graph::cycle(6);
    let cfg = GameConfig::new(2, 5, 3);
    let follower = UnicyclicSpies::follower_only(&g, cfg).expect("cycle");
    report(
        "follower",
        verify_strategy(&g, cfg, &follower, 1_000_000).expect("budget"),
    );
    let greedy = GreedySpies::new(&g, cfg.m, cfg.s);
    report(
        "greedy",
        verify_strategy(&g, cfg, &greedy, 1_000_000).expect("budget"),
    );
}

fn report(name: &str, v: Verification) {
    match v {
        Verification::Holds { states } => println!("{name}: holds over {states} reachable states"),
        Verification::Counterexample(tr) => print!("{name}: counterexample\n{}", tr.to_text()),
    }
}
