//! Exact spy thresholds from the safety-game solver next to the closed form.

use revspy::solver::{sigma_exact, sigma_formula};
use revspy::Graph;

fn main() {
    let cases = [
        ("C5", Graph::cycle(5), 2, 7),
        ("C4", Graph::cycle(4), 2, 5),
        (
            "C5 + P2",
            Graph::cycle(5).disjoint_union(&Graph::path(2)),
            2,
            7,
        ),
        ("P5", Graph::path(5), 3, 7),
    ];
    for (name, g, m, r) in cases {
        let exact = sigma_exact(&g, m, r, 5_000_000).expect("within budget");
        let formula = sigma_formula(&g, m, r).expect("closed form");
        let probes: Vec<String> = exact
            .verdicts
            .iter()
            .map(|v| format!("s={}:{:?}", v.s, v.winner))
            .collect();
        println!(
            "{name:8} m={m} r={r} exact={} formula={} states={} [{}]",
            exact.sigma,
            formula.sigma,
            exact.states(),
            probes.join(" ")
        );
    }
}
