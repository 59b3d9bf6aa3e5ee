//! Classifies a few graphs and prints the closed-form spy threshold.

use revspy::graph::decompose_unicyclic;
use revspy::solver::sigma_formula;
use revspy::{classify, Graph};

fn main() {
    let graphs = [
        ("path P5", Graph::path(5)),
        ("star K1,4", Graph::star(4)),
        ("cycle C6", Graph::cycle(6)),
        ("C5 + P2", Graph::cycle(5).disjoint_union(&Graph::path(2))),
        (
            "C4 with pendant",
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap(),
        ),
    ];
    let (m, r) = (2, 7);
    for (name, g) in &graphs {
        let class = classify(g);
        let shape = match decompose_unicyclic(g) {
            Ok(dec) => format!(" cycle={:?} attached={}", dec.cycle, dec.attached().count()),
            Err(_) => String::new(),
        };
        let sigma = sigma_formula(g, m, r)
            .map(|s| s.sigma.to_string())
            .unwrap_or_else(|e| e.to_string());
        println!(
            "{name:16} class={}{shape} sigma(m={m}, r={r})={sigma}",
            class.name()
        );
    }
}
