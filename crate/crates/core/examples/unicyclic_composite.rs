//! Composite spies on a cycle with attached trees: fake units at the mate
//! stand in for revolutionaries that walked into a tree.

use revspy::rev::RandomRevs;
use revspy::spy::UnicyclicSpies;
use revspy::{play_match, GameConfig, Graph, SpyStrategy};

fn main() {
    // C5 on 0..5, a path 5-6 hanging from 0 and a pendant 7 on 2
    let g = Graph::from_edges(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (5, 6),
            (2, 7),
        ],
    )
    .unwrap();
    for (r, s) in [(7, 4), (7, 3), (5, 3)] {
        let cfg = GameConfig::new(2, r, s);
        let mut spies = UnicyclicSpies::new(&g, cfg).expect("unicyclic");
        let mut revs = RandomRevs::new(&g, r, 5);
        let (outcome, tr) = play_match(&g, cfg, &mut revs, &mut spies, 40);
        println!(
            "r={r} s={s} mode={} {outcome} ({} transcript entries)",
            spies.mode_name(),
            tr.entries.len()
        );
        if let Some(note) = spies.annotation() {
            println!("  last state: {note}");
        }
    }
}
