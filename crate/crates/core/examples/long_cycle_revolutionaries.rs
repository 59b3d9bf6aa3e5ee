//! Revolutionaries beating s spies on a long cycle with r = s*m + 1.

use revspy::rev::LongCycleRevs;
use revspy::spy::{GreedySpies, UnicyclicSpies};
use revspy::{play_match, GameConfig, Graph, SpyStrategy};

fn main() {
    let (m, s) = (4, 2);
    let r = s * m + 1;
    let g = Graph::cycle(6);
    let cfg = GameConfig::new(m, r, s);
    let opponents: Vec<Box<dyn SpyStrategy>> = vec![
        Box::new(GreedySpies::new(&g, m, s)),
        Box::new(UnicyclicSpies::new(&g, cfg).expect("cycle")),
    ];
    for mut spies in opponents {
        let mut revs = LongCycleRevs::new(&g, m, r, s).expect("long cycle");
        let (outcome, _) = play_match(&g, cfg, &mut revs, spies.as_mut(), 200);
        println!("vs {}: {outcome}", spies.name());
        for entry in revs.log() {
            println!(
                "  round {:3} {:8} S={} guarded={} max_load={}",
                entry.round,
                entry.phase,
                entry.spy.map_or("-".to_string(), |v| v.to_string()),
                entry.guarded,
                entry.max_load
            );
        }
    }
}
