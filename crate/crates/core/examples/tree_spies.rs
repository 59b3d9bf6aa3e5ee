//! Tree spies with floor(r/m) spies against random revolutionaries.

use revspy::rev::RandomRevs;
use revspy::spy::TreeSpies;
use revspy::{play_match_observed, GameConfig, Graph};

fn main() {
    // spider with three legs of length two
    let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
    let cfg = GameConfig::new(2, 7, 3);
    let mut spies = TreeSpies::new(&g, cfg).expect("tree");
    let mut revs = RandomRevs::new(&g, cfg.r, 11);
    let mut checked = 0;
    let (outcome, tr) = play_match_observed(&g, cfg, &mut revs, &mut spies, 25, |pos, sp| {
        sp.check_invariants(&pos.spy).expect("tree invariants");
        checked += 1;
    });
    print!("{}", tr.to_text());
    println!("{outcome} after {checked} checked spy actions");
}
