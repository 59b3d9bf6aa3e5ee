//! The follower strategy on a bare cycle with ceil(r/m) spies.

use revspy::rev::RandomRevs;
use revspy::spy::UnicyclicSpies;
use revspy::{play_match_observed, GameConfig, Graph};

fn main() {
    let g = Graph::cycle(7);
    let cfg = GameConfig::new(3, 8, 3);
    let mut spies = UnicyclicSpies::follower_only(&g, cfg).expect("cycle");
    let mut revs = RandomRevs::new(&g, cfg.r, 3);
    let (outcome, _) = play_match_observed(&g, cfg, &mut revs, &mut spies, 12, |pos, sp| {
        let st = sp.composite().expect("follower state");
        st.check_cycle_condition(&pos.rev).expect("guarding");
        println!("rev={:?} spy={:?} {}", pos.rev, pos.spy, st.annotation());
    });
    println!("{outcome}");
}
