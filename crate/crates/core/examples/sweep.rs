//! Exact solver against the closed form over a family of unicyclic graphs.

use revspy::harness::{sweep, Family, RunConfig};

fn main() {
    let cfg = RunConfig {
        family: Some(Family::Unicyclic {
            len: (3, 4),
            t: (0, 1),
        }),
        m: Some(2),
        r: vec![3, 5],
        compare: true,
        ..RunConfig::default()
    };
    let report = sweep(&cfg).expect("sweep");
    print!("{}", report.to_text());
    println!("{}", report.summary());
}
