use std::path::PathBuf;
use std::process::Command;

use revspy::harness::cli::run_cli;
use revspy::harness::{EXIT_BUDGET, EXIT_FOUND, EXIT_OK, EXIT_USAGE, SCHEMA};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (String, String, i32) {
    run_cli(std::iter::once("revspy").chain(args.iter().copied()))
}

#[test]
fn sigma_exact_on_c5() {
    let (out, _, code) = run(&[
        "sigma",
        "--graph",
        &data("c5.txt"),
        "-m",
        "2",
        "-r",
        "7",
        "--exact",
    ]);
    assert_eq!((out.as_str(), code), ("sigma=3\n", EXIT_OK));
}

#[test]
fn sigma_compare_on_c5() {
    let c5 = data("c5.txt");
    let (out, _, code) = run(&[
        "sigma",
        "--graph",
        &c5,
        "-m",
        "2",
        "-r",
        "7",
        "--formula",
        "--exact",
        "--compare",
    ]);
    assert_eq!((out.as_str(), code), ("agree: 3\n", EXIT_OK));
}

#[test]
fn sigma_formula_on_c5_plus_edge() {
    let (out, _, _) = run(&[
        "sigma",
        "--graph",
        &data("c5_p2.txt"),
        "-m",
        "2",
        "-r",
        "7",
        "--formula",
    ]);
    assert_eq!(out, "sigma=4\n");
}

#[test]
fn verify_tree_on_p4() {
    let (out, _, code) = run(&[
        "verify",
        "--strategy",
        "tree",
        "--graph",
        &data("p4.txt"),
        "-m",
        "2",
        "-r",
        "4",
        "-s",
        "2",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("holds: tree"));
}

#[test]
fn verify_reports_counterexample() {
    let (out, _, code) = run(&[
        "verify",
        "--strategy",
        "greedy",
        "--graph",
        "cycle:5",
        "-m",
        "2",
        "-r",
        "7",
        "-s",
        "2",
    ]);
    assert_eq!(code, EXIT_FOUND);
    assert!(out.starts_with("counterexample"));
    let transcript: revspy::Transcript = out.split_once('\n').unwrap().1.parse().unwrap();
    transcript.replay(&revspy::Graph::cycle(5)).unwrap();
}

#[test]
fn classify_lists_each_graph() {
    let (out, _, code) = run(&[
        "classify",
        "--graph",
        &data("c5_p2.txt"),
        "--graph",
        &data("p4.txt"),
    ]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(
        lines[0].ends_with("class=unicyclic-forest n=7 l=5 t=2"),
        "{}",
        lines[0]
    );
    assert!(lines[1].ends_with("class=tree n=4"));
}

#[test]
fn match_between_named_strategies() {
    let (out, _, code) = run(&[
        "match",
        "--graph",
        "cycle:6",
        "-m",
        "2",
        "-r",
        "7",
        "-s",
        "3",
        "--spies",
        "unicyclic",
        "--revs",
        "long-cycle",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("revolutionaries:unguarded"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(
        run(&["sigma", "--graph", "cycle:5", "-r", "7"]).2,
        EXIT_USAGE
    );
    assert_eq!(run(&["frobnicate"]).2, EXIT_USAGE);
    let (_, err, code) = run(&[
        "verify",
        "--strategy",
        "bogus",
        "--graph",
        "cycle:5",
        "-m",
        "2",
        "-r",
        "3",
        "-s",
        "2",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("bogus"));
    assert_eq!(
        run(&["sigma", "--graph", "/no/such/file", "-m", "2", "-r", "3"]).2,
        EXIT_USAGE
    );
}

#[test]
fn budget_exhaustion() {
    let (_, err, code) = run(&[
        "sigma",
        "--graph",
        "cycle:5",
        "-m",
        "2",
        "-r",
        "7",
        "--max-states",
        "100",
    ]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("revspy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let conf = dir.join("run.conf");
    std::fs::write(&conf, format!("graph={}\nm=2\nr=5\n", data("c5.txt"))).unwrap();
    let conf = conf.display().to_string();
    assert_eq!(run(&["sigma", "--config", &conf]).0, "sigma=3\n");
    assert_eq!(run(&["sigma", "--config", &conf, "-r", "7"]).0, "sigma=3\n");
    assert_eq!(run(&["sigma", "--config", &conf, "-r", "3"]).0, "sigma=2\n");
}

#[test]
fn sweep_report_is_reproducible() {
    let dir = std::env::temp_dir().join(format!("revspy-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    for p in [&a, &b] {
        let p = p.display().to_string();
        let (out, _, code) = run(&[
            "sweep",
            "--family",
            "cycles:3..6",
            "-m",
            "2",
            "-r",
            "3,5,7",
            "--out",
            &p,
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().next(), Some(SCHEMA));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_revspy");
    let out = Command::new(bin)
        .args([
            "sigma",
            "--graph",
            &data("c5.txt"),
            "-m",
            "2",
            "-r",
            "7",
            "--exact",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "sigma=3\n");
    let out = Command::new(bin)
        .args(["sigma", "-m", "x"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
