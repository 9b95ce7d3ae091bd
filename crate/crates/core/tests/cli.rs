mod common;

use std::path::Path;
use std::process::{Command, Output};

use folim::structures::io::{parse_graph, parse_interval_graph};
use tempfile::TempDir;

fn folim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folim")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(args: &[&str], dir: &Path) -> String {
    let o = folim(args, dir);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn diagonal_pairing_on_a_four_node_path() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(&["gen-family", "paths", "--sizes", "4", "-o", "seq"], dir);
    assert_eq!(ok(&["stone-pairing", "seq/0000.sexp", "(= x y)"], dir).trim(), "1/4");
    assert_eq!(ok(&["stone-pairing", "seq/0000.sexp", "(= x y)", "--decimal"], dir).trim(), "0.250000000000");
}

#[test]
fn pw_encoding_round_trips_through_files() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(&["gen-family", "random-pw", "--sizes", "9,14", "--width", "2", "--seed", "4", "-o", "graphs"], dir);
    for name in ["0000.iv", "0001.iv"] {
        let src = format!("graphs/{name}");
        ok(&["encode-pw", &src, "-o", "tree.sexp"], dir);
        ok(&["decode-pw", "tree.sexp", "--check-formulas", "-o", "back.graph"], dir);
        let original = parse_interval_graph(&read(dir.join(&src))).unwrap();
        let decoded = parse_graph(&read(dir.join("back.graph"))).unwrap();
        assert!(common::isomorphic(original.graph(), &decoded), "{name}");
    }
}

#[test]
fn star_center_is_the_only_half_major_node() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(&["gen-family", "stars", "--sizes", "6", "-o", "seq"], dir);
    let out = ok(&["major", "seq/0000.sexp", "--eps", "1/2"], dir);
    assert!(out.contains("major nodes [0]"), "{out}");
    assert!(out.contains("bound 4"), "{out}");
    assert!(out.contains("pass"), "{out}");
}

#[test]
fn usage_errors_exit_with_one() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(&["gen-family", "paths", "--sizes", "5", "-o", "seq"], dir);
    let cases: &[&[&str]] = &[
        &["no-such-command"],
        &["major", "seq/0000.sexp", "--eps", "3/2"],
        &["major", "seq/0000.sexp", "--eps", "0"],
        &["stone-pairing-mc", "seq/0000.sexp", "(= x y)", "--samples", "0"],
        &["stone-pairing", "missing.sexp", "(= x y)"],
        &["stone-pairing", "seq/0000.sexp", "(= x"],
        &["k-position", "seq/0000.sexp", "0", "9", "-k", "3"],
    ];
    for args in cases {
        let o = folim(args, dir);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).starts_with("error:"), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(folim(&["--help"], dir).status.code(), Some(0));
}

#[test]
fn seeded_commands_are_reproducible() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    for out in ["a", "b"] {
        ok(&["gen-family", "random-pw", "--sizes", "20", "--count", "3", "--seed", "11", "-o", out], dir);
    }
    for name in ["0000.iv", "0001.iv", "0002.iv"] {
        assert_eq!(read(dir.join("a").join(name)), read(dir.join("b").join(name)));
    }

    ok(&["gen-family", "paths", "--sizes", "40,80,120,160", "-o", "seq"], dir);
    let run = |seed: &str, csv: &str| {
        let table = ok(&["limit-sample", "seq", "-d", "2", "--samples", "500", "--seed", seed, "-o", csv], dir);
        (table, read(dir.join(csv)))
    };
    let first = run("5", "one.csv");
    assert_eq!(first, run("5", "two.csv"));
    assert_ne!(first.1, run("6", "three.csv").1);
}

#[test]
fn converge_overwrites_its_csv() {
    let tmp = TempDir::new().unwrap();
    let dir = tmp.path();
    ok(&["gen-family", "stars", "--sizes", "5,10,20", "-o", "seq"], dir);
    let args = ["converge", "seq", "--formula", "(parnt x y)", "--formula", "(= x y)", "-o", "c.csv"];
    ok(&args, dir);
    let once = read(dir.join("c.csv"));
    ok(&args, dir);
    assert_eq!(read(dir.join("c.csv")), once);
    assert_eq!(once.lines().count(), 1 + 2 * 3);
}
