use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const OMEGA: &str = "-2^0 1^0 -2^1 3^0 -3^0 1^1 -1^0 3^1 -3^1 2^0 -1^1 2^1";
const OMEGA_1: &str = "-2^0 1^0 -2^1 3^0 1^1 3^1";

fn typec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_typec"))
        .args(args)
        .output()
        .expect("spawn typec")
}

fn typec_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_typec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn typec");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], name: &str) {
    let o = typec(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    assert_eq!(stdout(&o), golden(name), "{args:?}");
}

#[test]
fn count_examples() {
    for (n, v) in [
        ("1", "4\n"),
        ("2", "48\n"),
        ("3", "960\n"),
        ("4", "26880\n"),
    ] {
        let o = typec(&["count", "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), v);
        assert_eq!(stdout(&typec(&["count", "--n", n, "--via-sum"])), v);
    }
}

#[test]
fn count_big_n_is_exact() {
    let a = stdout(&typec(&["count", "--n", "60"]));
    let b = stdout(&typec(&["count", "--n", "60", "--via-sum"]));
    assert_eq!(a, b);
    assert!(a.trim().len() > 40);
}

#[test]
fn golden_outputs() {
    assert_golden(
        &["count", "--n", "8", "--by-special"],
        "count_by_special_8.txt",
    );
    assert_golden(
        &["enumerate", "sketches", "--n", "2", "--symmetric"],
        "symmetric_sketches_2.txt",
    );
    assert_golden(
        &["enumerate", "sketches", "--n", "3"],
        "annotated_sketches_3.txt",
    );
    assert_golden(&["enumerate", "forests", "--n", "4"], "forest_shapes_4.txt");
    assert_golden(
        &["enumerate", "forests", "--n", "2", "--labeled"],
        "labeled_forests_2.txt",
    );
    assert_golden(
        &["enumerate", "forests", "--n", "2", "--symmetric"],
        "symmetric_forests_2.txt",
    );
    assert_golden(
        &["shuffle", "sketch", OMEGA_1],
        "shuffle_sketch_example.txt",
    );
    assert_golden(
        &["verify", "--suite", "counts", "--n-max", "50"],
        "verify_counts_50.txt",
    );
}

#[test]
fn shuffle_example_contains_omega() {
    let out = stdout(&typec(&["shuffle", "sketch", OMEGA_1]));
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().any(|l| l == OMEGA));
}

#[test]
fn map_examples() {
    let o = typec(&["map", "sketch-to-forest", OMEGA]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-2(3,-3(2)),1(-1)\n");

    let o = typec(&["map", "forest-to-sketch", "-2(3,-3(2)),1(-1)"]);
    assert_eq!(stdout(&o), format!("{OMEGA}\n"));

    let o = typec(&["map", "sketch-to-forest", OMEGA_1]);
    assert_eq!(stdout(&o), "-2(3),1\n");
    let o = typec(&["map", "forest-to-sketch", "--n", "3", "-2(3),1"]);
    assert_eq!(stdout(&o), format!("{OMEGA_1}\n"));
}

#[test]
fn point_round_trip_through_pipe() {
    let point = typec(&["map", "sketch-to-point", OMEGA]);
    assert_eq!(point.status.code(), Some(0));
    let back = typec_stdin(&["map", "point-to-sketch", "--n", "3"], &stdout(&point));
    assert_eq!(back.status.code(), Some(0), "{}", stderr(&back));
    assert_eq!(stdout(&back), format!("{OMEGA}\n"));
}

#[test]
fn objects_read_from_stdin() {
    let o = typec_stdin(&["map", "sketch-to-forest"], &format!("{OMEGA}\n"));
    assert_eq!(stdout(&o), "-2(3,-3(2)),1(-1)\n");
    let o = typec_stdin(&["shuffle", "forest"], "-2(3),1\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn point_on_hyperplane_exits_one() {
    let o = typec(&["map", "point-to-sketch", "--n", "1", "--coords", "1/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2x1 = 1"), "{}", stderr(&o));

    let o = typec(&["map", "point-to-sketch", "--coords", "1/3,-1/3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("x1 + x2 = 0"), "{}", stderr(&o));
}

#[test]
fn invalid_objects_exit_one_naming_the_condition() {
    let swapped = "-2^0 1^0 -2^1 3^0 -3^0 1^1 -1^0 3^1 -3^1 -1^1 2^0 2^1";
    let o = typec(&["map", "sketch-to-forest", swapped]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("violation iv"), "{}", stderr(&o));

    let o = typec(&["map", "sketch-to-forest", "1^1 1^0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("violation ii"), "{}", stderr(&o));

    let o = typec(&["map", "forest-to-sketch", "1(2"]);
    assert_eq!(o.status.code(), Some(1));

    let o = typec(&["map", "point-to-sketch", "--n", "2", "--coords", "1/3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(typec(&[]).status.code(), Some(2));
    assert_eq!(typec(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(typec(&["count"]).status.code(), Some(2));
    assert_eq!(typec(&["count", "--n", "x"]).status.code(), Some(2));
    assert_eq!(
        typec(&["verify", "--suite", "nope", "--n-max", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        typec(&["verify", "--suite", "oracle", "--n-max", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumeration_guard_needs_force() {
    let o = typec(&["enumerate", "sketches", "--n", "5", "--symmetric"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--force"));
    let o = typec(&["enumerate", "forests", "--n", "11"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for (suite, n) in [("oracle", "2"), ("bijection", "2"), ("shuffles", "2")] {
        let o = typec(&["verify", "--suite", suite, "--n-max", n]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let out = stdout(&o);
        assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
    }
    let out = stdout(&typec(&["verify", "--suite", "oracle", "--n-max", "2"]));
    assert!(out.contains("count=48"));
}

#[test]
fn output_is_deterministic() {
    let args = ["enumerate", "sketches", "--n", "3", "--symmetric"];
    let a = typec(&args);
    let b = typec(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 960);
}
