//! End-to-end checks of the `mcgcoh` binary: exit codes, output
//! determinism, and JSON round-trips through the library parsers.

use std::path::Path;
use std::process::{Command, Output};

use mcg_cohomology::cocycle::{generator_cocycle, CocycleAssignment};
use mcg_cohomology::presentation::parse_presentation;
use mcg_cohomology::symplectic::humphries_names;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcgcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcgcoh"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn present_genus_one_exact_text() {
    let out = run(&["present", "--genus", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "# Wajnryb presentation, genus 1\n\
         c1 b1\n\
         c1 b1 c1 b1^-1 c1^-1 b1^-1  # braid\n"
    );
}

#[test]
fn present_text_round_trips_through_the_parser() {
    for genus in [1usize, 3, 4] {
        let out = run(&["present", "--genus", &genus.to_string()]);
        assert_eq!(code(&out), 0);
        let parsed = parse_presentation(&stdout(&out)).unwrap();
        assert_eq!(parsed.generators, humphries_names(genus));
        let expected = [0usize, 1, 0, 23, 38, 57][genus];
        assert_eq!(parsed.relators.len(), expected);
    }
}

#[test]
fn present_json_shape() {
    let out = run(&["present", "--genus", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["genus"], serde_json::json!(3));
    assert_eq!(v["generators"].as_array().unwrap().len(), 7);
    let relators = v["relators"].as_array().unwrap();
    assert_eq!(relators.len(), 23);
    assert_eq!(relators[22]["tag"], serde_json::json!("hyperlantern"));
}

#[test]
fn h1_json_round_trips_and_is_deterministic() {
    let first = run(&["h1", "--genus", "3", "--format", "json"]);
    assert_eq!(code(&first), 0);
    let second = run(&["h1", "--genus", "3", "--format", "json"]);
    assert_eq!(first.stdout, second.stdout, "byte-identical reruns");

    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["h1"]["rank"], serde_json::json!(1));
    assert_eq!(v["h1"]["torsion"], serde_json::json!([]));
    assert_eq!(v["z1_rank"], serde_json::json!(7));
    assert_eq!(v["b1_rank"], serde_json::json!(6));

    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 1);
    let u = CocycleAssignment::from_json(&gens[0]).unwrap();
    assert_eq!(
        u.aligned_to(&humphries_names(3)).unwrap(),
        generator_cocycle(3).unwrap()
    );
}

#[test]
fn h1_from_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("free.txt"), "x y\n").unwrap();
    std::fs::write(
        dir.path().join("triv.json"),
        r#"{"dim": 1, "generators": [
            {"name": "x", "matrix": [[1]]},
            {"name": "y", "matrix": [[1]]}
        ]}"#,
    )
    .unwrap();
    let out = run_in(
        dir.path(),
        &["h1", "--presentation", "free.txt", "--rep", "triv.json", "--format", "json"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["h1"]["rank"], serde_json::json!(2));
    assert_eq!(v["h1"]["torsion"], serde_json::json!([]));
}

#[test]
fn verify_default_cocycle_at_genus_three_and_four() {
    for genus in ["3", "4"] {
        let out = run(&["verify", "--genus", genus]);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).contains("relators satisfied"));
    }
}

#[test]
fn verify_rejects_a_broken_assignment() {
    let dir = tempfile::tempdir().unwrap();
    // The generating cocycle with the value on c3 replaced by a1; this
    // breaks the braid relation between c3 and b3.
    std::fs::write(
        dir.path().join("broken.json"),
        r#"{"genus": 3, "values": {
            "c1": [0,0,0,0,0,0], "b1": [0,0,0,0,0,0],
            "c2": [0,0,0,0,0,0], "b2": [0,0,0,0,0,0],
            "c3": [1,0,0,0,0,0], "b3": [0,0,0,0,0,0],
            "a2": [0,0,1,0,0,0]
        }}"#,
    )
    .unwrap();
    let out = run_in(dir.path(), &["verify", "--genus", "3", "--cocycle", "broken.json"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("FAIL"));

    let adapt = run_in(
        dir.path(),
        &["adapt", "--genus", "3", "--cocycle", "broken.json", "--target", "s"],
    );
    assert_eq!(code(&adapt), 3);
}

#[test]
fn eval_examples() {
    // Zero on the chain twists under the default cocycle.
    let out = run(&["eval", "--genus", "3", "--word", "c1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(0, 0, 0, 0, 0, 0)\n");

    // Empty word: the zero vector.
    let out = run(&["eval", "--genus", "3", "--word", ""]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(0, 0, 0, 0, 0, 0)\n");

    // The first auxiliary conjugate, written out: value a1 - a2 + a3.
    let x1 = "b2^-1 c2^-1 c3^-1 b2^-1 a2 b2 c3 c2 b2";
    let out = run(&["eval", "--genus", "3", "--word", x1]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(1, 0, -1, 0, 1, 0)\n");

    // Unknown generator: input error.
    let out = run(&["eval", "--genus", "3", "--word", "q7"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn adapt_round_trips_the_generating_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    let u = generator_cocycle(3).unwrap();
    std::fs::write(&path, format!("{:#}", u.to_json())).unwrap();

    // Target s: the first pass shifts by -b2 - 2b3.
    let out = run_in(
        dir.path(),
        &["adapt", "--genus", "3", "--cocycle", "gen.json", "--target", "s", "--format", "json"],
    );
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shift"], serde_json::json!([0, 0, 0, -1, 0, -2]));

    // Target sprime: both passes cancel, returning the input with no
    // net shift.
    let out = run_in(
        dir.path(),
        &["adapt", "--genus", "3", "--cocycle", "gen.json", "--target", "sprime", "--format", "json"],
    );
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shift"], serde_json::json!([0, 0, 0, 0, 0, 0]));
    let adapted = CocycleAssignment::from_json(&v["adapted"]).unwrap();
    assert_eq!(adapted.aligned_to(&humphries_names(3)).unwrap(), u);
}

#[test]
fn adapt_zero_cocycle_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    let zero = CocycleAssignment::zero(humphries_names(3), 6);
    std::fs::write(&path, format!("{:#}", zero.to_json())).unwrap();
    let out = run_in(
        dir.path(),
        &["adapt", "--genus", "3", "--cocycle", "zero.json", "--target", "sprime", "--format", "json"],
    );
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shift"], serde_json::json!([0, 0, 0, 0, 0, 0]));
    let adapted = CocycleAssignment::from_json(&v["adapted"]).unwrap();
    assert!(adapted.is_zero());
}

#[test]
fn exit_codes() {
    // Unsupported genus: 2.
    for cmd in [
        vec!["h1", "--genus", "2"],
        vec!["present", "--genus", "2"],
        vec!["verify", "--genus", "2"],
    ] {
        let out = run(&cmd);
        assert_eq!(code(&out), 2, "wrong exit for {cmd:?}");
    }

    // Malformed input: 1.
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
    for cmd in [
        vec!["h1", "--genus", "0"],
        vec!["present"],
        vec!["h1"],
        vec!["eval", "--genus", "3", "--word", "c1 b1^2"],
        vec!["verify", "--genus", "3", "--cocycle", "missing.json"],
        vec!["verify", "--genus", "3", "--cocycle", "bad.json"],
    ] {
        let out = run_in(dir.path(), &cmd);
        assert_eq!(code(&out), 1, "wrong exit for {cmd:?}");
    }

    // Help is not an error.
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn present_output_is_deterministic() {
    let a = run(&["present", "--genus", "4", "--format", "json"]);
    let b = run(&["present", "--genus", "4", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--genus", "3", "--format", "json"]);
    let d = run(&["verify", "--genus", "3", "--format", "json"]);
    assert_eq!(code(&c), 0);
    assert_eq!(c.stdout, d.stdout);
}
