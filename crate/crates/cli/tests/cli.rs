use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rackcoh"))
}

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn report(args: &[&str], stdin: Option<&str>) -> Value {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn gen(args: &[&str]) -> String {
    let out = run(args, None);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn dihedral3_betti_pipeline() {
    let d3 = gen(&["gen", "dihedral", "3"]);
    let r = report(
        &["betti", "-", "--theory", "rack", "--max-degree", "3"],
        Some(&d3),
    );
    assert_eq!(r["result"]["betti"], serde_json::json!([1, 1, 1]));
    assert_eq!(r["result"]["match"], true);
    assert_eq!(r["command"], "betti");
}

#[test]
fn quandle_betti_of_dihedral4() {
    let d4 = gen(&["gen", "dihedral", "4"]);
    let r = report(
        &[
            "amenable-check",
            "-",
            "--theory",
            "quandle",
            "--max-degree",
            "3",
        ],
        Some(&d4),
    );
    assert_eq!(r["result"]["betti"], serde_json::json!([2, 2, 2]));
    assert_eq!(r["result"]["verified"], true);
}

#[test]
fn free_quandle_distance() {
    let r = report(&["fq", "distance", "--target", "y^3@x"], None);
    assert_eq!(r["result"]["exact"], 3);
    let r = report(
        &["fq", "distance", "--source", "y@x", "--target", "yyy@x"],
        None,
    );
    assert_eq!(r["result"]["exact"], 2);
}

#[test]
fn free_quandle_ball_and_quasimorphism() {
    let r = report(&["fq", "ball", "--radius", "3", "--conjlen", "0"], None);
    assert_eq!(r["result"]["components"][0]["certified_radius"], 3);
    let r = report(&["fq", "quasimorphism"], None);
    assert_eq!(r["result"]["defect"], 2);
    assert_eq!(r["result"]["linear_growth"], true);
    assert_eq!(r["result"]["growth"][2]["hat_phi"], 3);
}

#[test]
fn verify_reports_violated_axiom() {
    let out = run(
        &["verify", "-"],
        Some(r#"{"size":2,"table":[[0,0],[1,1]]}"#),
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("A0"));
    let out = run(&["verify", "-"], Some("RACK 3\n0 1 2\n2 1 0\n1 0 2\n"));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("A1"));
}

#[test]
fn parse_errors_exit_with_2() {
    let out = run(
        &["verify", "-"],
        Some(r#"{"size":3,"table":[[0,2,1],[2,7,0],[1,0,2]]}"#),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn resource_caps_exit_with_4() {
    let d6 = gen(&["gen", "dihedral", "6"]);
    let out = run(&["betti", "-", "--max-degree", "4"], Some(&d6));
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["--cap", "2", "inn", "-"], Some(&d6));
    assert_eq!(out.status.code(), Some(4));
    let out = run(
        &["fq", "ball", "--radius", "6", "--max-nodes", "1000"],
        None,
    );
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn quandle_theory_on_a_rack_is_a_validation_error() {
    let c3 = gen(&["gen", "cyclic", "3"]);
    let out = run(&["betti", "-", "--theory", "quandle"], Some(&c3));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let d5 = gen(&["gen", "dihedral", "5"]);
    let a = run(&["amenable-check", "-"], Some(&d5));
    let b = run(&["--sequential", "amenable-check", "-"], Some(&d5));
    assert_eq!(a.stdout, b.stdout);
    let a = run(
        &[
            "identities",
            "-",
            "--seed",
            "7",
            "--samples",
            "10",
            "--cocycles",
            "3",
        ],
        Some(&d5),
    );
    let b = run(
        &[
            "identities",
            "-",
            "--seed",
            "7",
            "--samples",
            "10",
            "--cocycles",
            "3",
        ],
        Some(&d5),
    );
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let d3 = gen(&["gen", "dihedral", "3"]);
    let out = run(
        &["components", "-", "--json", path.to_str().unwrap()],
        Some(&d3),
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["result"]["count"], 1);
}

#[test]
fn generators_and_products() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("c2.json");
    let b = dir.path().join("d3.txt");
    std::fs::write(&a, gen(&["gen", "cyclic", "2"])).unwrap();
    std::fs::write(&b, gen(&["gen", "dihedral", "3", "--format", "text"])).unwrap();
    let prod = gen(&["gen", "product", a.to_str().unwrap(), b.to_str().unwrap()]);
    let r = report(&["verify", "-"], Some(&prod));
    assert_eq!(r["input"]["size"], 6);
    assert_eq!(r["input"]["is_quandle"], false);
    let r = report(&["extension", "-"], Some(&prod));
    assert_eq!(r["result"]["quotient_size"], 3);
    assert_eq!(r["result"]["lipschitz"]["holds"], true);
    assert_eq!(
        gen(&["gen", "trivial", "2", "--format", "text"]),
        "QUANDLE 2\n0 1\n0 1\n"
    );
}

#[test]
fn coset_racks_from_group_specs() {
    let s3 = gen(&["gen", "coset", &data("s3_transposition.perm")]);
    assert_eq!(s3, gen(&["gen", "dihedral", "3"]));
    for spec in [
        "s3_transposition.perm",
        "d8_reflections.perm",
        "z4_trivial.perm",
        "z6_index2.perm",
    ] {
        let r = report(&["quotient-check", &data(spec)], None);
        assert_eq!(r["result"]["equal"], true, "{spec}");
    }
}

#[test]
fn geometry_commands() {
    let c6 = gen(&["gen", "cyclic", "6"]);
    let r = report(&["metric", "-", "--pairs"], Some(&c6));
    assert_eq!(r["result"]["diameters"], serde_json::json!([3]));
    assert_eq!(r["result"]["inner_automorphisms_are_isometries"], true);
    assert_eq!(r["result"]["pairs"]["0"]["distances"][0][3], 3);
    let r = report(&["defect", "-"], Some(&c6));
    assert_eq!(r["result"]["at_most_one"], true);
    let d3 = gen(&["gen", "dihedral", "3"]);
    let r = report(&["inn", "-", "--norm"], Some(&d3));
    assert_eq!(r["result"]["order"], 6);
    assert_eq!(r["result"]["norm_diameter"], 2);
    let r = report(&["joyce", "-"], Some(&d3));
    assert_eq!(r["result"]["group_order"], 6);
    assert_eq!(r["result"]["representatives"][0]["cosets"], 3);
}

#[test]
fn identities_hold() {
    let d3 = gen(&["gen", "dihedral", "3"]);
    let r = report(
        &["identities", "-", "--samples", "20", "--cocycles", "5"],
        Some(&d3),
    );
    assert_eq!(r["result"]["verified"], true);
    assert_eq!(r["result"]["primitives_checked"], 5 * 40);
}
