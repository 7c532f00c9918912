use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pureres"));
    c.env_remove("PURERES_PRIME").env_remove("PURERES_SEED");
    c
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn tits_form_prints_one() {
    let out = run(&[
        "--format", "text", "quiver", "tits", "--w", "35", "--a", "1", "--b", "35",
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1");
    let out = run(&["quiver", "tits", "--w", "35", "--a", "1", "--b", "35"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"], 1);
    assert_eq!(v["config"]["prime"], 32003);
}

#[test]
fn koszul_betti_ranks() {
    let out = run(&["koszul", "--n", "2", "--d", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    let ranks: Vec<usize> = v["result"]["presentation"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_array().unwrap().len())
        .collect();
    assert_eq!(ranks, [1, 3, 3, 1]);
    assert_eq!(v["result"]["report"]["status"], "Pass");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["--seed", "7", "gorenstein", "--n", "3", "--t", "1"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn env_overrides_seed_and_prime() {
    let out = bin()
        .env("PURERES_SEED", "9")
        .env("PURERES_PRIME", "10007")
        .args(["quiver", "tits", "--w", "3", "--a", "1", "--b", "1"])
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["prime"], 10007);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["koszul", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["--prime", "9", "quiver", "tits", "--w", "3", "--a", "1", "--b", "1"])
            .status
            .code(),
        Some(2)
    );
    let bad_schedule = run(&["anyhd", "--n", "4", "--l", "3", "--schedule", "5,4"]);
    assert_eq!(bad_schedule.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one_with_json() {
    let out = run(&["quiver", "schur", "--w", "2", "--a", "1", "--b", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "PreconditionViolated");
    let out = run(&["cohomology", "--in", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "Io");
}

#[test]
fn file_prime_must_match_config() {
    let out = run(&[
        "--prime",
        "10007",
        "cohomology",
        "--in",
        &fixture("structure_sheaf_p2.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "SchemaViolation");
}

#[test]
fn cohomology_of_twisted_tangent_bundle() {
    let out = run(&[
        "cohomology",
        "--in",
        &fixture("tangent_twisted_p2.json"),
        "--tmin",
        "-4",
        "--tmax",
        "1",
    ]);
    assert!(out.status.success());
    let rows = &json(&out)["result"]["rows"];
    // h^0(T(-1)(t)) = 3 binom(t+2,2) - binom(t+1,2). By Serre duality
    // h^1(T(-3)) = h^1(Ω) = 1 and h^2(T(-5)) = h^0(Ω(2)) = 3.
    assert_eq!(rows[0], serde_json::json!([0, 0, 0, 0, 3, 8]));
    assert_eq!(rows[1], serde_json::json!([0, 0, 1, 0, 0, 0]));
    assert_eq!(rows[2], serde_json::json!([3, 0, 0, 0, 0, 0]));
    let tsv = run(&[
        "--format",
        "tsv",
        "cohomology",
        "--in",
        &fixture("tangent_twisted_p2.json"),
        "--tmin",
        "0",
        "--tmax",
        "1",
    ]);
    assert_eq!(
        String::from_utf8_lossy(&tsv.stdout),
        "q/t\t0\t1\n0\t3\t8\n1\t0\t0\n2\t0\t0\n"
    );
}

#[test]
fn hom_between_fixtures() {
    let e = fixture("tangent_twisted_p3.json");
    let o = fixture("structure_sheaf_p3.json");
    let out = run(&["hom", "--e", &o, "--f", &e]);
    assert_eq!(json(&out)["result"]["ext"], serde_json::json!([4, 0, 0, 0]));
    let out = run(&["hom", "--e", &e, "--f", &e]);
    assert_eq!(json(&out)["result"]["ext"], serde_json::json!([1, 0, 0, 0]));
    let out = run(&[
        "hom",
        "--e",
        &fixture("koszul_syzygy_1_p3.json"),
        "--f",
        &fixture("koszul_syzygy_1_p3.json"),
    ]);
    assert_eq!(json(&out)["result"]["ext"][0], 1);
}

#[test]
fn quiver_homext_between_fixtures() {
    let a = fixture("rep_w3_1_3_standard.json");
    let b = fixture("rep_w3_1_3_other.json");
    let out = run(&["quiver", "homext", "--r1", &a, "--r2", &a]);
    assert_eq!(
        json(&out)["result"],
        serde_json::json!({"hom": 1, "ext1": 0})
    );
    // Hom - Ext^1 between any two (1,3) representations is q(1,3) = 1.
    let out = run(&["quiver", "homext", "--r1", &a, "--r2", &b]);
    let v = json(&out)["result"].clone();
    assert_eq!(v["hom"].as_i64().unwrap() - v["ext1"].as_i64().unwrap(), 1);
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "koszul", "--n", "3", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["status"], "Pass");
    let out = run(&["verify", "anyhd", "--n", "4", "--l", "2", "--schedule", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "ScheduleTooTight");
}

#[test]
fn explore_runs_without_asserting() {
    let out = run(&["explore", "--in", &fixture("gorenstein_p3_t1.json")]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["explore"]["pure"], true);
    assert_eq!(v["result"]["explore"]["rows"].as_array().unwrap().len(), 2);
    let out = run(&["explore", "--n", "2", "--degree", "2", "--count", "4"]);
    assert_eq!(json(&out)["result"]["explore"]["pure"], false);
    assert_eq!(run(&["explore", "--n", "2"]).status.code(), Some(2));
}
