//! End-to-end tests driving the compiled binary: exit codes, report shape,
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.display().to_string()
}

fn leibniz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz"))
        .args(args)
        .env_remove("LEIBNIZ_BUDGET")
        .output()
        .expect("binary runs")
}

fn leibniz_with_budget(args: &[&str], budget: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz"))
        .args(args)
        .env("LEIBNIZ_BUDGET", budget)
        .output()
        .expect("binary runs")
}

fn report(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

#[test]
fn check_accepts_reference_algebra() {
    let out = leibniz(&["check", &fixture("ex12_q.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["leibniz"], true);
    assert_eq!(r["result"]["lie"], false);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn check_rejects_idempotent_line_with_witness() {
    let out = leibniz(&["check", &fixture("bad_idempotent.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    let w = &r["result"]["witness"];
    assert_eq!((w["left"].as_u64(), w["middle"].as_u64(), w["right"].as_u64()),
               (Some(0), Some(0), Some(0)));
    assert_eq!(w["lhs"][0], "1");
    assert_eq!(w["rhs"][0], "0");
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let out = leibniz(&["check", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "diagnostic should cite a position: {err}");
}

#[test]
fn solve_derivation_spaces() {
    let out = leibniz(&["solve", &fixture("ex12_q.json"), "--kind", "der"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["dimension"], 3);
    assert_eq!(r["result"]["basis"].as_array().unwrap().len(), 3);

    let out = leibniz(&["solve", &fixture("abelian2_f5.json"), "--kind", "ader"]);
    let r = report(&out);
    assert_eq!(r["result"]["dimension"], 4);
}

#[test]
fn solve_double_derivations_count_and_sharding() {
    let out = leibniz(&["solve", &fixture("ex12_f5.json"), "--kind", "dder"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["count"], 5625);
    assert!(r["result"].get("elements").is_none());

    // Sharded run is byte-identical to the single-threaded one.
    let sharded = leibniz(&["solve", &fixture("ex12_f5.json"), "--kind", "dder", "--jobs", "3"]);
    assert_eq!(out.stdout, sharded.stdout);

    // The list is gated behind --list.
    let listed = leibniz(&["solve", &fixture("ex12_f3.json"), "--kind", "dder", "--list"]);
    let r = report(&listed);
    assert_eq!(r["result"]["count"], 405);
    assert_eq!(r["result"]["elements"].as_array().unwrap().len(), 405);

    // Enumeration over the rationals is a usage error.
    let out = leibniz(&["solve", &fixture("ex12_q.json"), "--kind", "dder"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn product_bicrossed_emits_printed_table() {
    let out = leibniz(&[
        "product",
        &fixture("mp54_f5.json"),
        "--kind",
        "bicrossed",
        "--validate",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let axioms = r["result"]["axioms"].as_array().unwrap();
    assert_eq!(axioms.len(), 12);
    assert!(axioms.iter().all(|a| a["pass"] == true));
    // The emitted algebra re-parses and matches the reference table.
    let alg: leibniz_core::json::AlgebraDoc =
        serde_json::from_value(r["result"]["algebra"].clone()).unwrap();
    let algebra = alg.to_algebra().unwrap();
    let xi_doc: leibniz_core::json::AlgebraDoc = serde_json::from_str(
        &std::fs::read_to_string(fixture("xi_f5.json")).unwrap(),
    )
    .unwrap();
    let xi = xi_doc.to_algebra().unwrap();
    assert_eq!(algebra.bracket(), xi.bracket());
}

#[test]
fn product_refuses_invalid_datum() {
    let out = leibniz(&["product", &fixture("bad_l5.json"), "--kind", "unified", "--validate"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    let axioms = r["result"]["axioms"].as_array().unwrap();
    let l5 = axioms.iter().find(|a| a["id"] == "L5").unwrap();
    assert_eq!(l5["pass"], false);
    assert!(l5["witness"].is_object());
    assert!(r["result"].get("algebra").is_none(), "no algebra on failure");

    // Without --validate the raw product is emitted.
    let raw = leibniz(&["product", &fixture("bad_l5.json"), "--kind", "unified"]);
    assert_eq!(raw.status.code(), Some(0));
}

#[test]
fn axioms_standalone_reports() {
    let out = leibniz(&["axioms", &fixture("mp54_f5.json"), "--kind", "matched"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["axioms"].as_array().unwrap().len(), 12);

    let out = leibniz(&[
        "axioms",
        &fixture("flag_g11_q.json"),
        "--kind",
        "flag1",
        "--algebra",
        &fixture("ex12_q.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["axioms"].as_array().unwrap().len(), 7);
}

#[test]
fn flags_classification_of_sl2() {
    let out = leibniz(&["flags", &fixture("sl2_f5.json"), "--classify", "cohom"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["f1_count"], 125);
    assert_eq!(r["result"]["f2_count"], 0);
    assert_eq!(r["result"]["classify"]["class_count"], 1);
    assert!(r["result"]["classify"]["conventions"]["kind1"]
        .as_str()
        .unwrap()
        .contains("Delta'"));

    // Byte-identical reports across runs and across sharding.
    let again = leibniz(&["flags", &fixture("sl2_f5.json"), "--classify", "cohom"]);
    assert_eq!(out.stdout, again.stdout);
    let sharded = leibniz(&["flags", &fixture("sl2_f5.json"), "--classify", "cohom", "--jobs", "2"]);
    assert_eq!(out.stdout, sharded.stdout);
}

#[test]
fn flags_char_two_counts() {
    let out = leibniz(&["flags", &fixture("ex12_f2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["f1_count"], 56);
    assert_eq!(r["result"]["f2_count"], 16);
}

#[test]
fn flags_budget_exceeded_is_undecided() {
    let out = leibniz_with_budget(&["flags", &fixture("sl2_f5.json")], "1000");
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["status"], "undecided");
}

#[test]
fn complements_of_the_bicrossed_product() {
    let out = leibniz(&["complements", &fixture("xi_f5.json"), "--g", "0,1", "--h", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["index"], 2);
    assert_eq!(r["result"]["deformation_maps"], 45);
    assert_eq!(r["result"]["classes"].as_array().unwrap().len(), 2);

    // Non-complement index sets are diagnosed.
    let bad = leibniz(&["complements", &fixture("xi_f5.json"), "--g", "0,1", "--h", "1,2"]);
    assert_eq!(bad.status.code(), Some(2));

    // A starved budget is an undecided outcome, not a wrong answer.
    let tight = leibniz_with_budget(
        &["complements", &fixture("xi_f5.json"), "--g", "0,1", "--h", "2,3"],
        "10",
    );
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn iso_decisions() {
    let found = leibniz(&["iso", &fixture("k_f5.json"), &fixture("k_f5.json")]);
    assert_eq!(found.status.code(), Some(0));
    let r = report(&found);
    assert_eq!(r["result"]["decision"], "isomorphic");

    let none = leibniz(&["iso", &fixture("abelian2_f5.json"), &fixture("k_f5.json")]);
    assert_eq!(none.status.code(), Some(1));
    let r = report(&none);
    assert_eq!(r["result"]["decision"], "not_isomorphic");
    assert!(r["result"]["isomorphism"].is_null());

    let tight = leibniz_with_budget(&["iso", &fixture("k_f5.json"), &fixture("k_f5.json")], "3");
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn pretty_rendering_is_human_readable() {
    let out = leibniz(&["--pretty", "check", &fixture("ex12_q.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: check"));
    assert!(text.contains("status:  Ok"));
}
