use std::process::Command;

use serde_json::Value;
use sylow2::verify::{Status, VerificationReport};

fn sylow2(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sylow2"))
        .args(args)
        .env_remove("SYLOW2_CACHE_DIR")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_out(args: &[&str]) -> Value {
    let (code, stdout, stderr) = sylow2(args);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn order_examples() {
    assert_eq!(json_out(&["order", "--n", "8", "--kind", "A"])["log2_order"], 6);
    assert_eq!(json_out(&["order", "--n", "1", "--kind", "S"])["log2_order"], 0);
    assert_eq!(json_out(&["order", "--n", "24", "--kind", "S"])["log2_order"], 22);
}

#[test]
fn decompose_examples() {
    let d = json_out(&["decompose", "--n", "22"]);
    assert_eq!(d["blocks"], serde_json::json!([16, 4, 2]));
    assert_eq!(d["exponents"], serde_json::json!([15, 3, 1]));
    assert_eq!(d["exponent_sum"], 19);
    assert_eq!(d["product_check"], true);

    let d = json_out(&["decompose", "--n", "12"]);
    assert_eq!(d["blocks"], serde_json::json!([8, 4]));
    assert_eq!(d["exponents"], serde_json::json!([7, 3]));
    assert_eq!(d["a_exponent"], 9);

    let d = json_out(&["decompose", "--n", "1"]);
    assert_eq!(d["blocks"], serde_json::json!([1]));
    assert_eq!(d["exponent_sum"], 0);
}

#[test]
fn gens_examples() {
    let g = json_out(&["gens", "--k", "3", "--family", "s_beta"]);
    let labels: Vec<&str> = g["generators"].as_array().unwrap().iter().map(|x| x["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["alpha_0", "alpha_1", "tau"]);
    assert_eq!(g["generators"][2]["cycles"], "(1 2)(7 8)");
    assert_eq!(g["generators"][2]["portrait"], "k=3;L0=0;L1=00;L2=1001");

    let g = json_out(&["gens", "--k", "2", "--family", "s_beta"]);
    assert_eq!(g["generators"].as_array().unwrap().len(), 2);

    let g = json_out(&["gens", "--n", "6", "--family", "syl2_A"]);
    for gen in g["generators"].as_array().unwrap() {
        let p = sylow2::LeafPermutation::parse_cycles(gen["cycles"].as_str().unwrap(), 6).unwrap();
        assert!(p.is_even());
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(sylow2(&["gens", "--k", "3", "--family", "bogus"]).0, 2);
    assert_eq!(sylow2(&["verify", "--claim", "semidirect", "--k", "0"]).0, 2);
    assert_eq!(sylow2(&["verify", "--claim", "no-such-claim"]).0, 2);
    assert_eq!(sylow2(&["order"]).0, 2);
}

#[test]
fn verify_single_claims() {
    let r = json_out(&["verify", "--claim", "order-Gk", "--k", "3"]);
    assert_eq!(r["claims"][0]["status"], "pass");
    assert_eq!(r["claims"][0]["witnesses"]["k=3"]["order"], 64);

    let r = json_out(&["verify", "--claim", "t-nonclosure", "--k", "3"]);
    assert_eq!(r["claims"][0]["status"], "pass");
    assert_eq!(r["claims"][0]["witnesses"]["k=3"]["t_pairs"], 16);
}

#[test]
fn skipped_cap_is_neutral_unless_strict() {
    let args = ["verify", "--claim", "order-Gk", "--k", "4", "--cap", "1000"];
    let (code, stdout, _) = sylow2(&args);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r["claims"][0]["status"], "skipped-cap");
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(sylow2(&strict).0, 1);
}

#[test]
fn full_run_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut vectors = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("report{i}.json"));
        let (code, _, stderr) = sylow2(&["verify", "--all", "--max-k", "4", "--max-n", "12", "--json", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{stderr}");
        let text = std::fs::read_to_string(&path).unwrap();
        let report = VerificationReport::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text);
        assert!(report.claims.iter().all(|c| c.status == Status::Pass), "{text}");
        let ids: Vec<&str> = report.claims.iter().map(|c| c.claim_id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
        vectors.push(report.status_vector());
    }
    assert_eq!(vectors[0], vectors[1]);
}

#[test]
fn cache_directory_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    for _ in 0..2 {
        let r = json_out(&["verify", "--claim", "order-Gk", "--k", "3", "--cache", cache]);
        assert_eq!(r["claims"][0]["status"], "pass");
    }
    assert!(dir.path().join("G_3.json").exists());

    let out = Command::new(env!("CARGO_BIN_EXE_sylow2"))
        .args(["verify", "--claim", "order-Gk", "--k", "2"])
        .env("SYLOW2_CACHE_DIR", cache)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("G_2.json").exists());
}

#[test]
fn list_shows_every_claim() {
    let (code, stdout, _) = sylow2(&["verify", "--list"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = stdout.lines().collect();
    assert_eq!(ids, sylow2::verify::claim_ids());
}
