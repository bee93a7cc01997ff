//! End-to-end tests of the `spinchar` binary: documented examples, exit
//! codes of every error path, determinism, and golden outputs.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files under `tests/golden/`.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spinchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinchar")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = spinchar(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    spinchar(args).status.code().expect("exit code")
}

#[test]
fn classes_of_s3_cover() {
    let v = json(&["classes", "sym", "--n", "3"]);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 6);
    let total: u64 = classes.iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 12);
    assert_eq!(v["order"], 12);
}

#[test]
fn wreath_oracle_has_no_differences() {
    for extra in [&[][..], &["--alt"][..]] {
        let mut args = vec!["chartable", "wreath", "--p", "3", "--t", "1", "--oracle"];
        args.extend_from_slice(extra);
        let v = json(&args);
        assert_eq!(v["oracle"]["diffs"], Value::Array(vec![]));
        assert!(v["oracle"]["entriesCompared"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_isometry_smallest_block() {
    let v = json(&["verify-isometry", "--n", "3", "--p", "3", "--core", ""]);
    assert_eq!(v["violations"], Value::Array(vec![]));
    assert_eq!(v["passed"], true);
    assert!(v["pairsChecked"].as_u64().unwrap() > 0);
    assert!(v["runtime"].is_number());
}

#[test]
fn verify_isometry_variants() {
    for args in [
        &["verify-isometry", "--n", "4", "--p", "3", "--core", "1", "--side", "alt", "--cover", "+"][..],
        &["verify-isometry", "--n", "5", "--p", "3", "--core", "2"][..],
        &["verify-isometry", "--n", "7", "--p", "3", "--core", "1", "--brauer"][..],
    ] {
        let v = json(args);
        assert_eq!(v["passed"], true, "{args:?}");
        assert_eq!(v["violations"], Value::Array(vec![]));
    }
}

#[test]
fn bar_core_and_quotient() {
    let v = json(&["barquot", "--p", "3", "--lambda", "5,2,1"]);
    assert_eq!(v["core"], "2");
    assert_eq!(v["weight"], 2);
    let v = json(&["barcore", "--p", "5", "--lambda", "6,4"]);
    assert_eq!(v["core"], "");
    let v = json(&["core", "--q", "2", "--lambda", "3,1"]);
    assert_eq!(v["core"], "");
    assert_eq!(v["weight"], 2);
}

#[test]
fn blocks_partition_the_characters() {
    let v = json(&["blocks", "--n", "6", "--p", "3"]);
    let members: usize = v["blocks"].as_array().unwrap().iter().map(|b| b["members"].as_array().unwrap().len()).sum();
    let table = json(&["chartable", "sym", "--n", "6"]);
    assert_eq!(members, table["characters"].as_array().unwrap().len());
}

#[test]
fn chartable_block_annotation_and_formats() {
    let v = json(&["chartable", "sym", "--n", "5", "--p", "5", "--decimal"]);
    let c = &v["characters"][0];
    assert!(c["block"].is_string());
    assert_eq!(c["decimal"].as_array().unwrap().len(), c["values"].as_array().unwrap().len());
    let csv = spinchar(&["chartable", "alt", "--n", "4", "--format", "csv"]);
    assert!(csv.status.success());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("character,"));
    let pretty = spinchar(&["classes", "wreath", "--p", "3", "--t", "1", "--format", "pretty"]);
    assert!(pretty.status.success());
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify-isometry", "--n", "5", "--p", "3", "--core", "2,1"][..], // not a 3-bar core
        &["verify-isometry", "--n", "4", "--p", "3", "--core", ""][..],    // wrong residue
        &["verify-isometry", "--n", "9", "--p", "3", "--core", ""][..],    // weight ≥ p
        &["verify-isometry", "--n", "5", "--p", "3", "--core", "2", "--side", "alt", "--brauer"][..],
        &["verify-isometry", "--n", "3", "--p", "3", "--side", "wreath"][..],
        &["verify-isometry", "--n", "3", "--p", "3", "--cover", "x"][..],
        &["verify-isometry", "--n", "3", "--p", "3", "--flip-sign", "99"][..],
        &["barcore", "--p", "4", "--lambda", "3"][..],
        &["barcore", "--p", "3", "--lambda", "2,2"][..],
        &["barquot", "--p", "3", "--lambda", "1,2"][..],
        &["core", "--q", "1", "--lambda", "3"][..],
        &["classes", "sym", "--n", "0"][..],
        &["blocks", "--n", "5", "--p", "3", "--side", "up"][..],
        &["barquot", "--p", "3", "--lambda", "3", "--format", "csv"][..],
        &["chartable", "sym"][..], // missing --n, rejected by the parser
        &["frobnicate"][..],
    ] {
        assert_eq!(code(args), 2, "{args:?}");
    }
}

#[test]
fn capped_resources_exit_3() {
    assert_eq!(code(&["--max-order", "100", "classes", "wreath", "--p", "3", "--t", "3"]), 3);
    assert_eq!(code(&["--max-order", "100", "chartable", "sym", "--n", "6"]), 3);
    assert_eq!(code(&["--max-order", "1000", "verify-isometry", "--n", "6", "--p", "3"]), 3);
    assert_eq!(code(&["--max-conductor", "4", "chartable", "sym", "--n", "5"]), 3);
}

#[test]
fn verification_failures_exit_4_with_a_report() {
    let out = spinchar(&["verify-isometry", "--n", "3", "--p", "3", "--flip-sign", "0"]);
    assert_eq!(out.status.code(), Some(4));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["chartable", "sym", "--n", "6", "--cover", "+"][..],
        &["classes", "wreath", "--p", "3", "--t", "2"][..],
        &["verify-isometry", "--n", "6", "--p", "3", "--no-timing"][..],
    ] {
        assert_eq!(spinchar(args).stdout, spinchar(args).stdout, "{args:?}");
    }
}

fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    for n in 1..=6 {
        for cover in ["+", "-"] {
            let name = format!("chartable_sym_n{n}_{}", if cover == "+" { "plus" } else { "minus" });
            cases.push((name, ["chartable", "sym", "--n", &n.to_string(), "--cover", cover].map(String::from).to_vec()));
        }
    }
    for t in 1..=2 {
        for alt in [false, true] {
            let mut args = ["chartable", "wreath", "--p", "3", "--t", &t.to_string()].map(String::from).to_vec();
            if alt {
                args.push("--alt".into());
            }
            cases.push((format!("chartable_wreath_p3_t{t}{}", if alt { "_alt" } else { "" }), args));
        }
    }
    for (n, core) in [(3, ""), (6, ""), (4, "1"), (7, "1")] {
        for side in ["sym", "alt"] {
            let name = format!("isometry_n{n}_core{}_{side}", if core.is_empty() { "0" } else { core });
            let args = ["verify-isometry", "--n", &n.to_string(), "--p", "3", "--core", core, "--side", side, "--no-timing"];
            cases.push((name, args.map(String::from).to_vec()));
        }
    }
    cases
}

#[test]
fn golden_outputs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = spinchar(&args);
        assert!(out.status.success(), "{name}");
        let path = dir.join(format!("{name}.json"));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
        } else {
            let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
            assert!(want == out.stdout, "{name} differs from {}", path.display());
        }
    }
}
