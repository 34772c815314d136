//! JSON reports compared against stored copies, timings zeroed.

use std::path::Path;
use std::process::Command;

use serde_json::Value;
use weiljet_cli::report::{Report, SCHEMA_VERSION};

fn report_json(args: &str) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_weiljet"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs");
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    for r in v["records"].as_array_mut().expect("records") {
        r["elapsed_ms"] = Value::from(0);
    }
    (v, out.status.code().expect("exit code"))
}

fn golden(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).expect("golden file")).expect("golden JSON")
}

#[test]
fn quasicolim_report() {
    let (v, code) = report_json("check quasicolim --name lemma_diff --n 3 --json");
    assert_eq!(code, 0);
    assert_eq!(v, golden("check_quasicolim_lemma_diff_n3.json"));
}

#[test]
fn form_dimension_report() {
    let (v, code) = report_json("dim forms --p 2 --q 1 --n 2 --json");
    assert_eq!(code, 0);
    assert_eq!(v["value"]["dimension"], 3);
    assert_eq!(v, golden("dim_forms_p2_q1_n2.json"));
}

#[test]
fn element_report() {
    let (v, code) = report_json("eval (d + a*d^2)^2 in D_n(3) --json");
    assert_eq!(code, 0);
    assert_eq!(v, golden("eval_element_d_n3.json"));
}

#[test]
fn failure_report_carries_a_witness() {
    let (v, code) = report_json(
        "eval diff(cube D_n(2) base [0] coeffs [[a], [b]], cube D_n(2) base [0] coeffs [[c], [b]]) --json",
    );
    assert_eq!(code, 1);
    assert_eq!(v, golden("eval_diff_mismatch.json"));
}

#[test]
fn golden_files_deserialize_as_reports() {
    for name in [
        "check_quasicolim_lemma_diff_n3.json",
        "dim_forms_p2_q1_n2.json",
        "eval_element_d_n3.json",
        "eval_diff_mismatch.json",
    ] {
        let r: Report = serde_json::from_value(golden(name)).expect("schema");
        assert_eq!(r.schema_version, SCHEMA_VERSION);
        assert_eq!(r.summary.total, r.records.len());
        assert_eq!(
            r.summary.total,
            r.summary.pass + r.summary.fail + r.summary.skip
        );
    }
}
