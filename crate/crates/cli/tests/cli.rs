use std::collections::HashMap;
use std::process::{Command, Output};

use serde_json::Value;

fn repfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repfree"))
        .args(args)
        .env_remove("REPFREE_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = repfree(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Parses CSV output into one map per row.
fn csv_rows(text: &str) -> Vec<HashMap<String, String>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            headers
                .iter()
                .map(str::to_string)
                .zip(r.iter().map(str::to_string))
                .collect()
        })
        .collect()
}

fn csv(args: &[&str]) -> (i32, Vec<HashMap<String, String>>) {
    let mut all = args.to_vec();
    all.extend(["--format", "csv"]);
    let out = repfree(&all);
    (code(&out), csv_rows(&stdout(&out)))
}

#[test]
fn check_exit_codes() {
    let (status, rows) = csv(&["check", "--alg", "linear", "--seq", "1,2,3"]);
    assert_eq!(status, 0);
    assert_eq!(rows[0]["good"], "true");
    assert_eq!(rows[0]["comparisons"], "3");

    let (status, rows) = csv(&["check", "--alg", "bucket", "--seq", "2,2,1,1"]);
    assert_eq!(status, 1);
    assert_eq!(rows[0]["good"], "false");
    assert_eq!(rows[0]["comparisons"], "1");

    assert_eq!(
        code(&repfree(&["check", "--alg", "linear", "--seq", "0,1"])),
        2
    );
    assert_eq!(
        code(&repfree(&["check", "--alg", "linear", "--seq", "1,x"])),
        2
    );
    assert_eq!(code(&repfree(&["check", "--alg", "nope", "--seq", "1"])), 2);
    assert_eq!(
        code(&repfree(&[
            "check",
            "--alg",
            "tree",
            "--seq",
            "1",
            "--garbage",
            "zeroed"
        ])),
        2
    );
    assert_eq!(code(&repfree(&["check", "--alg", "linear"])), 2);
    assert_eq!(code(&repfree(&["frobnicate"])), 2);
    assert_eq!(code(&repfree(&["--help"])), 0);
}

#[test]
fn check_garbage_policies() {
    for policy in ["zeroed", "const:1", "const:-3", "seeded:9"] {
        let (status, rows) = csv(&[
            "check",
            "--alg",
            "garbage",
            "--seq",
            "3,1,2",
            "--garbage",
            policy,
        ]);
        assert_eq!(status, 0, "{policy}");
        assert_eq!(rows[0]["policy"], policy);
    }
    let (status, _) = csv(&[
        "check",
        "--alg",
        "garbage",
        "--seq",
        "1,2,1",
        "--garbage",
        "const:1",
    ]);
    assert_eq!(status, 1);
}

#[test]
fn enumerate_examples() {
    let (status, rows) = csv(&["enumerate", "--n", "4", "--alg", "forward"]);
    assert_eq!(status, 0);
    assert_eq!(rows[0]["expected_comparisons"], "3.203125");
    assert_eq!(rows[0]["good_count"], "24");

    let out = repfree(&["enumerate", "--n", "2", "--alg", "linear", "--workers", "7"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("2.000000"));

    assert_eq!(
        code(&repfree(&["enumerate", "--n", "12", "--alg", "linear"])),
        2
    );
}

#[test]
fn enumerate_ignores_worker_count() {
    let one = json(&["enumerate", "--n", "5", "--alg", "tree"]);
    let many = json(&["enumerate", "--n", "5", "--alg", "tree", "--workers", "3"]);
    assert_eq!(one["result"], many["result"]);
    assert_eq!(many["meta"]["workers"], 3);
    assert_eq!(many["meta"]["cap"], 8);
    assert_eq!(
        one["result"]["expected_comparisons_ratio"],
        serde_json::json!([11493, 3125])
    );
}

#[test]
fn cap_variable() {
    let run = |cap: &str, n: &str| {
        Command::new(env!("CARGO_BIN_EXE_repfree"))
            .args(["enumerate", "--n", n, "--alg", "linear"])
            .env("REPFREE_ENUM_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("3", "4")), 2);
    assert_eq!(code(&run("4", "4")), 0);
    assert_eq!(code(&run("x", "2")), 2);
    assert_eq!(code(&run("10", "2")), 2);
}

#[test]
fn sample_json_carries_metadata_and_csv_round_trips() {
    let args = [
        "sample",
        "--n",
        "30",
        "--alg",
        "tree",
        "--samples",
        "5000",
        "--seed",
        "11",
        "--workers",
        "2",
    ];
    let doc = json(&args);
    let meta = &doc["meta"];
    assert_eq!(meta["seed"], 11);
    assert_eq!(meta["workers"], 2);
    assert_eq!(meta["samples"], 5000);
    assert!(meta["generator_version"]
        .as_str()
        .unwrap()
        .starts_with("xoshiro256++"));
    assert_eq!(meta["format_version"], 1);

    let (status, rows) = csv(&args);
    assert_eq!(status, 0);
    let row = &rows[0];
    for key in [
        "mean_comparisons",
        "mean_assignments",
        "comparison_variance",
        "std_error",
    ] {
        let from_csv: f64 = row[key].parse().unwrap();
        assert_eq!(from_csv, doc["result"][key].as_f64().unwrap(), "{key}");
    }
    for key in ["comparison_sum", "good_count", "seed"] {
        let from_csv: u64 = row[key].parse().unwrap();
        assert_eq!(from_csv, doc["result"][key].as_u64().unwrap(), "{key}");
    }
}

#[test]
fn sweep_is_deterministic() {
    let args = [
        "sweep",
        "--n",
        "1..5",
        "--alg",
        "tree",
        "--samples",
        "2000",
        "--format",
        "csv",
    ];
    let a = repfree(&args);
    let b = repfree(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let rows = csv_rows(&stdout(&a));
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["mean_comparisons"], "0.0");
    assert_eq!(rows[1]["mean_comparisons"], "1.0");
    assert_eq!(
        code(&repfree(&["sweep", "--n", "3..1", "--alg", "tree"])),
        2
    );
}

#[test]
fn formula_values() {
    let out = repfree(&["formula", "--name", "kappa", "--n", "10"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0.030222"));
    let out = repfree(&["formula", "--name", "c_backward", "--n", "10"]);
    assert!(stdout(&out).contains("8.667896"));
    // The printed reference value 1.147287 at n = 7 repeats the n = 8 row.
    let out = repfree(&["formula", "--name", "e_bucket_occupancy", "--n", "7"]);
    assert!(stdout(&out).contains("1.140749"));

    let (_, rows) = csv(&["formula", "--name", "c_linear", "--n", "1..3"]);
    let values: Vec<f64> = rows.iter().map(|r| r["value"].parse().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!((values[2] - 8.0 / 3.0).abs() < 1e-12);

    assert_eq!(
        code(&repfree(&["formula", "--name", "nope", "--n", "3"])),
        2
    );
    assert_eq!(
        code(&repfree(&["formula", "--name", "kappa", "--n", "0"])),
        2
    );
    assert_eq!(
        code(&repfree(&["formula", "--name", "kappa", "--n", "1..x"])),
        2
    );
}

#[test]
fn fit_recovers_exact_model() {
    let points: Vec<String> = [2u64, 4, 8, 16]
        .iter()
        .map(|&n| {
            let x = (n as f64).sqrt() * (n as f64).log2();
            format!("{n}:{:?}", 1.5 * x + 0.25)
        })
        .collect();
    let doc = json(&["fit", "--points", &points.join(",")]);
    let r = &doc["result"];
    assert!((r["coefficient_a"].as_f64().unwrap() - 1.5).abs() <= 1e-9);
    assert!((r["intercept_b"].as_f64().unwrap() - 0.25).abs() <= 1e-9);
    assert!(r["residual_rms"].as_f64().unwrap() <= 1e-9);

    assert_eq!(code(&repfree(&["fit", "--points", "4:5"])), 2);
    assert_eq!(code(&repfree(&["fit", "--points", "4:5,4:6"])), 2);
    assert_eq!(code(&repfree(&["fit"])), 2);
}

#[test]
fn fit_over_range_uses_exact_means_first() {
    let (status, rows) = csv(&[
        "fit",
        "--n",
        "2..9",
        "--samples",
        "2000",
        "--max-n-exact",
        "6",
    ]);
    assert_eq!(status, 0);
    let sources: Vec<&str> = rows.iter().map(|r| r["source"].as_str()).collect();
    assert_eq!(
        sources,
        ["exact", "exact", "exact", "exact", "exact", "sampled", "sampled", "sampled"]
    );
    assert_eq!(
        rows[1]["mean_comparisons"].parse::<f64>().unwrap(),
        55.0 / 27.0
    );
}

#[test]
fn table_exit_codes() {
    let out = repfree(&["table", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("T1: PASS"));
    let (status, rows) = csv(&["table", "T2", "--max-n-exact", "4"]);
    assert_eq!(status, 0);
    assert_eq!(rows.iter().filter(|r| r["verdict"] == "skipped").count(), 6);
    assert_eq!(
        rows.iter()
            .find(|r| r["n"] == "6" && r["column"] == "alpha")
            .unwrap()["expected_text"],
        "0,073035"
    );

    // Table 5 carries printing errors that are reported, not hidden.
    let (status, rows) = csv(&["table", "5", "--max-n-exact", "4"]);
    assert_eq!(status, 1);
    let failed: Vec<_> = rows
        .iter()
        .filter(|r| r["verdict"] == "fail")
        .map(|r| (r["n"].clone(), r["column"].clone()))
        .collect();
    assert_eq!(failed.len(), 4, "{failed:?}");

    assert_eq!(code(&repfree(&["table", "9"])), 2);
    assert_eq!(code(&repfree(&["table", "1", "--max-n-exact", "12"])), 2);
    assert_eq!(code(&repfree(&["table", "4", "--samples", "0"])), 2);
}

#[test]
fn ledger_lists_entries() {
    let doc = json(&["ledger"]);
    let entries = doc["result"]["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["id"] == "backward-radical-sign"));
    let (status, rows) = csv(&["ledger"]);
    assert_eq!(status, 0);
    assert_eq!(rows.len(), entries.len());
}
