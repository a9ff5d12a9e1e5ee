use std::io::Write;
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

fn copex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_copex"))
        .args(args)
        .env_remove("COPEX_QUAD_TOL")
        .output()
        .expect("spawn copex")
}

fn json_records(args: &[&str]) -> (Vec<Value>, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = copex(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let records = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{l}: {e}")))
        .collect();
    (records, out.status.code().unwrap())
}

fn num(rec: &Value, key: &str) -> f64 {
    rec["results"][key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {rec}"))
}

#[test]
fn ccex_equals_scex_for_fgm() {
    let (recs, code) = json_records(&["measure", "fgm:0.5", "--ccex", "--scex"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["results"]["measure"], "ccex");
    assert_eq!(recs[1]["results"]["measure"], "scex");
    assert!((num(&recs[0], "value") - num(&recs[1], "value")).abs() < 1e-10);
    assert!((num(&recs[0], "value") - 0.0295833333333).abs() < 1e-10);
}

#[test]
fn product_cex() {
    let (recs, code) = json_records(&["measure", "product", "--cex"]);
    assert_eq!(code, 0);
    assert!((num(&recs[0], "value") - 0.25).abs() < 1e-12);
    assert_eq!(recs[0]["results"]["verdict"], "agree");
    assert_eq!(recs[0]["config"], "gl16-d24-abs1e-10-rel1e-9-h0");
}

#[test]
fn records_carry_notes_and_sweep_subjects() {
    let (recs, code) = json_records(&["measure", "fgm", "--sweep=-1:1:0.5", "--ccex"]);
    assert_eq!(code, 0);
    let subjects: Vec<&str> = recs
        .iter()
        .map(|r| r["subject"].as_str().unwrap())
        .collect();
    assert_eq!(
        subjects,
        ["fgm:-1", "fgm:-0.5", "fgm:0", "fgm:0.5", "fgm:1"]
    );
    for r in &recs {
        assert!(r["notes"]
            .as_array()
            .unwrap()
            .contains(&Value::from("quadrature")));
    }
}

#[test]
fn all_skips_density_measures_for_singular_copulas() {
    let (recs, code) = json_records(&["measure", "marshall-olkin:0.3,0.7", "--all"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = recs
        .iter()
        .map(|r| r["results"]["measure"].as_str().unwrap())
        .collect();
    assert!(!names.contains(&"cex") && !names.contains(&"entropy"));
    assert!(names.contains(&"ccex") && names.contains(&"survival-entropy"));
}

#[test]
fn bad_spec_exits_2_and_names_token() {
    let out = copex(&["measure", "fgm:abc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("'abc'"));
    let out = copex(&["measure", "gumbel:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("'gumbel'"));
    let out = copex(&["check", "fgm:1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta=1.5"));
}

#[test]
fn tolerance_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_copex"));
        cmd.args(["--json", "measure", "product"])
            .env_remove("COPEX_QUAD_TOL");
        if let Some(e) = env {
            cmd.env("COPEX_QUAD_TOL", e);
        }
        if let Some(f) = flag {
            cmd.args(["--abs-tol", f]);
        }
        let out = cmd.output().unwrap();
        let rec: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
        (
            out.status.code().unwrap(),
            rec["config"].as_str().unwrap_or("").to_string(),
        )
    };
    assert!(run(Some("1e-6"), None).1.contains("abs1e-6"));
    assert!(run(Some("1e-6"), Some("1e-8")).1.contains("abs1e-8"));
    assert_eq!(run(Some("abc"), None).0, 2);
}

#[test]
fn not_converged_exits_3() {
    let (recs, code) = json_records(&[
        "measure",
        "cuadras-auge-section:0.9",
        "--ccex",
        "--max-depth",
        "0",
    ]);
    assert_eq!(code, 3);
    assert_eq!(recs[0]["results"]["converged"], false);
}

#[test]
fn estimate_builtin() {
    let (recs, code) = json_records(&["estimate", "--builtin", "surgery"]);
    assert_eq!(code, 0);
    let r = &recs[0];
    assert_eq!(num(r, "n"), 20.0);
    assert!((num(r, "ccex_population_riemann") - 0.0484109375).abs() < 1e-12);
    assert!((num(r, "scex_population_riemann") - 0.0357140625).abs() < 1e-12);
    assert!((num(r, "ccex_paper_constant") - 30983.0 / 107_200_000.0).abs() < 1e-12);
    assert_eq!(r["results"]["pqd_evidence"], true);
}

#[test]
fn estimate_from_file_and_bad_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "x,y\n1,2\n2,1\n3,4\n4,3").unwrap();
    let (recs, code) = json_records(&["estimate", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(num(&recs[0], "n"), 4.0);
    // count rows 0 1 1 1 / 1 2 2 2 / 1 2 2 3 / 1 2 3 4, squares sum to 64
    assert!((num(&recs[0], "ccex_population_riemann") - 64.0 / 16.0 / 64.0).abs() < 1e-12);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "1,2\n3,oops").unwrap();
    let out = copex(&["estimate", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_tables_summary_and_speed() {
    let start = Instant::now();
    let (recs, code) = json_records(&["verify-tables", "--all"]);
    assert!(start.elapsed().as_secs() < 60);
    assert_eq!(code, 0);
    let summary = recs.last().unwrap();
    assert_eq!(summary["subject"], "summary");
    assert_eq!(num(summary, "disagree"), 0.0);
    assert_eq!(num(summary, "cells") as usize, recs.len() - 1);
    let out = copex(&["verify-tables", "no-such-table"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_fgm_sweep_and_shih_louis() {
    let (recs, code) = json_records(&["check", "fgm:--sweep=-1:1:0.25"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 9);
    assert!(recs.iter().all(|r| r["results"]["passed"] == true));
    let (recs, code) = json_records(&["check", "shih-louis:-0.5"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["results"]["quadrant"], "nqd");
}

#[test]
fn check_blest() {
    let (recs, code) = json_records(&["check", "fgm:0.5", "--blest"]);
    assert_eq!(code, 0);
    let r = &recs[0];
    assert!(num(r, "weighted_gap") <= num(r, "blest_bound"));
    assert!((num(r, "eta") - 0.5 / 3.0).abs() < 1e-9);
}

#[test]
fn csv_output_is_long_format() {
    let out = copex(&["--csv", "measure", "fgm:0.5", "--ccex", "--scex"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["record", "command", "subject", "key", "value", "notes", "config"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let values: Vec<f64> = rows
        .iter()
        .filter(|r| &r[3] == "value")
        .map(|r| r[4].parse().unwrap())
        .collect();
    assert_eq!(values.len(), 2);
    assert!((values[0] - values[1]).abs() < 1e-10);
}
