use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn matbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matbeta")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_problem(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn example_4_1_with(from: &str, to: &str) -> String {
    let text = fs::read_to_string(fixture("example_4_1.json")).unwrap();
    assert!(text.contains(from));
    text.replace(from, to)
}

#[test]
fn eval_writes_example_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("value.json");
    let p = fixture("example_4_1.json");
    let o = matbeta(&["eval", "--problem", p.to_str().unwrap(), "--function", "gblmf", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    let want = [[0.0223, -0.0369], [-0.0252, 0.0423]];
    for (i, row) in want.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            let got = v["value"]["re"][i][j].as_f64().unwrap();
            assert!((got - w).abs() <= 1.5e-3, "({i}, {j}): {got}");
        }
    }
    assert_eq!(v["converged"], Value::Bool(true));
    assert!(v["n_evals"].as_u64().unwrap() > 0);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn eval_logmean_of_equal_weights() {
    let dir = tempfile::tempdir().unwrap();
    let text = example_4_1_with("\"a\": 2,\n  \"b\": 4", "\"a\": 3,\n  \"b\": 3");
    let p = write_problem(&dir, "p.json", &text);
    let o = matbeta(&["eval", "--problem", p.to_str().unwrap(), "--function", "logmean"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"].as_f64().unwrap(), 3.0);
}

#[test]
fn every_function_evaluates() {
    let p = fixture("sweep_base.json");
    for f in ["gblmf", "gbmf", "eblmf", "ebmf", "cbmf", "logmean"] {
        let o = matbeta(&["eval", "--problem", p.to_str().unwrap(), "--function", f]);
        assert_eq!(code(&o), 0, "{f}: {}", stderr(&o));
    }
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(fixture("example_4_1.json")).unwrap();
    let truncated = write_problem(&dir, "t.json", &text[..text.len() / 2]);
    let o = matbeta(&["eval", "--problem", truncated.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let p = fixture("example_4_1.json");
    let o = matbeta(&["eval", "--problem", p.to_str().unwrap(), "--function", "beta"]);
    assert_eq!(code(&o), 1);
    let o = matbeta(&["eval", "--problem", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let o = matbeta(&["eval", "--problem", p.to_str().unwrap(), "--abs-tol", "-1"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let o = matbeta(&["frobnicate"]);
    assert_eq!(code(&o), 1);
    let o = matbeta(&["--help"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_commuting_example_passes() {
    let p = fixture("example_4_3.json");
    let o = matbeta(&["verify", "--problem", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for line in stdout(&o).lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        assert!(r["name"].is_string());
        // an errored check carries a NaN residual, written as null
        assert!(r["residual"].is_number() || r["residual"].is_null());
    }
}

#[test]
fn verify_reports_asymmetry_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports.jsonl");
    let p = fixture("example_4_1.json");
    let o = matbeta(&["verify", "--problem", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(out).unwrap();
    let symmetry: Value = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|r| r["name"] == "symmetry")
        .unwrap();
    assert_eq!(symmetry["mode"], "report-only");
    assert!(symmetry["residual"].as_f64().unwrap() > 1e-3);
}

#[test]
fn verify_rejects_negative_eta() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_problem(&dir, "p.json", &example_4_1_with("\"eta\": 0.5", "\"eta\": -1"));
    let o = matbeta(&["verify", "--problem", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("eta"), "{}", stderr(&o));
}

#[test]
fn examples_reproduce_published_values() {
    let o = matbeta(&["examples", "4.3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("values agree"));
    let o = matbeta(&["examples", "4.2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("values differ"));
    let o = matbeta(&["examples"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("Example ").count(), 4);
    let o = matbeta(&["examples", "4.7"]);
    assert_eq!(code(&o), 1);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn degenerate_sweep_is_exact_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = fixture("sweep_degenerate.json");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = matbeta(&[
            "sweep", "--problem", p.to_str().unwrap(), "--param", "a", "--lo", "0", "--hi", "20", "--points", "16",
            "--compare", "gblmf_vs_eblmf", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stderr(&o).contains("warning"), "lo = 0 should be reported");
        fs::read(out).unwrap()
    };
    let (first, second) = (run("a.csv"), run("b.csv"));
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().next().unwrap(), "param,value,norm_gblmf,norm_ref,diff_inf_norm,converged");
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 16);
    assert_eq!(rows[0][1].parse::<f64>().unwrap(), 1.25);
    assert_eq!(rows[15][1].parse::<f64>().unwrap(), 20.0);
    for r in &rows {
        assert_eq!(r[0], "a");
        assert!(r[4].parse::<f64>().unwrap() <= 1e-8, "{r:?}");
        assert_eq!(r[5], "true");
    }
}

#[test]
fn classical_gap_grows_with_the_weight() {
    let p = fixture("sweep_base.json");
    let o = matbeta(&[
        "sweep", "--problem", p.to_str().unwrap(), "--param", "a", "--lo", "0.5", "--hi", "35", "--points", "8",
        "--compare", "gblmf_vs_cbmf",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    let diff = |r: &Vec<String>| r[4].parse::<f64>().unwrap();
    assert!(diff(&rows[7]) > 2.0 * diff(&rows[0]), "{rows:?}");
}

#[test]
fn eta_sweep_is_finite_and_comparison_can_be_omitted() {
    let p = fixture("sweep_base.json");
    let o = matbeta(&[
        "sweep", "--problem", p.to_str().unwrap(), "--param", "eta", "--lo", "0.1", "--hi", "5", "--points", "12",
        "--compare", "none",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for r in csv_rows(&stdout(&o)) {
        assert!(r[2].parse::<f64>().unwrap().is_finite());
        assert!(r[3].is_empty() && r[4].is_empty());
    }
}

#[test]
fn sweep_flags_unconverged_rows_and_bad_specs() {
    let p = fixture("sweep_base.json");
    let p = p.to_str().unwrap();
    // E_{2,1}(−R/x) = cos(√(R/x)) does not decay at the endpoint
    let o = matbeta(&["sweep", "--problem", p, "--param", "phi", "--lo", "1.9", "--hi", "2", "--points", "2"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(stdout(&o).lines().last().unwrap().ends_with(",false"));

    for bad in [
        vec!["--param", "a", "--lo", "2", "--hi", "1", "--points", "3"],
        vec!["--param", "a", "--lo", "1", "--hi", "2", "--points", "1"],
        vec!["--param", "eta", "--lo", "-1", "--hi", "2", "--points", "3"],
        vec!["--param", "phi", "--lo", "1", "--hi", "3", "--points", "3"],
        vec!["--param", "gamma", "--lo", "1", "--hi", "2", "--points", "3"],
        vec!["--param", "a", "--lo", "1", "--hi", "2", "--points", "3", "--compare", "gbmf"],
    ] {
        let mut args = vec!["sweep", "--problem", p];
        args.extend(bad.iter());
        let o = matbeta(&args);
        assert_eq!(code(&o), 1, "{bad:?}: {}", stderr(&o));
    }
}
