use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn extropy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extropy"))
        .args(args)
        .env_remove("EXTROPY_GAMMA")
        .env_remove("EXTROPY_ALPHA")
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON line"))
        .collect()
}

fn nums(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn close(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn measure_symmetric_binary() {
    let out = extropy(&["--format", "json", "measure", "--p", "0.5,0.5", "--alpha", "2", "--measure", "tsallis-extropy"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["value"].as_f64().unwrap(), 0.5);
    assert_eq!(recs[0]["measure"], "tsallis-extropy");
}

#[test]
fn measure_tabulated_value() {
    let out = extropy(&["--format", "json", "measure", "--p", "0.3058,0.4148,0.2794", "--alpha", "0.5", "--measure", "tsallis-extropy"]);
    let v = json_lines(&out)[0]["value"].as_f64().unwrap();
    assert!((v - 0.8941).abs() <= 1e-4, "{v}");
}

#[test]
fn measure_one_record_per_pair() {
    let out = extropy(&[
        "--format", "json", "measure", "--p", "0.2,0.3,0.5", "--alpha", "0.5,1,3",
        "--measure", "shannon-entropy,tsallis-entropy,sum-identity-gap",
    ]);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 1 + 3 + 3);
    assert!(recs[0]["alpha"].is_null());
    for r in &recs[4..] {
        assert!(r["value"].as_f64().unwrap().abs() < 1e-10);
    }
}

#[test]
fn measure_rejects_bad_sum() {
    let out = extropy(&["measure", "--p", "0.3,0.3,0.3", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("sum"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn measure_rejects_out_of_range() {
    let out = extropy(&["measure", "--p", "1.2,-0.2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("outside [0, 1]"), "{}", stderr(&out));
}

#[test]
fn measure_rejects_bad_alpha_and_flags() {
    assert_eq!(extropy(&["measure", "--p", "1", "--alpha", "0"]).status.code(), Some(1));
    assert_eq!(extropy(&["measure", "--p", "1", "--alpha", "x"]).status.code(), Some(1));
    assert_eq!(extropy(&["measure"]).status.code(), Some(1));
    assert_eq!(extropy(&["bogus"]).status.code(), Some(1));
}

#[test]
fn measure_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "0.25 0.25\n0.5").unwrap();
    let path = f.path().to_str().unwrap();
    let out = extropy(&["--format", "json", "measure", "--p-file", path, "--measure", "uniform-tsallis-extropy", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_lines(&out)[0]["value"].as_f64().unwrap();
    assert!((v - 2.0 / 3.0).abs() < 1e-15);
    let missing = extropy(&["measure", "--p-file", "/no/such/file"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn text_output_uses_four_decimals() {
    let out = extropy(&["measure", "--p", "0.5,0.5", "--alpha", "2", "--measure", "tsallis-extropy"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# measure\n"), "{text}");
    assert!(text.contains("0.5000"), "{text}");
}

#[test]
fn classify_worked_sample() {
    let out = extropy(&[
        "--format", "json", "classify", "--policy", "reference", "--sample", "6.1,3.0,4.9,1.8",
        "--gamma", "5", "--alpha", "0.5,2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 2);
    for r in &recs {
        assert_eq!(r["predicted"], "Vi");
        assert_eq!(r["tie"], false);
    }
    // 50-digit reference values for alpha = 2
    assert!(close(
        &nums(&recs[1]["fused"]),
        &[0.210_585_982_860_075_5, 0.393_811_855_750_899_8, 0.395_602_161_389_024_7],
        1e-12
    ));
    assert!(close(
        &[recs[1]["w_SL"].as_f64().unwrap(), recs[1]["w_PW"].as_f64().unwrap()],
        &[0.245_365_042_312_574_8, 0.255_303_734_095_063_5],
        1e-12
    ));
}

#[test]
fn classify_tabulated_sample() {
    let out = extropy(&[
        "--format", "json", "classify", "--policy", "reference", "--sample", "5.9,3.0,5.1,1.8", "--alpha", "0.5",
    ]);
    let r = &json_lines(&out)[0];
    assert!(close(&nums(&r["p_SL"]), &[0.3058, 0.4148, 0.2794], 1e-4));
    assert!(close(&nums(&r["p_PL"]), &[0.1391, 0.3801, 0.4808], 1e-4));
    assert!((r["js_SL"].as_f64().unwrap() - 0.8941).abs() <= 1e-4);
    assert!(close(&nums(&r["fused"]), &[0.2182, 0.3800, 0.4018], 1e-4));
    assert_eq!(r["predicted"], "Vi");
}

#[test]
fn classify_by_id() {
    let out = extropy(&["--format", "json", "classify", "--id", "149", "--alpha", "1"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["truth"], "Vi");
    assert_eq!(r["id"], 149);
    assert!(close(&nums(&r["sample"]), &[5.9, 3.0, 5.1, 1.8], 0.0));
}

#[test]
fn classify_unknown_id() {
    let out = extropy(&["classify", "--id", "150"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("out of range"));
}

#[test]
fn classify_wrong_sample_length() {
    let out = extropy(&["classify", "--sample", "1,2,3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_is_byte_identical() {
    let args = ["--format", "json", "classify", "--sample", "6.1,3.0,4.9,1.8"];
    assert_eq!(extropy(&args).stdout, extropy(&args).stdout);
}

#[test]
fn evaluate_default_grid() {
    let out = extropy(&["--format", "json", "evaluate"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs = json_lines(&out);
    let reports: Vec<&Value> = recs.iter().filter(|r| r["record"] == "evaluate").collect();
    let alphas: Vec<f64> = reports.iter().map(|r| r["alpha"].as_f64().unwrap()).collect();
    assert_eq!(alphas, [0.5, 0.7, 1.0, 1.5, 2.0]);
    let lit: Vec<f64> = recs
        .iter()
        .filter(|r| r["source"] == "literature")
        .map(|r| r["overall"].as_f64().unwrap())
        .collect();
    assert_eq!(lit, [93.33, 94.0]);
    assert_eq!(recs.last().unwrap()["record"], "comparison");
}

#[test]
fn evaluate_reference_model() {
    let out = extropy(&["--format", "json", "evaluate", "--policy", "reference", "--alpha", "1"]);
    let r = &json_lines(&out)[0];
    assert_eq!(r["correct"], 142);
    assert_eq!(r["rate_Se"], 1.0);
    assert_eq!(r["rate_Ve"], 0.98);
    assert_eq!(r["rate_Vi"], 0.86);
}

#[test]
fn evaluate_small_training_set_and_per_sample() {
    let out = extropy(&["--format", "json", "evaluate", "--per-class", "10", "--alpha", "1.5", "--per-sample"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    assert_eq!(recs.iter().filter(|r| r["record"] == "sample").count(), 150);
    assert_eq!(recs[0]["policy"], "first-10");
}

#[test]
fn evaluate_random_policy_is_seeded() {
    let args = ["--format", "json", "evaluate", "--policy", "random", "--seed", "7", "--alpha", "0.5"];
    assert_eq!(extropy(&args).stdout, extropy(&args).stdout);
}

#[test]
fn evaluate_dataset_errors() {
    assert_eq!(extropy(&["evaluate", "--dataset", "/no/such/iris.data"]).status.code(), Some(3));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "5.1,3.5,1.4,0.2,Iris-setosa\n5.1,3.5,1.4,0.2,Iris-bogus").unwrap();
    let out = extropy(&["evaluate", "--dataset", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let empty = tempfile::NamedTempFile::new().unwrap();
    let out = extropy(&["evaluate", "--dataset", empty.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("warning: expected 150 samples"), "{}", stderr(&out));
}

#[test]
fn env_defaults_and_flag_precedence() {
    let run = |gamma_env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_extropy"));
        c.args(args).env_remove("EXTROPY_ALPHA").env_remove("EXTROPY_GAMMA");
        if let Some(g) = gamma_env {
            c.env("EXTROPY_GAMMA", g).env("EXTROPY_ALPHA", "0.7,3");
        }
        json_lines(&c.output().unwrap())
    };
    let base = ["--format", "json", "classify", "--id", "0"];
    let defaults = run(None, &base);
    assert_eq!(defaults.len(), 5);
    assert_eq!(defaults[0]["gamma"], 5.0);
    let from_env = run(Some("2"), &base);
    assert_eq!(from_env.len(), 2);
    assert_eq!(from_env[0]["gamma"], 2.0);
    assert_eq!(from_env[1]["alpha"], 3.0);
    let mut flagged = base.to_vec();
    flagged.extend(["--gamma", "9", "--alpha", "1"]);
    let from_flag = run(Some("2"), &flagged);
    assert_eq!(from_flag.len(), 1);
    assert_eq!(from_flag[0]["gamma"], 9.0);
}

#[test]
fn verify_small_sweep_passes_with_curve() {
    let out = extropy(&["--format", "json", "verify", "--n-min", "3", "--n-max", "100", "--points", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs = json_lines(&out);
    let props: Vec<&Value> = recs.iter().filter(|r| r["record"] == "property").collect();
    assert_eq!(props.len(), 12);
    assert!(props.iter().all(|p| p["passed"] == true));
    let curve: Vec<&Value> = recs.iter().filter(|r| r["record"] == "curve").collect();
    assert_eq!(curve.len(), 98);
    for c in curve {
        let (l, m, u) = (c["lower"].as_f64().unwrap(), c["middle"].as_f64().unwrap(), c["upper"].as_f64().unwrap());
        assert!(l < m && m < u);
    }
}

#[test]
fn verify_reports_counterexample_on_fault() {
    let out = extropy(&["verify", "--n-max", "50", "--points", "5", "--no-curve", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("property violation") && err.contains("upper_bound: p="), "{err}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("false"));
}

#[test]
fn json_lines_round_trip() {
    for args in [
        vec!["--format", "json", "measure", "--p", "0.1,0.9", "--measure", "binary-tsallis,entropy-extropy-difference"],
        vec!["--format", "json", "classify", "--id", "77"],
        vec!["--format", "json", "evaluate", "--alpha", "2"],
        vec!["--format", "json", "verify", "--points", "3", "--n-max", "20"],
    ] {
        let out = extropy(&args);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(!text.is_empty());
        for line in text.lines() {
            let v: Value = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&v).unwrap(), line);
        }
    }
}

#[test]
fn help_exits_zero() {
    let out = extropy(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
}
