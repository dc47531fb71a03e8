use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gencoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gencoh")).args(args).output().expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn coefficients(json: &str) -> Vec<(f64, f64)> {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["re"].as_f64().unwrap(), c["im"].as_f64().unwrap()))
        .collect()
}

#[test]
fn golden_json_build() {
    let o = gencoh(&["build", "--model", "well", "--family", "gk", "--z", "2+1i"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), std::fs::read_to_string(golden("build_well_gk.json")).unwrap());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["mean_energy"].as_f64().unwrap() - 5.0).abs() < 1e-9);
}

#[test]
fn golden_csv_build_with_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("state.csv");
    let args = [
        "build",
        "--model",
        "x4",
        "--epsilon",
        "0.4",
        "--family",
        "gis",
        "--lambda",
        "2",
        "--z",
        "1.3",
        "--alpha",
        "0.37",
        "--format",
        "csv",
        "--output",
        out.to_str().unwrap(),
    ];
    for _ in 0..2 {
        assert!(gencoh(&args).status.success());
        assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(golden("build_x4_gis.csv")).unwrap());
        assert_eq!(
            std::fs::read(dir.path().join("state.csv.meta.json")).unwrap(),
            std::fs::read(golden("build_x4_gis.csv.meta.json")).unwrap()
        );
    }
}

#[test]
fn golden_sweep_is_ordered() {
    let o = gencoh(&[
        "sweep",
        "--model",
        "well",
        "--z",
        "0.8",
        "--grid",
        "lambda-rect",
        "--re",
        "0.2:-0.2:5",
        "--im",
        "0.5",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), std::fs::read_to_string(golden("sweep_lambda_rect.csv")).unwrap());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| gencoh(args).status.code().unwrap();
    assert_eq!(code(&["build", "--model", "well", "--z", "1"]), 0);
    assert_eq!(code(&["verify", "--suite", "eigenvalue", "--model", "well", "--tol", "eigenvalue=1e-30"]), 1);
    assert_eq!(code(&["build", "--model", "x4", "--z", "1"]), 2);
    assert_eq!(code(&["build", "--model", "well", "--nonsense"]), 2);
    assert_eq!(code(&["build", "--model", "harmonic", "--z", "60"]), 3);
    assert_eq!(code(&["build", "--model", "well", "--family", "gis", "--lambda", "-0.5", "--z", "1"]), 4);
    assert_eq!(code(&["build", "--model", "harmonic", "--family", "kp", "--z", "0.5"]), 2);
}

#[test]
fn minus_one_message() {
    let o = gencoh(&["build", "--model", "well", "--family", "gis", "--lambda", "-1", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("no normalizable eigenstate"), "{err}");
}

#[test]
fn two_thirds_matches_well() {
    let x4 =
        coefficients(&stdout(&gencoh(&["build", "--model", "x4", "--epsilon", "2/3", "--family", "gk", "--z", "1"])));
    let well = coefficients(&stdout(&gencoh(&["build", "--model", "well", "--family", "gk", "--z", "1"])));
    assert_eq!(x4.len(), well.len());
    for (a, b) in x4.iter().zip(&well) {
        assert!((a.0 - b.0).abs() <= 1e-12 && (a.1 - b.1).abs() <= 1e-12);
    }
    // A four-digit ε is a different spectrum; its coefficients sit ~1e−5 away.
    let rounded = coefficients(&stdout(&gencoh(&[
        "build",
        "--model",
        "x4",
        "--epsilon",
        "0.6667",
        "--family",
        "gk",
        "--z",
        "1",
    ])));
    let d = rounded.iter().zip(&well).map(|(a, b)| (a.0 - b.0).abs()).fold(0.0, f64::max);
    assert!(d > 1e-12 && d < 1e-4, "{d}");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "family = \"gk\"\nz = \"2+1i\"\n\n[model]\nkind = \"well\"\nalpha = 0.0\n").unwrap();
    let from_file = gencoh(&["--config", cfg.to_str().unwrap(), "build"]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), std::fs::read_to_string(golden("build_well_gk.json")).unwrap());
    let overridden = gencoh(&["build", "--config", cfg.to_str().unwrap(), "--z", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert!((v["mean_energy"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    std::fs::write(&cfg, "z = \"1\"\nbogus = 3\n").unwrap();
    assert_eq!(gencoh(&["build", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let o = gencoh(&["verify", "--suite", "saturation", "--model", "well", "--lambda", "2", "--z", "1.3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = gencoh(&[
        "verify",
        "--suite",
        "moments",
        "--model",
        "x4",
        "--epsilon",
        "0.4",
        "--n-max",
        "6",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tolerances"]["moments_x4"].as_f64(), Some(1e-5));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["measured"].as_f64().unwrap() < 1e-5));
}

#[test]
fn verify_all_green() {
    for model in [&["--model", "well"][..], &["--model", "x4", "--epsilon", "0.4"], &["--model", "harmonic"]] {
        let mut args = vec!["verify", "--suite", "all"];
        args.extend_from_slice(model);
        let o = gencoh(&args);
        assert!(o.status.success(), "{}", stdout(&o));
    }
}

fn column(csv_text: &str, name: &str) -> Vec<Option<f64>> {
    let mut r = csv::Reader::from_reader(csv_text.as_bytes());
    let idx = r.headers().unwrap().iter().position(|h| h == name).unwrap();
    r.records().map(|rec| rec.unwrap()[idx].parse().ok()).collect()
}

#[test]
fn sweep_time_conserves_energy() {
    let o = gencoh(&[
        "sweep",
        "--model",
        "x4",
        "--epsilon",
        "0.4",
        "--z",
        "1.5-0.5i",
        "--grid",
        "time",
        "--t",
        "0:6.283185307179586:33",
    ]);
    let e = column(&stdout(&o), "mean_energy");
    assert_eq!(e.len(), 33);
    for v in &e {
        assert!((v.unwrap() - e[0].unwrap()).abs() < 1e-12);
    }
}

#[test]
fn sweep_unit_circle_balances_variances() {
    let o =
        gencoh(&["sweep", "--model", "well", "--z", "0.8+0.3i", "--grid", "lambda-polar", "--angle", "-1.4:1.4:15"]);
    let text = stdout(&o);
    for (w, p) in column(&text, "var_w").into_iter().zip(column(&text, "var_p")) {
        assert!((w.unwrap() - p.unwrap()).abs() < 1e-9);
    }
}

#[test]
fn sweep_reports_boundary_crossing() {
    let o = gencoh(&[
        "sweep",
        "--model",
        "well",
        "--z",
        "0.8",
        "--grid",
        "lambda-rect",
        "--re",
        "0.3:-0.3:7",
        "--im",
        "0.5",
    ]);
    assert!(o.status.success());
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<(f64, String)> = r
        .records()
        .map(|rec| {
            let rec = rec.unwrap();
            (rec[1].parse().unwrap(), rec[13].to_string())
        })
        .collect();
    for (re, err) in rows {
        if re > 1e-9 {
            assert!(err.is_empty(), "{re}: {err}");
        } else {
            assert!(err.contains("not normalizable"), "{re}: {err}");
        }
    }
}

#[test]
fn limits_report_passes() {
    let o = gencoh(&["limits", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    let diffs: Vec<f64> =
        v["convergence"].as_array().unwrap().iter().map(|r| r["max_coeff_diff"].as_f64().unwrap()).collect();
    assert!(diffs.windows(2).all(|w| w[1] < w[0]));
}
