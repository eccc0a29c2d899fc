use decohere_cli::{demos, run_config, validate, CliError};
use serde_json::Value;
use std::fs;
use std::path::Path;
use std::process::Command;

const SPINBATH: &str = r#"{
  "kind": "spinbath_gtfd",
  "seed": 3,
  "model": {
    "n_bath": 4,
    "couplings": [0.3, 0.5, 0.7, 0.9],
    "initial": {"p": [[0.6, 0.0], [0.0, 0.8]], "bath": "plus"}
  },
  "partition": "dec1",
  "times": {"start": 0.0, "end": 20.0, "count": 41}
}"#;

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_decohere"))
}

#[test]
fn well_formed_configs_validate_clean() {
    assert!(validate(SPINBATH).is_empty());
    for name in demos::NAMES {
        assert_eq!(validate(demos::config(name).unwrap()), vec![], "{name}");
    }
}

#[test]
fn missing_couplings_reported_at_its_path() {
    let mut v: Value = serde_json::from_str(SPINBATH).unwrap();
    v["model"].as_object_mut().unwrap().remove("couplings");
    let d = validate(&v.to_string());
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].path, "$.model.couplings");
}

#[test]
fn schema_rules() {
    let cases = [
        (r#""n_bath": 4"#, r#""n_bath": -2"#, "$.model.n_bath"),
        (r#""count": 41"#, r#""count": 5"#, "$.times.count"),
        (r#""end": 20.0"#, r#""end": -1.0"#, "$.times"),
        (r#""partition": "dec1""#, r#""partition": {"dec2": 9}"#, "$.partition.dec2"),
        (r#""seed": 3"#, r#""seed": 3, "extra": 1"#, "$.extra"),
        (r#"[0.6, 0.0], [0.0, 0.8]"#, r#"[0.6, 0.0], [0.0, 0.9]"#, "$.model.initial.p"),
        (r#"0.7, 0.9]"#, r#"0.7]"#, "$.model.couplings"),
    ];
    for (from, to, path) in cases {
        let d = validate(&SPINBATH.replace(from, to));
        assert!(d.iter().any(|x| x.path == path), "{to}: {d:?}");
    }
    let d = validate(r#"{"kind": "other", "seed": 1}"#);
    assert_eq!(d[0].path, "$.kind");
    assert_eq!(validate("{").len(), 1);
}

#[test]
fn dec2_run_reports_no_decoherence() {
    let dir = tempfile::tempdir().unwrap();
    let config = demos::DEC2;
    let report = run_config(config, Path::new("."), dir.path()).unwrap();
    assert_eq!(report.result["verdict"]["status"], "no_decoherence");
    let verdict = json(&dir.path().join("verdict.json"));
    assert_eq!(verdict["status"], "no_decoherence");
    assert!(verdict["equilibrium_values"].is_null());
}

#[test]
fn contraction_run_is_isomorphic() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_config(demos::CONTRACTION, Path::new("."), dir.path()).unwrap();
    let c = json(&dir.path().join("contraction.json"));
    assert_eq!(c["isomorphic"], true);
    assert_eq!(c["epsilon_free"], true);
    assert_eq!(report.result, c);
    let mass = &c["casimirs"][0]["components"];
    assert_eq!(mass[1]["polynomial"], "2 Hbar' M' + -1 P1' P1' + -1 P2' P2' + -1 P3' P3'");
    assert_eq!(mass[1]["is_casimir"], true);
    let alg = decohere_liealg::json::from_json(&fs::read_to_string(dir.path().join("contracted_algebra.json")).unwrap())
        .unwrap();
    assert_eq!(alg.dim(), 11);
}

#[test]
fn repeated_runs_give_identical_csv() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = SPINBATH.replace(r#"[0.3, 0.5, 0.7, 0.9]"#, r#"{"random": {"low": 0.1, "high": 1.0}}"#);
    let cfg = cfg.replace(r#""bath": "plus""#, r#""bath": "random""#);
    run_config(&cfg, Path::new("."), a.path()).unwrap();
    run_config(&cfg, Path::new("."), b.path()).unwrap();
    let x = fs::read(a.path().join("series.csv")).unwrap();
    assert_eq!(x, fs::read(b.path().join("series.csv")).unwrap());
    let header = String::from_utf8(x).unwrap();
    assert!(header.starts_with("t,I,X,Y,Z\n"));
}

#[test]
fn backends_agree() {
    let mut rows = Vec::new();
    for backend in ["analytic", "state_vector", "dense"] {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SPINBATH.replace(r#""partition": "dec1""#, &format!(r#""partition": {{"custom": [0, 2]}}, "backend": "{backend}""#));
        run_config(&cfg, Path::new("."), dir.path()).unwrap();
        let csv = fs::read_to_string(dir.path().join("series.csv")).unwrap();
        let vals: Vec<f64> = csv.lines().skip(1).flat_map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>()).collect();
        rows.push(vals);
    }
    for other in &rows[1..] {
        assert_eq!(other.len(), rows[0].len());
        for (x, y) in rows[0].iter().zip(other) {
            assert!((x - y).abs() < 1e-10);
        }
    }
}

#[test]
fn report_echoes_config_and_lists_every_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    run_config(SPINBATH, Path::new("."), &out).unwrap();
    assert_eq!(fs::read_to_string(out.join("config.json")).unwrap(), SPINBATH);
    let report = json(&out.join("report.json"));
    assert_eq!(report["config_echo"], SPINBATH);
    assert_eq!(report["seed"], 3);
    let mut listed: Vec<String> = report["manifest"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let mut present: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    listed.sort();
    present.sort();
    assert_eq!(listed, present);
}

#[test]
fn mhi_context_from_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // H = diag(1, 1, -1, -1) on two qubits is Z ⊗ I.
    let diag = |v: [f64; 4]| {
        let rows: Vec<Vec<[f64; 2]>> = (0..4)
            .map(|i| (0..4).map(|j| [if i == j { v[i] } else { 0.0 }, 0.0]).collect())
            .collect();
        serde_json::json!({"sig": [2, 2], "matrix": rows}).to_string()
    };
    fs::write(d.join("h.json"), diag([1.0, 1.0, -1.0, -1.0])).unwrap();
    fs::write(d.join("f.json"), diag([2.0, 2.0, 5.0, 5.0])).unwrap();
    fs::write(d.join("zi.json"), diag([1.0, -1.0, 1.0, -1.0])).unwrap();
    let cfg = r#"{
      "kind": "mhi_context", "seed": 0,
      "hamiltonian": "h.json",
      "candidates": [{"label": "f(H)", "file": "f.json"}, {"label": "I Z", "file": "zi.json"}],
      "csp": {"first": [0]},
      "invariance": {"generator": "zi.json", "params": [0.3, 1.1]}
    }"#;
    fs::write(d.join("mhi.json"), cfg).unwrap();
    let out = d.join("out");
    let status = bin().args(["run", "-c"]).arg(d.join("mhi.json")).arg("-o").arg(&out).status().unwrap();
    assert!(status.success());
    let r = json(&out.join("context.json"));
    assert_eq!(r["multiplicities"], serde_json::json!([2, 2]));
    assert_eq!(r["candidates"][0]["actual_valued"], true);
    // I⊗Z commutes with H but is not a function of it.
    assert_eq!(r["candidates"][1]["actual_valued"], false);
    assert_eq!(r["csp"]["decomposable"], true);
    assert_eq!(r["invariance"]["invariant"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(&good, SPINBATH).unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, SPINBATH.replace(r#""n_bath": 4"#, r#""n_bath": -4"#)).unwrap();
    // Valid schema, but a system too large for the Pauli relevant space.
    let heavy = dir.path().join("heavy.json");
    fs::write(&heavy, SPINBATH.replace(r#""partition": "dec1""#, r#""partition": {"custom": [0, 1, 2, 3, 4]}"#)).unwrap();

    let code = |args: &[&std::ffi::OsStr]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["validate".as_ref(), "-c".as_ref(), good.as_os_str()]), 0);
    assert_eq!(code(&["validate".as_ref(), "-c".as_ref(), bad.as_os_str()]), 1);
    let out = dir.path().join("o");
    assert_eq!(code(&["run".as_ref(), "-c".as_ref(), bad.as_os_str(), "-o".as_ref(), out.as_os_str()]), 1);
    assert_eq!(code(&["run".as_ref(), "-c".as_ref(), heavy.as_os_str(), "-o".as_ref(), out.as_os_str()]), 2);
    let missing = dir.path().join("nope.json");
    assert_eq!(code(&["validate".as_ref(), "-c".as_ref(), missing.as_os_str()]), 2);

    let o = bin().args(["validate", "-c"]).arg(&bad).output().unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.model.n_bath"));
    let err = run_config("{}", Path::new("."), &out).unwrap_err();
    assert!(matches!(err, CliError::Validation(_)));
}

#[test]
fn demo_runs_with_thread_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d");
    let o = bin()
        .env("DECOHERE_THREADS", "2")
        .args(["demo", "dec1", "-o"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&out.join("verdict.json"))["status"], "decoheres");
    let p = bin().args(["demo", "dec3", "--print"]).output().unwrap();
    assert_eq!(String::from_utf8(p.stdout).unwrap(), demos::DEC3);
}
