use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qcr_core::formulas::{alpha0, tau3_family};
use qcr_core::io::load_state;
use qcr_core::QuantumState;

fn qcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn state_writes_density_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rho.csv");
    let o = qcr(&["state", "--family", "rho_ghz_w", "--p", "0.5", "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = rows(&out);
    assert_eq!(table[0], ["row", "col", "re", "im"]);
    assert_eq!(table.len(), 65);
    match load_state(&out).unwrap() {
        QuantumState::Mixed(rho) => {
            assert_eq!(rho.dim(), 8);
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
        QuantumState::Pure(_) => panic!("expected a density matrix"),
    }
}

#[test]
fn state_writes_purified_smolin() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("psi6.csv");
    let o = qcr(&["state", "--family", "psi6", "--p", "1.0", "--out", path_str(&out)]);
    assert!(o.status.success());
    let table = rows(&out);
    assert_eq!(table[0], ["index", "re", "im"]);
    assert_eq!(table.len(), 65);
    let magnitudes: Vec<f64> = table[1..]
        .iter()
        .map(|r| r[1].parse::<f64>().unwrap().hypot(r[2].parse::<f64>().unwrap()))
        .filter(|m| *m > 1e-12)
        .collect();
    assert_eq!(magnitudes.len(), 16);
    assert!(magnitudes.iter().all(|m| (m - 0.25).abs() < 1e-12));
}

#[test]
fn saved_states_reload_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a.csv");
    let o = qcr(&["state", "--family", "phi_abd", "--alpha", "0.6", "--p", "0.3", "--phi", "2.1", "--out", path_str(&first)]);
    assert!(o.status.success());
    let state = load_state(&first).unwrap();
    let second = dir.path().join("b.csv");
    qcr_core::io::save_state(&second, &state).unwrap();
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    assert_eq!(load_state(&second).unwrap(), state);
}

#[test]
fn state_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = qcr(&["state", "--family", "smolin", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcr(&["state", "--family", "smolin", "--p", "1.5", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcr(&["state", "--family", "nope", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcr(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_endpoints_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |out: &Path| {
        qcr(&[
            "sweep", "--family", "ghz_w", "--steps", "11", "--seed", "7",
            "--measures", "concurrence_sq_AB,one_tangle_roof_A,e_ms_psi4",
            "--out", path_str(out),
        ])
    };
    assert!(args(&a).status.success());
    assert!(args(&b).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let table = rows(&a);
    assert_eq!(table[0], ["param", "concurrence_sq_AB", "one_tangle_roof_A", "e_ms_psi4"]);
    assert_eq!(table.len(), 12);
    let last: Vec<f64> = table[11].iter().map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert_eq!(last[1], 0.0);
    assert!((last[3] - 0.75).abs() < 1e-12);
}

#[test]
fn sweep_wn_mix_with_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"restarts": 4, "max_iterations": 500, "seed": 3}"#).unwrap();
    let out = dir.path().join("wn.csv");
    let o = qcr(&[
        "sweep", "--family", "wn_mix", "--n", "4", "--from", "0.2", "--to", "0.6", "--steps", "5",
        "--config", path_str(&cfg), "--out", path_str(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = rows(&out);
    assert_eq!(table[0], ["param", "concurrence_sq_A1A2", "one_tangle_roof_A1", "negativity_A1"]);
    // alpha = 0.2 = 1/(N+1) for N = 4
    let first: Vec<f64> = table[1].iter().map(|x| x.parse().unwrap()).collect();
    assert_eq!(first[0], 0.2);
    assert!(first[1].abs() < 1e-10);
    assert!((first[2] - 0.6).abs() < 1e-3);
}

#[test]
fn sweep_surface_preset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2.csv");
    let o = qcr(&["sweep", "--preset", "fig2", "--out", path_str(&out)]);
    assert!(o.status.success());
    let table = rows(&out);
    assert_eq!(table[0], ["alpha", "p", "tau3"]);
    assert_eq!(table.len(), 41 * 41 + 1);
    for r in &table[1..] {
        let v: Vec<f64> = r.iter().map(|x| x.parse().unwrap()).collect();
        assert_eq!(v[2], tau3_family(v[0], v[1], 0.0));
    }
    assert!(tau3_family(alpha0(0.5), 0.5, 0.0) <= 1e-9);
}

#[test]
fn sweep_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = qcr(&["sweep", "--family", "ghz_w", "--measures", "bogus", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcr(&["sweep", "--family", "ghz_w", "--steps", "1", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcr(&["sweep", "--family", "ghz_w", "--from", "0.8", "--to", "0.2", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"restarts": 4, "typo": 1}"#).unwrap();
    let o = qcr(&["sweep", "--family", "smolin", "--config", path_str(&cfg), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcr(&["sweep", "--preset", "fig1", "--family", "smolin"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_three_ledgered_discrepancies() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let o = qcr(&["verify", "--out", path_str(&json)]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("0 failed, 3 ledgered"), "{text}");
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let count = |s: &str| checks.iter().filter(|c| c["status"] == s).count();
    assert_eq!(count("pass"), 10);
    assert_eq!(count("ledgered"), 3);
    assert_eq!(count("fail"), 0);
}
