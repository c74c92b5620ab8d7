use std::path::Path;
use std::process::{Command, Output};

use cotsum::equidist::ScanReport;

fn cotsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotsum")).args(args).env_remove("COTSUM_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(path: &Path) -> (String, Vec<String>) {
    let text = std::fs::read_to_string(path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines().map(str::to_owned);
    let header = lines.next().unwrap();
    (header, lines.collect())
}

#[test]
fn c0_prints_value() {
    let o = cotsum(&["c0", "--r", "1", "--b", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("c0 = 1.92450089729875"), "{text}");

    let o = cotsum(&["c0", "--r", "2", "--b", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c = v["c0"]["value"].as_f64().unwrap();
    assert!((c + 3f64.sqrt() / 9.0).abs() < 1e-15);
}

#[test]
fn c0_rejects_non_coprime() {
    let o = cotsum(&["c0", "--r", "2", "--b", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2/4"));
}

#[test]
fn figure_row_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (b, rows) in [(757u64, 756usize), (946, 420)] {
        let o = cotsum(&["scan", "--b", &b.to_string(), "--figure", "--out", dir.path().to_str().unwrap()]);
        assert!(o.status.success());
        let (header, lines) = csv_rows(&dir.path().join(format!("figure_b{b}.csv")));
        assert_eq!(header, "r,c0");
        assert_eq!(lines.len(), rows);
    }
}

#[test]
fn scan_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = cotsum(&["scan", "--b", "10007", "--kmax", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("scan_b10007.report.json")).unwrap();
    let report: ScanReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.moments_c0.len(), 6);
    assert!(report.ks_distance.is_none());
    let again: ScanReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    for k in ["b", "a0", "a1", "phi", "count", "moments_c0", "moments_q", "ks_distance", "wall_ms"] {
        assert!(text.contains(&format!("\"{k}\"")), "missing {k}");
    }
}

#[test]
fn scan_values_round_trip_through_csv() {
    let dir = tempfile::tempdir().unwrap();
    cotsum(&["scan", "--b", "101", "--figure", "--out", dir.path().to_str().unwrap()]);
    let (_, lines) = csv_rows(&dir.path().join("figure_b101.csv"));
    let o = cotsum(&["c0", "--r", "7", "--b", "101", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row: Vec<&str> = lines[6].split(',').collect();
    assert_eq!(row[0], "7");
    assert_eq!(row[1].parse::<f64>().unwrap(), v["c0"]["value"].as_f64().unwrap());
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cotsum"))
        .args(["scan", "--b", "211", "--format", "json"])
        .env("COTSUM_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("scan_b211.json").exists());
    assert!(dir.path().join("scan_b211.report.json").exists());
}

#[test]
fn unwritable_output_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let o = cotsum(&["scan", "--b", "101", "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn asympt_table() {
    let o = cotsum(&["asympt", "--b-list", "100,200,400,800,1600", "--n", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,exact,main,residual,scaled_residual"));
    let rows: Vec<Vec<f64>> =
        lines.map(|l| l.split(',').map(|f| f.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert!((r[3] - (r[1] - r[2])).abs() < 1e-9 * r[1].abs());
        assert!((r[4] - r[3] * r[0]).abs() < 1e-9 * r[4].abs());
    }
}

#[test]
fn asympt_flags_rows_below_threshold() {
    let o = cotsum(&["asympt", "--b-list", "5,100", "--n", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().ends_with(",,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("b = 5"));
}

#[test]
fn asympt_rejects_unsorted_list() {
    let o = cotsum(&["asympt", "--b-list", "200,100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn asympt_c1_mode() {
    let list: Vec<String> = (101..=2001).step_by(2).map(|b: u64| b.to_string()).collect();
    let o = cotsum(&["asympt", "--c1", "--r", "2", "--b0", "1", "--b-list", &list.join(",")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|f| f.parse().unwrap()).collect();
    assert!((row[2] - row[3]).abs() <= row[5]);
}

#[test]
fn verify_identities_passes() {
    let o = cotsum(&["verify", "--suite", "identities", "--bmax", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("identities: PASS"));
}

#[test]
fn verify_moments_passes() {
    let o = cotsum(&["verify", "--suite", "moments", "--b", "5003"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("tol"));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    assert_eq!(cotsum(&["verify", "--suite", "unknown"]).status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let o = cotsum(&["verify", "--suite", "closed", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["suite"], "closed");
}
