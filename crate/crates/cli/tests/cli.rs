use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lp_lab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lp-lab")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

const SMALL: &str = "6 3\n2 3\n2 2 1 2 1 1\n3 3 3\n1 2\n1 3\n1 0\n2 3\n2 0\n3 0\n1 2 3\n1 4 5\n2 4 6\n";

fn workdir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("small.alist"), SMALL).unwrap();
    dir
}

#[test]
fn beta_three() {
    let dir = workdir();
    let o = lp_lab(&["calkin", "beta", "-d", "3", "--format", "json"], dir.path());
    assert!(o.status.success());
    let beta = json(&o)["beta"].as_f64().unwrap();
    assert!((beta - 0.8895).abs() < 1e-3, "{beta}");
}

#[test]
fn all_ones_decodes() {
    let dir = workdir();
    let o = lp_lab(&["decode", "-g", "small.alist", "--gamma", "1,1,1,1,1,1", "--ml"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["lp"]["status"], "Success");
    assert_eq!(v["ml"]["minimizers"].as_array().unwrap().len(), 1);
    let o = lp_lab(&["decode", "-g", "small.alist", "--word", "111000", "--float"], dir.path());
    assert_eq!(json(&o)["lp"]["status"], "Failure");
}

#[test]
fn zero_crossover_has_zero_wer() {
    let dir = workdir();
    let o = lp_lab(&["sim", "wer", "-g", "small.alist", "--epsilon", "0", "--trials", "40"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[4], "0");
    assert_eq!(row[5].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn exit_codes() {
    let dir = workdir();
    assert_eq!(lp_lab(&["decode", "--bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(lp_lab(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(lp_lab(&["decode", "-g", "small.alist", "--gamma", "1,1"], dir.path()).status.code(), Some(2));
    assert_eq!(lp_lab(&["augment", "-g", "small.alist", "-k", "3", "--format", "csv"], dir.path()).status.code(), Some(2));

    let o = Command::new(env!("CARGO_BIN_EXE_lp-lab"))
        .args(["augment", "-g", "small.alist"])
        .env("LP_LAB_WORK_CAP", "2")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dual span enumeration"));

    assert_eq!(lp_lab(&["calkin", "beta", "-d", "40"], dir.path()).status.code(), Some(4));

    // The fully redundant variant of a 12 x 9 graph is far too large to solve.
    assert!(lp_lab(&["--seed", "1", "--out", "g.alist", "gen", "-n", "12", "-m", "9", "-d", "3"], dir.path()).status.success());
    let o = lp_lab(&["sim", "scan", "-g", "g.alist", "--grid", "0.02", "--trials", "10"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fundamental polytope rows"));
}

#[test]
fn replay_is_byte_identical() {
    let dir = workdir();
    let o = lp_lab(
        &["--seed", "11", "--out", "scan.csv", "sim", "scan", "-g", "small.alist", "--grid", "0.05,0.2", "--ks", "3", "--trials", "60"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("scan.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["master_seed"], 11);
    assert_eq!(manifest["graph_sha256"].as_str().unwrap().len(), 64);

    let o = lp_lab(&["--replay", "scan.csv.manifest.json", "--out", "again.csv", "--jobs", "1"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let a = std::fs::read(dir.path().join("scan.csv")).unwrap();
    let b = std::fs::read(dir.path().join("again.csv")).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 2 * 3);

    std::fs::write(dir.path().join("small.alist"), SMALL.replace("2 4 6\n", "2 4 6\n\n")).unwrap();
    let o = lp_lab(&["--replay", "scan.csv.manifest.json"], dir.path());
    assert_eq!(o.status.code(), Some(2), "changed graph file must be refused");
}

#[test]
fn generated_graphs_round_trip() {
    let dir = workdir();
    let o = lp_lab(&["--seed", "4", "--format", "json", "--out", "g.json", "gen", "-n", "8", "-m", "6", "-d", "3"], dir.path());
    assert!(o.status.success());
    let o = lp_lab(&["--format", "json", "augment", "-g", "g.json", "-k", "4"], dir.path());
    let aug = json(&o);
    assert_eq!(aug["n"], 8);
    assert!(aug["checks"].as_array().unwrap().len() >= 6);
    let o = lp_lab(&["diag", "-g", "g.json", "-s", "2", "-k", "1"], dir.path());
    assert_eq!(json(&o)["n"], 8);
}

#[test]
fn witness_round_trip() {
    let dir = workdir();
    let o = lp_lab(&["witness", "find", "-g", "small.alist", "--word", "100000", "--out", "w.json"], dir.path());
    assert!(o.status.success());
    let o = lp_lab(&["witness", "verify", "-g", "small.alist", "--witness", "w.json"], dir.path());
    assert_eq!(json(&o)["dual_witness"], true);
    for kind in ["hyperflow", "acyclic", "narrow"] {
        let o = lp_lab(&["witness", "find", "-g", "small.alist", "--word", "100000", "--kind", kind], dir.path());
        assert_eq!(json(&o)["found"], true, "{kind}");
    }
    let o = lp_lab(&["witness", "primitivize", "-g", "small.alist", "--word", "100000", "--trace"], dir.path());
    let v = json(&o);
    assert_eq!(v["verified"], true);
    assert_eq!(v["trace"].as_array().unwrap().len() as u64, v["switches"].as_u64().unwrap());
}

#[test]
fn vertices_report() {
    let dir = workdir();
    let o = lp_lab(&["vertices", "-g", "small.alist", "--alpha-count", "2"], dir.path());
    let v = json(&o);
    assert_eq!(v["count"].as_u64().unwrap(), v["vertices"].as_array().unwrap().len() as u64);
    assert!(v["fractional"].as_u64().unwrap() > 0);
}
