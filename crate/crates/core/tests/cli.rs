use std::process::Command;

use plie::cli::DimsReport;

fn plie(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_plie")).args(args).env_remove("PLIE_GUARD_MAX_N").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

const QUERY: [&str; 13] = ["dims", "--variant", "delta", "--p", "2", "--gens", "-1,-2", "--max-weight", "5", "--window", "-30:0", "--format", "json"];

#[test]
fn json_output_round_trips_and_is_sorted() {
    let (code, stdout, _) = plie(&[&QUERY[..], &["--basis"]].concat());
    assert_eq!(code, 0);
    let r: DimsReport = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r.generators, vec![-1, -2]);
    assert_eq!(r.degree_window, [-30, 0]);
    assert!(!r.entries.is_empty());
    assert!(r.entries.iter().all(|e| e.dim > 0 && e.basis.as_ref().unwrap().len() as u64 == e.dim));
    let keys: Vec<(u64, i64)> = r.entries.iter().map(|e| (e.weight.iter().sum(), e.degree)).collect();
    assert!(keys.windows(2).all(|k| k[0] <= k[1]));
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", stdout);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let (_, a, _) = plie(&[&QUERY[..], &["--threads", "1"]].concat());
    let (_, b, _) = plie(&[&QUERY[..], &["--threads", "4"]].concat());
    assert_eq!(a, b);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("plie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dims.csv");
    let (code, _, _) = plie(&["dims", "--variant", "einfty", "--p", "3", "--gens", "-1", "--max-weight", "3", "--window", "-20:5", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, stdout, _) = plie(&["dims", "--variant", "einfty", "--p", "3", "--gens", "-1", "--max-weight", "3", "--window", "-20:5", "--format", "csv"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    assert!(stdout.starts_with("variant,p,gens,weight,degree,dim,label\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let (code, _, err) = plie(&["dims", "--variant", "delta", "--p", "6", "--gens", "-1", "--max-weight", "2", "--window", "-5:0"]);
    assert_eq!(code, 2);
    assert!(err.contains("p must be prime"), "{err}");
    assert_eq!(plie(&["dims", "--variant", "delta", "--p", "2", "--gens", "-1", "--max-weight", "2", "--window", "0:-5"]).0, 2);
    assert_eq!(plie(&["frobnicate"]).0, 2);
    assert_eq!(plie(&["dims", "--variant", "delta", "--p", "2", "--gens", "-1", "--max-weight", "100000", "--window", "-5:0"]).0, 3);
    assert_eq!(plie(&["verify", "homology", "--guard-n", "4"]).0, 3);
    let (code, stdout, _) = plie(&["verify", "lyndon"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("ok"));
}

#[test]
fn verify_json_report() {
    let (code, stdout, _) = plie(&["verify", "euler", "--level", "quick", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v[0]["suite"], "euler");
    assert!(v[0]["discrepancies"].as_array().unwrap().is_empty());
}

#[test]
fn documented_queries() {
    let (code, stdout, _) = plie(&["dims", "--variant", "delta", "--p", "2", "--gens", "-1", "--max-weight", "8", "--window", "-20:0", "--format", "json"]);
    assert_eq!(code, 0);
    let r: DimsReport = serde_json::from_str(&stdout).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!((r.entries[0].degree, r.entries[0].dim, r.entries[0].weight.clone()), (-1, 1, vec![1]));

    let (_, stdout, _) = plie(&["dims", "--variant", "einfty", "--p", "2", "--gens", "-1", "--max-weight", "2", "--window", "-6:0", "--basis", "--format", "json"]);
    let r: DimsReport = serde_json::from_str(&stdout).unwrap();
    let mut labels: Vec<Vec<i64>> = r.entries.iter().filter(|e| e.weight == [2]).flat_map(|e| e.basis.clone().unwrap()).map(|b| b.i).collect();
    labels.sort();
    assert_eq!(labels, vec![vec![-4], vec![-3], vec![-2], vec![-1]]);
}
