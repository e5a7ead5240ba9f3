use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn rinf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rinf")).args(args).output().expect("run rinf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rinf-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn degree_orientable_genus_two() {
    let o = rinf(&["degree", "--orientable", "--genus", "2", "--samples", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "degree: 4"));
}

#[test]
fn degree_nonorientable_genus_three() {
    let o = rinf(&["degree", "--nonorientable", "--genus", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "degree: 4"));
}

#[test]
fn torus_is_invalid_input() {
    let o = rinf(&["degree", "--orientable", "--genus", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("torus"));
}

#[test]
fn missing_genus_is_invalid_input() {
    assert_eq!(rinf(&["degree"]).status.code(), Some(1));
    assert_eq!(rinf(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn resource_caps_exit_two() {
    let o = rinf(&["witness", "--nonorientable", "--genus", "3", "--max-m", "100"]);
    assert_eq!(o.status.code(), Some(2));
    let o = rinf(&["crosscheck", "--rank", "2", "--class", "2", "--modulus", "5", "--max-order", "10", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_messages() {
    let dir = scratch("check");
    let s2 = dir.join("s2.txt");
    fs::write(&s2, "4 4\n1 2 0 0\n1 1 0 0\n0 0 1 2\n0 0 1 1\n").unwrap();
    let s = s2.to_str().unwrap();
    let o = rinf(&["check", "--matrix", s, "--class", "3"]);
    assert!(stdout(&o).contains("R finite (no eigenvalue 1 through degree 3)"));
    let o = rinf(&["check", "--matrix", s, "--class", "4"]);
    assert!(stdout(&o).contains("R infinite (degree 4)"));

    let id = dir.join("id.json");
    fs::write(&id, "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]").unwrap();
    let o = rinf(&["check", "--matrix", id.to_str().unwrap()]);
    assert!(stdout(&o).contains("R infinite (degree 1)"));

    let bad = dir.join("bad.txt");
    fs::write(&bad, "4 4\n2 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n").unwrap();
    let o = rinf(&["check", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not admissible"));
}

#[test]
fn lie_dims_and_padding() {
    let o = rinf(&["lie-dims", "--rank", "4", "--class", "3"]);
    assert_eq!(stdout(&o), "[4,6,20]\n");
    let o = rinf(&["padding", "--rank", "2", "--class", "2", "--n", "2"]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "f=4"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("z = ")));
}

#[test]
fn json_is_reproducible() {
    let args = ["degree", "--genus", "2", "--samples", "6", "--seed", "17", "--format", "json"];
    let (a, b) = (rinf(&args), rinf(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 17);
    assert_eq!(v["result"]["samples"]["seed"], 17);
    let s = ["sample", "--genus", "3", "--samples", "3", "--seed", "4", "--format", "json"];
    assert_eq!(rinf(&s).stdout, rinf(&s).stdout);
}

#[test]
fn certificates_reverify() {
    let dir = scratch("certs");
    let runs: [&[&str]; 4] = [
        &["degree", "--genus", "2", "--samples", "4", "--format", "json"],
        &["degree", "--nonorientable", "--genus", "4", "--format", "json"],
        &["witness", "--nonorientable", "--genus", "3", "--class", "3", "--format", "json"],
        &["witness", "--orientable", "--genus", "2", "--format", "json"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let o = rinf(args);
        assert!(o.status.success(), "{args:?}");
        let path = dir.join(format!("cert{i}.json"));
        fs::write(&path, &o.stdout).unwrap();
        let check = rinf(&["check", "--certificate", path.to_str().unwrap()]);
        assert!(check.status.success(), "{args:?}: {}", String::from_utf8_lossy(&check.stderr));
        assert!(stdout(&check).starts_with("certificate verified"));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = scratch("tamper");
    let o = rinf(&["witness", "--nonorientable", "--genus", "3", "--format", "json"]);
    let text = stdout(&o).replacen("\"m\": 512", "\"m\": 513", 1);
    assert!(text.contains("513"));
    let path = dir.join("w.json");
    fs::write(&path, text).unwrap();
    let check = rinf(&["check", "--certificate", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn table_cache_round_trip() {
    let dir = scratch("cache");
    let d = dir.to_str().unwrap();
    let first = rinf(&["degree", "--genus", "2", "--samples", "2", "--cache-dir", d, "--format", "json"]);
    assert!(fs::read_dir(&dir).unwrap().any(|e| e.unwrap().file_name().to_string_lossy().starts_with("hall-r4-c4")));
    let second = rinf(&["degree", "--genus", "2", "--samples", "2", "--cache-dir", d, "--format", "json"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn sample_signs() {
    let o = rinf(&["sample", "--genus", "2", "--samples", "2", "--sign", "none"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("None").count(), 2);
    let o = rinf(&["sample", "--genus", "2", "--samples", "2", "--sign", "plus"]);
    assert_eq!(stdout(&o).matches("Plus").count(), 2);
}
