use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinorial")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn gamma_json_has_chirality_only_for_even_d() {
    let dir = tempfile::tempdir().unwrap();
    let even = dir.path().join("g4.json");
    let odd = dir.path().join("g5.json");
    assert_eq!(code(&run(&["gamma", "--d", "4", "--json", even.to_str().unwrap(), "--quiet"])), 0);
    assert_eq!(code(&run(&["gamma", "--d", "5", "--json", odd.to_str().unwrap()])), 0);
    let (e, o) = (read_json(&even), read_json(&odd));
    assert_eq!(e["gammas"].as_array().unwrap().len(), 4);
    assert!(!e["chirality"].is_null());
    assert_eq!(o["gammas"].as_array().unwrap().len(), 5);
    assert!(o["chirality"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["nonsense"])), 2);
    assert_eq!(code(&run(&["gamma", "--d", "1"])), 2);
    assert_eq!(code(&run(&["rmatrix", "--symmetry", "sp", "--d", "4", "--pair", "ss"])), 2);
    assert_eq!(code(&run(&["suite", "--grid-scale", "0"])), 2);
    assert_eq!(code(&run(&["equiv", "--left", "so3:ss"])), 2);
}

#[test]
fn verify_exit_code_follows_verdict() {
    assert_eq!(code(&run(&["verify", "rrr", "--d", "4", "--pair", "ss", "--quiet"])), 0);
    assert_eq!(code(&run(&["verify", "trace-fusion", "--d", "4", "--N", "1"])), 0);
    let wrong = run(&["verify", "trace-fusion", "--d", "4", "--N", "1", "--inverse-offset", "1"]);
    assert_eq!(code(&wrong), 1);
    assert!(String::from_utf8_lossy(&wrong.stdout).contains("FAIL"));
}

#[test]
fn so5_spinor_maps_to_sp4_at_doubled_argument() {
    let out = run(&["equiv", "--left", "so5:ss", "--right", "sp4:vv", "--reparam", "2,0"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("monomial g⊗g"));
    let off = run(&["equiv", "--left", "so5:ss", "--right", "sp4:vv", "--reparam", "1,0"]);
    assert_eq!(code(&off), 1);
}

#[test]
fn rtt_pattern_reports_one_based_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rtt.json");
    assert_eq!(code(&run(&["equiv", "rtt-pattern", "--d", "4", "--json", p.to_str().unwrap(), "-q"])), 0);
    let v = read_json(&p);
    let allowed: Vec<(u64, u64)> = v["allowed"].as_array().unwrap().iter().map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap())).collect();
    assert!(allowed.contains(&(1, 4)) && allowed.contains(&(2, 3)) && !allowed.contains(&(1, 2)));
}

#[test]
fn chain_commute_passes() {
    assert_eq!(code(&run(&["chain", "commute", "--d", "4", "--N", "2", "--chirality", "minus"])), 0);
    assert_eq!(code(&run(&["chain", "commute", "--d", "3", "--N", "2", "--aux", "vector"])), 0);
}

fn suite_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())).collect();
    v.sort();
    v
}

#[test]
fn small_suite_is_deterministic_and_schema_shaped() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let ja = dir.path().join("a.json");
    let jb = dir.path().join("b.json");
    for (out, j) in [(&a, &ja), (&b, &jb)] {
        let o = run(&["suite", "--dims", "3", "--output-dir", out.to_str().unwrap(), "--json", j.to_str().unwrap(), "-q"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let files = suite_files(&a);
    assert_eq!(files.len(), 12);
    assert!(files.iter().any(|(n, _)| n == "summary.txt"));
    assert_eq!(files, suite_files(&b));
    assert_eq!(fs::read(&ja).unwrap(), fs::read(&jb).unwrap());

    let v = read_json(&ja);
    assert_eq!(v["pass"], Value::Bool(true));
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    for (i, c) in criteria.iter().enumerate() {
        assert_eq!(c["id"].as_u64(), Some(i as u64 + 1));
        assert!(c["title"].is_string() && c["pass"].is_boolean());
        for k in c["checks"].as_array().unwrap() {
            assert!(k["name"].is_string() && k["pass"].is_boolean() && k["detail"].is_string());
        }
    }
}

#[test]
fn corrupted_fixture_fails_the_suite_and_names_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/so3_full.json")).unwrap();
    let broken = text.replacen(r#"[1, 2, 2, 1, ["1"]]"#, r#"[1, 2, 2, 1, ["3"]]"#, 1);
    assert_ne!(text, broken);
    fs::write(dir.path().join("so3_full.json"), broken).unwrap();
    let o = run(&["suite", "--dims", "3", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("failing: so3_full table"), "{stdout}");
}

#[test]
fn default_suite_passes() {
    let o = run(&["suite"]);
    println!("{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(code(&o), 0);
}
