use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bf(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balanced-forge"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn mbc_enum_prints_count() {
    let dir = tempfile::tempdir().unwrap();
    let o = bf(&["mbc", "enum", "--players", "3"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "count=6");

    let o = bf(&["mbc", "enum", "--players", "4", "--method", "duality"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("count=42"));
}

#[test]
fn catalog_round_trip_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = bf(&["mbc", "enum", "--players", "4", "--out", "c4.json"], dir.path());
    assert!(o.status.success());
    let o = bf(&["mbc", "check", "--catalog", "c4.json", "--compare"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn mbc_check_single_collection() {
    let dir = tempfile::tempdir().unwrap();
    let o = bf(&["mbc", "check", "--players", "3", "--coalitions", "[{1,2},{1,3},{2,3}]"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("minimal=true"));

    let o = bf(&["mbc", "check", "--players", "3", "--coalitions", "[{1,2},{1,3},{2,3},{1,2,3}]"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("minimal=false"));
}

#[test]
fn hyper_count_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = bf(&["hyper", "count", "--nodes", "3", "--degree", "2", "--size", "3", "--cumulative"], dir.path());
    assert_eq!(stdout(&o).trim(), "8");
    let o = bf(&["hyper", "count", "--nodes", "3", "--degree", "2", "--size", "3", "--table"], dir.path());
    assert_eq!(stdout(&o).trim(), "n,count\n0,0\n1,0\n2,1\n3,7");
}

#[test]
fn hyper_dual_and_decompose() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.hg"), "# triangle\nn=3; edges=[{1,2},{1,3},{2,3}]\n").unwrap();
    let o = bf(&["hyper", "dual", "--in", "t.hg"], dir.path());
    assert_eq!(stdout(&o).trim(), "n=3; edges=[{1,2},{1,3},{2,3}]");

    fs::write(dir.path().join("s.hg"), "n=7; edges=[{1,2,3,4},{1,5,6,7},{3,4,5,6},{3,4,6,7}]\n").unwrap();
    let o = bf(&["--json", "hyper", "decompose", "--in", "s.hg", "--all"], dir.path());
    assert!(o.status.success());
    let parts: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(parts.as_array().unwrap().len() >= 2);
}

#[test]
fn game_core_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = r#"{"n":3,"v":{"{1}":0,"{2}":0,"{3}":0,"{1,2}":1,"{1,3}":1,"{2,3}":1,"{1,2,3}":1}}"#;
    fs::write(dir.path().join("pairs.json"), empty).unwrap();
    let o = bf(&["game", "core", "--game", "pairs.json"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("core: empty"));

    let convex = r#"{"n":3,"v":{"{1}":0,"{2}":0,"{3}":0,"{1,2}":1,"{1,3}":1,"{2,3}":1,"{1,2,3}":3}}"#;
    fs::write(dir.path().join("convex.json"), convex).unwrap();
    bf(&["mbc", "enum", "--players", "3", "--out", "c3.json"], dir.path());
    let o = bf(&["game", "core", "--game", "convex.json", "--catalog", "c3.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn random_game_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    bf(&["game", "random", "--players", "4", "--seed", "9", "--out", "a.json"], dir.path());
    bf(&["game", "random", "--players", "4", "--seed", "9", "--out", "b.json"], dir.path());
    let a = fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.json")).unwrap());
}

#[test]
fn verify_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = bf(&["verify", "example8"], dir.path());
    assert!(o.status.success());
    let o = bf(&["mbc", "enum", "--players", "9"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = bf(&["verify", "nonsense"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
