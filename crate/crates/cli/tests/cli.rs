use std::path::Path;
use std::process::{Command, Output};

fn starph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starph"))
        .args(args)
        .env_remove("STARPH_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn ascii_arrangement_matches_golden() {
    let o = starph(&["arrangement", "--lengths", "10,3,2,1", "--format", "ascii", "--overlay", "trapezoid:1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text, golden("arrangement_k4.txt"));
    let grid: Vec<&str> = text.lines().skip(1).take(20).collect();
    assert!(grid.iter().all(|l| l.len() == 41 && l.starts_with('|')));
}

#[test]
fn ascii_ranks_match_golden() {
    let o = starph(&["ranks", "--lengths", "40,1,2,3,4", "--format", "ascii"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("ranks_k5.txt"));
}

#[test]
fn svg_is_well_formed() {
    let o = starph(&["arrangement", "--lengths", "10,3,2,1", "--format", "svg", "--overlay", "trapezoid:1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
    let class = |c: &str| doc.descendants().filter(|n| n.attribute("class") == Some(c)).count();
    assert_eq!(class("vertical"), 3);
    assert_eq!(class("diagonal"), 1);
    assert_eq!(class("rank"), 8);
    assert_eq!(class("overlay"), 1);
}

#[test]
fn arrangement_json_lists_chambers_and_verticals() {
    let o = starph(&["arrangement", "--lengths", "10,3,2,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chambers"].as_array().unwrap().len(), 8);
    assert_eq!(v["verticals"].as_array().unwrap().len(), 3);
    assert_eq!(v["verticals"][0]["r"], "1/1");
}

#[test]
fn verify_is_deterministic() {
    let a = starph(&["verify", "--k", "4", "--trials", "2", "--seed", "7"]);
    let b = starph(&["verify", "--k", "4", "--trials", "2", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_with_oracle_passes_at_k4() {
    let o = starph(&["verify", "--k", "4", "--trials", "1", "--with-oracle"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["results"].as_array().unwrap().iter().any(|r| r["check"] == "oracle"));
}

#[test]
fn zero_denominator_is_a_usage_error() {
    let o = starph(&["ranks", "--lengths", "10,3/0,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero denominator"));
}

#[test]
fn scenario_errors_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"k\": 3,\n  \"lengths\": [\"3\", \"2\", \"1\"],\n  \"extra\": true\n}\n").unwrap();
    let o = starph(&["ranks", "--scenario", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json:4:"), "{err}");
}

#[test]
fn equal_tail_decomposition_at_k6() {
    let o = starph(&["decompose", "--lengths", "10,1,1,1,1,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let summands: Vec<(String, u64)> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["kind"].as_str().unwrap().to_string(), s["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(summands, [("rectangle".to_string(), 11), ("trapezoid".to_string(), 8)]);
    assert_eq!(v["verification"]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn scenario_file_with_queries_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(
        &path,
        r#"{"k": 4, "lengths": ["10", "1", "1", "1"], "queries": [{"r": "1/2", "L": "1/4"}],
            "sweep": {"bands": [0]}}"#,
    )
    .unwrap();
    let o = starph(&["ranks", "--scenario", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ranks: Vec<u64> = v["chambers"].as_array().unwrap().iter().map(|c| c["euler_rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [5, 1]);
    assert_eq!(v["queries"][0]["euler_rank"], 1);
}

#[test]
fn starph_out_overrides_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_starph"))
        .args(["arrangement", "--lengths", "10,3,2,1", "--format", "svg", "--out", "elsewhere/diagram.svg"])
        .env("STARPH_OUT", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(dir.path().join("diagram.svg").exists());
}

#[test]
fn oracle_check_rejects_large_k() {
    let o = starph(&["oracle-check", "--lengths", "10,6,5,4,3,2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = starph(&["oracle-check", "--lengths", "10,3,2,1"]);
    assert!(o.status.success());
}

#[test]
fn unknown_format_is_rejected() {
    let o = starph(&["arrangement", "--lengths", "10,3,2,1", "--format", "png"]);
    assert_eq!(o.status.code(), Some(2));
}
