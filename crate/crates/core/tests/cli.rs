use std::process::{Command, Output};

fn cdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn design_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane3.json");
    let p = path.to_str().unwrap();
    let o = cdc(&["design", "--plane", "3", "--output", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(13,4,1)"));
    let o = cdc(&["design", "--verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid symmetric design (13,4,1)"));

    let o = cdc(&["simulate", "--scheme", "sd", "--design", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""L_measured": "35/52""#));
}

#[test]
fn broken_design_exits_two_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, r#"{"v":7,"blocks":[[0,1,2],[1,2,4],[2,3,5],[3,4,6],[0,4,5],[1,5,6],[0,2,6]]}"#).unwrap();
    let o = cdc(&["design", "--verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("pair"), "{err}");
}

#[test]
fn simulate_golomb_example() {
    let o = cdc(&["simulate", "--scheme", "ads", "--ads", "0,1", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["L_measured"], "2/3");
    assert_eq!(report["L_formula"], "2/3");
    assert_eq!(report["match"], true);
    assert_eq!(report["decode_ok"], true);
    assert_eq!(report["T"], 2);
}

#[test]
fn simulate_writes_transcript_and_scheme() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.jsonl");
    let s = dir.path().join("s.json");
    let o = cdc(&[
        "simulate", "--scheme", "ads", "--ads", "0,1,3", "--n", "6",
        "--transcript", t.to_str().unwrap(), "--dump-scheme", s.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines = std::fs::read_to_string(&t).unwrap();
    assert_eq!(lines.lines().count(), 18);
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first["tag"], "ads-pairsum");
    let scheme: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&s).unwrap()).unwrap();
    assert_eq!(scheme["placement"][0], serde_json::json!([0, 1, 3]));
}

#[test]
fn exit_codes() {
    assert_eq!(cdc(&["design", "--plane", "6"]).status.code(), Some(3));
    assert_eq!(cdc(&["design", "--ruzsa", "9"]).status.code(), Some(3));
    assert_eq!(cdc(&["simulate", "--scheme", "sd"]).status.code(), Some(64));
    assert_eq!(cdc(&["compare", "--family", "cube", "--min", "1", "--max", "2"]).status.code(), Some(64));
    assert_eq!(cdc(&["simulate", "--scheme", "sd", "--plane", "2", "--scale", "0"]).status.code(), Some(64));
}

#[test]
fn compare_ranges() {
    let o = cdc(&["compare", "--family", "plane", "--min", "2", "--max", "5"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    let o = cdc(&["compare", "--family", "ruzsa", "--min", "5", "--max", "11"]);
    let out = stdout(&o);
    let params: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(params, vec!["5", "7", "11"]);
    let o = cdc(&["compare", "--family", "plane", "--min", "14", "--max", "16"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("warning"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let commands: [&[&str]; 5] = [
        &["design", "--ruzsa", "7"],
        &["simulate", "--scheme", "sd", "--plane", "3", "--seed", "9", "--scale", "2"],
        &["simulate", "--scheme", "ads", "--ruzsa", "5", "--complement"],
        &["compare", "--family", "ruzsa", "--min", "3", "--max", "20", "--decimal", "--jobs", "4"],
        &["check-appendix", "--min-p", "5", "--max-p", "12"],
    ];
    for args in commands {
        let a = cdc(args);
        let b = cdc(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
