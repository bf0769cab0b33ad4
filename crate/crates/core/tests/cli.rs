use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use srgcheck::replay::{parse_record_stream, render_record_stream};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_srgcheck"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn srgcheck")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_flagship() {
    let o = run(&["analyze", "1911", "270", "105", "27"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in [
        "spectrum 270, 81^65, (-3)^1845",
        "smallest eigenvalue -3",
        "Delsarte 91",
        "clique cap 32",
        "coclique cap 270",
    ] {
        assert!(out.contains(line), "missing {line:?} in\n{out}");
    }
}

#[test]
fn analyze_open_table_row() {
    let o = run(&["analyze", "288", "105", "52", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("spectrum 105, 25^27, (-3)^260"));
}

#[test]
fn analyze_irrational_spectrum_is_reported_not_fatal() {
    let o = run(&["analyze", "5", "2", "0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("irrational eigenvalues"));
}

#[test]
fn analyze_rejects_bad_input() {
    assert_eq!(
        run(&["analyze", "10", "3", "0", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", "10", "x", "0", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["analyze", "10", "3"]).status.code(), Some(2));
}

#[test]
fn scan_open_table() {
    let o = run(&["scan", data("table1.csv").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines().last(),
        Some("12 rows: 12 spectrum-ok, 0 rejected, 0 row errors")
    );

    let o = run(&[
        "--format",
        "records",
        "scan",
        data("table1.csv").to_str().unwrap(),
    ]);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[0]["analysis"]["params"], "(288,105,52,30)");
    assert_eq!(lines[0]["analysis"]["spectrum"]["f"], 27);
    assert_eq!(lines[12]["record"], "scan_summary");
}

#[test]
fn scan_reports_malformed_rows_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let text = fs::read_to_string(data("table1.csv"))
        .unwrap()
        .replace("441,88,35,13", "441,88,oops,13");
    fs::write(&path, text).unwrap();
    let o = run(&["scan", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.lines()
            .any(|l| l.starts_with("row 6") && l.contains("error")),
        "{out}"
    );
    assert_eq!(
        out.lines().last(),
        Some("12 rows: 11 spectrum-ok, 0 rejected, 1 row errors")
    );
}

#[test]
fn scan_empty_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    let o = run(&["scan", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 rows"));

    let missing = dir.path().join("nope.csv");
    assert_eq!(
        run(&["scan", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn trange_table() {
    let o = run(&["trange", "29", "32"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "c\tt_min\tt_max\n29\t8\t23\n30\t8\t24\n31\t7\t26\n32\t7\t27\n"
    );

    let out = stdout(&run(&["trange", "2", "10"]));
    assert!(
        out.lines().skip(1).all(|l| l.ends_with("unrestricted")),
        "{out}"
    );

    assert_eq!(run(&["trange", "10", "9"]).status.code(), Some(2));
}

#[test]
fn replay_text_and_records() {
    let o = run(&["replay"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("verdict: CONTRADICTION"));

    let o = run(&["--format", "records", "replay"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let records = parse_record_stream(&text).unwrap();
    assert_eq!(render_record_stream(&records), text);
    let steps = text
        .lines()
        .filter(|l| l.contains("\"record\":\"step\""))
        .count();
    assert_eq!(records.len(), steps + 2);
}

#[test]
fn replay_fault_is_not_reached() {
    let o = run(&["replay", "--inject-fault", "S7.final:upper=800"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().last(), Some("verdict: INCOMPLETE"));
    assert_eq!(
        run(&["replay", "--inject-fault", "nonsense"]).status.code(),
        Some(2)
    );
}

#[test]
fn oracle_on_petersen() {
    let o = run(&["oracle", data("petersen.edges").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("eigenvalue -2 multiplicity 4"));
    assert!(out.contains("strongly regular (10,3,0,1)"));

    let o = run(&[
        "--format",
        "records",
        "oracle",
        data("petersen.edges").to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["lambda_min"], "-2");
    assert_eq!(v["regular_degree"], 3);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let o = run(&["--output", path.to_str().unwrap(), "trange", "29", "29"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        fs::read_to_string(path).unwrap(),
        "c\tt_min\tt_max\n29\t8\t23\n"
    );
}
