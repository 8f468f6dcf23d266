use std::process::{Command, Output};

use serde_json::Value;

fn bpring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpring")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

#[test]
fn catalog_lists_every_entry() {
    let o = bpring(&["catalog", "--p", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("\n## ").count(), 6);
    assert!(text.contains("| F1 | Z_2 x Z_2 | 1 | 1 |"));
}

#[test]
fn catalog_json_parses() {
    let o = bpring(&["catalog", "--p", "3", "--format", "json"]);
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    assert_eq!(entries[0]["label"], "T");
    assert_eq!(entries[0]["object_count"], 9);
    assert_eq!(entries[7]["label"], "F2");
    assert_eq!(entries[7]["associator_exponent"], 2);
}

#[test]
fn catalog_rejects_composite_p() {
    let o = bpring(&["catalog", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("p must be prime"));
}

#[test]
fn fuse_prints_decomposition() {
    let o = bpring(&["fuse", "--p", "3", "--left", "T", "--right", "T"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3*T");

    let o = bpring(&["fuse", "--p", "2", "--left", "X1", "--right", "F1"]);
    assert_eq!(stdout(&o).trim(), "F1");
}

#[test]
fn fuse_detail_reports_associator() {
    let o = bpring(&["fuse", "--p", "5", "--left", "F2", "--right", "X3", "--detail"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("associator: ζ^1"), "{text}");
    assert!(text.contains("stabilizer Z_5 x Z_5"), "{text}");
    assert!(text.trim_end().ends_with("result: F1"), "{text}");

    let o = bpring(&["fuse", "--p", "5", "--left", "F2", "--right", "X3", "--detail", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["text"], "F1");
    assert_eq!(doc["detail"]["simples"], 1);
    assert_eq!(doc["detail"]["orbits"][0]["associator_exponent"], 1);
}

#[test]
fn fuse_rejects_bad_labels() {
    for bad in ["X0", "F5", "Q", ""] {
        let o = bpring(&["fuse", "--p", "5", "--left", bad, "--right", "T"]);
        assert_eq!(o.status.code(), Some(2), "label {bad:?}");
    }
}

#[test]
fn table_markdown_at_two() {
    let o = bpring(&["table", "--p", "2", "--format", "md"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows = text.lines().filter(|l| !l.starts_with("|---")).count();
    assert_eq!(rows, 2 * 2 + 3);
    assert!(text.contains("| R | T | 2*T | R | 2*R | R | T |"));
}

#[test]
fn table_json_round_trips_and_csv_has_every_cell() {
    let o = bpring(&["table", "--p", "3", "--format", "json"]);
    let json = stdout(&o);
    let t = bpring::ring::RingTable::from_json(&json).unwrap();
    assert_eq!(t.to_json(), json);

    let o = bpring(&["table", "--p", "3", "--format", "csv"]);
    let text = stdout(&o);
    let cells: usize = text.lines().skip(1).map(|l| l.split(',').count() - 1).sum();
    assert_eq!(cells, 8 * 8);
}

#[test]
fn table_writes_file_or_fails_with_one() {
    let dir = std::env::temp_dir().join(format!("bpring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let o = bpring(&["table", "--p", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("⊗,T,L,R,F0,X1,F1"));
    std::fs::remove_dir_all(&dir).unwrap();

    let o = bpring(&["table", "--p", "2", "--out", "/nonexistent-dir/t.md"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_passes_with_oracle_and_triples() {
    let o = bpring(&["verify", "--p", "5", "--oracle"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = bpring(&["verify", "--p", "7", "--triples"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("associativity: ok"));
}

#[test]
fn verify_locates_injected_fault() {
    let o = bpring(&["verify", "--p", "3", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("T ⊗ L: R vs T"), "{}", stdout(&o));
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_bpring"))
        .args(["verify", "--p", "3"])
        .env("BPRING_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_bpring"))
        .args(["verify", "--p", "3"])
        .env("BPRING_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
