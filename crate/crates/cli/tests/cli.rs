mod common;

use common::*;
use serde_json::Value;

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &std::process::Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_table_for_worked_example() {
    let o = run(&["analyze", PASSAGE, "--backend", "stub-bert"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Emotion Timeline: fear -> fear -> anger"), "{out}");
    assert!(out.contains("Drift Score: 0.50"));
    let rows: Vec<&str> = out
        .lines()
        .filter(|l| l.contains("  fear  ") || l.contains("  anger  "))
        .collect();
    assert_eq!(rows.len(), 3);
}

#[test]
fn analyze_json_is_canonical_report() {
    let o = run(&["analyze", PASSAGE, "--backend", "stub-roberta", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).is_empty());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["timeline"], serde_json::json!(["surprise", "sadness", "anger"]));
    assert_eq!(v["drift_score"], 1.0);
}

#[test]
fn analyze_empty_and_missing_file() {
    let o = run(&["analyze", "", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["num_sentences"], 0);

    let o = run(&["analyze", "--file", "definitely-missing.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("file not found"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn analyze_reads_file_and_stub_script() {
    let dir = tempfile::tempdir().unwrap();
    let text = write(dir.path(), "in.txt", PASSAGE);
    let script = write(dir.path(), "stub.txt", "fear\njoy\nanger\n");
    let o = run(&[
        "analyze",
        "--file",
        &text,
        "--backend",
        &format!("stub:{script}"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["timeline"], serde_json::json!(["fear", "joy", "anger"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x", "--file", "y"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x", "--backend", "gpt"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "x", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(run(&["evaluate", "--dataset", "d"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn remote_outage_exits_1() {
    let o = run(&[
        "analyze",
        PASSAGE,
        "--backend",
        "remote:http://127.0.0.1:9/c",
        "--timeout-ms",
        "300",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("backend unavailable"));
}

/// (gold, predicted) pairs; 14 of 20 match.
const SYNTHETIC: [(&str, &str); 20] = [
    ("anger", "anger"),
    ("fear", "fear"),
    ("joy", "joy"),
    ("love", "joy"),
    ("sadness", "sadness"),
    ("surprise", "fear"),
    ("anger", "anger"),
    ("fear", "sadness"),
    ("joy", "joy"),
    ("love", "love"),
    ("sadness", "sadness"),
    ("surprise", "surprise"),
    ("anger", "fear"),
    ("fear", "fear"),
    ("joy", "love"),
    ("love", "love"),
    ("sadness", "anger"),
    ("surprise", "surprise"),
    ("anger", "anger"),
    ("fear", "fear"),
];

fn label_index(label: &str) -> usize {
    ["sadness", "joy", "love", "anger", "fear", "surprise"]
        .iter()
        .position(|l| *l == label)
        .unwrap()
}

struct EvalFixture {
    _dir: tempfile::TempDir,
    dataset: String,
    labels: String,
    predicted: String,
    gold: String,
    wrong: String,
    dir: std::path::PathBuf,
}

fn eval_fixture() -> EvalFixture {
    let dir = tempfile::tempdir().unwrap();
    let mut data = String::new();
    let (mut predicted, mut gold, mut wrong) = (String::new(), String::new(), String::new());
    for (i, (g, p)) in SYNTHETIC.iter().enumerate() {
        data.push_str(&format!(
            "{{\"text\":\"Record  number {i}\",\"label\":{}}}\n",
            label_index(g)
        ));
        predicted.push_str(&format!("record number {i}\t{p}\n"));
        gold.push_str(&format!("record number {i}\t{g}\n"));
        let other = if *g == "joy" { "anger" } else { "joy" };
        wrong.push_str(&format!("record number {i}\t{other}\n"));
    }
    EvalFixture {
        dataset: write(dir.path(), "test.jsonl", &data),
        labels: write(dir.path(), "labels.tsv", LABEL_MAP),
        predicted: write(dir.path(), "predicted.txt", &predicted),
        gold: write(dir.path(), "gold.txt", &gold),
        wrong: write(dir.path(), "wrong.txt", &wrong),
        dir: dir.path().to_path_buf(),
        _dir: dir,
    }
}

#[test]
fn evaluate_matches_hand_tally_and_writes_report() {
    let f = eval_fixture();
    let out = f.dir.join("report.json");
    let o = run(&[
        "evaluate",
        "--dataset",
        &f.dataset,
        "--labels",
        &f.labels,
        "--backend",
        &format!("known=stub:{}", f.predicted),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("0.7000"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["results"][0]["backend_name"], "known");
    assert_eq!(report["results"][0]["correct"], 14);
    assert_eq!(report["results"][0]["accuracy"], 0.7);
}

#[test]
fn evaluate_orders_rows_by_accuracy() {
    let f = eval_fixture();
    let o = run(&[
        "evaluate",
        "--dataset",
        &f.dataset,
        "--labels",
        &f.labels,
        "--backend",
        &format!("wrong=stub:{}", f.wrong),
        "--backend",
        &format!("right=stub:{}", f.gold),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let right = out
        .lines()
        .position(|l| l.starts_with("right") && l.contains("1.0000"))
        .unwrap();
    let wrong = out
        .lines()
        .position(|l| l.starts_with("wrong") && l.contains("0.0000"))
        .unwrap();
    assert!(right < wrong);
}

#[test]
fn evaluate_failures_exit_1() {
    let f = eval_fixture();
    let o = run(&[
        "evaluate",
        "--dataset",
        "missing.jsonl",
        "--labels",
        &f.labels,
        "--backend",
        "lexicon",
    ]);
    assert_eq!(o.status.code(), Some(1));

    let empty_script = write(&f.dir, "none.txt", "unrelated\tjoy\n");
    let o = run(&[
        "evaluate",
        "--dataset",
        &f.dataset,
        "--labels",
        &f.labels,
        "--backend",
        &format!("stub:{empty_script}"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error"));
}

#[test]
fn serve_health_and_interrupt() {
    let server = Server::start(&["--backend", "lexicon"]);
    let (status, body) = server.get("/health");
    assert_eq!(status, 200);
    assert_eq!(body.trim(), r#"{"status":"ok","backend":"lexicon"}"#);
    assert_eq!(server.interrupt(), Some(0));
}

#[test]
fn serve_reads_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "emodrift.toml",
        "stub = \"stub-deberta\"\nmax_input_chars = 50\n",
    );
    let server = Server::start(&["--config", &cfg]);
    let (status, body) = server.post(
        "/analyze",
        &serde_json::json!({ "text": "One. Two. Three." }).to_string(),
    );
    assert_eq!(status, 200);
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["timeline"], serde_json::json!(["fear", "joy", "anger"]));
    let (status, _) = server.post("/analyze", &serde_json::json!({ "text": PASSAGE }).to_string());
    assert_eq!(status, 413);
}

#[test]
fn serve_bind_conflict_exits_1() {
    let holder = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = holder.local_addr().unwrap().to_string();
    let o = run(&["serve", "--bind", &addr]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cannot bind"));
}
