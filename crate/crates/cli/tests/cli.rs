use std::fs;
use std::process::Command;

use omvis_cli::{run, EXIT_INVALID, EXIT_IO, EXIT_OK, EXIT_USAGE};
use omvis_core::lab::io::{read_datasets, read_jsonl};
use omvis_core::lab::{ResponseRecord, ScoredRecord, TrialSpec};

fn omvis(args: &[&str]) -> (u8, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("omvis").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn enumerate_counts() {
    assert_eq!(omvis(&["enumerate"]).1.lines().count(), 6240);
    assert_eq!(omvis(&["enumerate", "--viable"]).1.lines().count(), 336);
    assert_eq!(omvis(&["enumerate", "--viable", "--dedupe"]).1.lines().count(), 168);
    let (code, csv) = omvis(&["enumerate", "--viable", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(csv.lines().count(), 337);
    assert!(csv.starts_with("mark,exp,mant,other_type,other,eplusm,viable,violations,config\n"));
}

#[test]
fn rule_table_ends_at_viable_count() {
    let (_, table) = omvis(&["enumerate", "--rule-table"]);
    let last = table.lines().last().unwrap();
    assert!(last.ends_with(",336"), "{last}");
}

#[test]
fn validate_exit_codes() {
    let (code, out) = omvis(&["validate", "point | exp->Area | mant->PosX | nominal->PosX"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.contains("DuplicateChannel"));
    let (code, out) = omvis(&["validate", "line | exp->PosY | mant->PosY | nominal->PosX"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("viable"));
    assert_eq!(omvis(&["validate", "line | exp->"]).0, EXIT_INVALID);
}

#[test]
fn usage_errors() {
    assert_eq!(omvis(&["frobnicate"]).0, EXIT_USAGE);
    // randomized commands insist on a seed
    assert_eq!(omvis(&["gen-data", "--n", "2", "--out", "x"]).0, EXIT_USAGE);
    assert_eq!(omvis(&["simulate", "--design", "log", "--out", "x"]).0, EXIT_USAGE);
    assert_eq!(omvis(&["analyze", "--scores", "x", "--out", "y"]).0, EXIT_USAGE);
    assert_eq!(omvis(&["render", "--design", "pie", "--out", "x.svg"]).0, EXIT_USAGE);
}

#[test]
fn io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let out = dir.path().join("t.jsonl");
    let (code, _) =
        omvis(&["trials", "--dataset", missing.to_str().unwrap(), "--seed", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
}

#[test]
fn render_and_gallery() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    fs::write(&data, "label,value\nA,1200\nB,45000\nC,9100000\n").unwrap();
    let svg = dir.path().join("c.svg");
    let (code, _) = omvis(&[
        "render",
        "--design",
        "facet",
        "--data",
        data.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
        "--highlight",
        "A,C",
    ]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.contains("id=\"arrow-C-bar\""));

    let (code, _) =
        omvis(&["render", "--config", "line | exp->PosY | mant->PosY | nominal->PosX", "--out", svg.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(fs::read_to_string(&svg).unwrap().contains("width=\"360\""));

    let gallery = dir.path().join("g");
    let (code, out) = omvis(&["gallery", "--out", gallery.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(fs::read_dir(&gallery).unwrap().count(), 169);
}

#[test]
fn experiment_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    assert_eq!(omvis(&["gen-data", "--n", "4", "--seed", "5", "--out", &p("data")]).0, EXIT_OK);
    let sets = read_datasets(&dir.path().join("data")).unwrap();
    assert_eq!(sets.len(), 4);

    assert_eq!(
        omvis(&["trials", "--dataset", &p("data/dataset-002.csv"), "--id", "2", "--seed", "5", "--out", &p("t.jsonl")])
            .0,
        EXIT_OK
    );
    let trials: Vec<TrialSpec> = read_jsonl(fs::File::open(p("t.jsonl")).unwrap()).unwrap();
    assert_eq!(trials.len(), 28);
    assert!(trials.iter().all(|t| t.dataset_id == 2));

    for design in ["log", "facet"] {
        let out = p(&format!("{design}.jsonl"));
        assert_eq!(
            omvis(&["simulate", "--design", design, "--participants", "6", "--seed", "5", "--out", &out]).0,
            EXIT_OK
        );
        let responses: Vec<ResponseRecord> = read_jsonl(fs::File::open(&out).unwrap()).unwrap();
        assert_eq!(responses.len(), 6 * 28);
        let trials = p(&format!("{design}.trials.jsonl"));
        let scored = p(&format!("{design}.scored.jsonl"));
        assert_eq!(omvis(&["score", "--responses", &out, "--trials", &trials, "--out", &scored]).0, EXIT_OK);
        let records: Vec<ScoredRecord> = read_jsonl(fs::File::open(&scored).unwrap()).unwrap();
        assert_eq!(records.len(), 6 * 28);
    }
    let report = p("report.csv");
    let args = [
        "analyze",
        "--scores",
        &p("log.scored.jsonl"),
        &p("facet.scored.jsonl"),
        "--bootstrap",
        "1000",
        "--seed",
        "3",
        "--out",
        &report,
    ];
    assert_eq!(omvis(&args).0, EXIT_OK);
    let first = fs::read_to_string(&report).unwrap();
    assert!(first.starts_with("design,task,statistic,point,lo,hi\n"));
    assert!(first.contains("log-facet,value,error"));
    // same seed, same bytes
    assert_eq!(omvis(&args).0, EXIT_OK);
    assert_eq!(fs::read_to_string(&report).unwrap(), first);

    assert_eq!(
        omvis(&["analyze", "--scores", &p("log.scored.jsonl"), "--bootstrap", "10", "--seed", "3", "--out", &report]).0,
        omvis_cli::EXIT_DATA
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_omvis");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["validate", "point | exp->Area | mant->PosX | nominal->PosX"]), Some(2));
    assert_eq!(status(&["--no-such-flag"]), Some(64));
    assert_eq!(status(&["--help"]), Some(0));
}
