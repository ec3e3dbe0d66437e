use std::path::PathBuf;
use std::process::{Command, Output};

use gseq_cli::Report;
use serde_json::Value;

fn workspace(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces").join(name)
}

fn gseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gseq")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_reports_counts() {
    let out = gseq(&["check", workspace("pinch.gseq").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), "ok: 2 model(s), 1 map(s), 7 task(s)\n");
}

#[test]
fn shipped_workspaces_run() {
    for name in ["pinch.gseq", "checks.gseq"] {
        let out = gseq(&["run", workspace(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn g_sequence_row_for_the_pinch_map() {
    let out = gseq(&["run", workspace("pinch.gseq").to_str().unwrap(), "--task", "sequence"]);
    let text = stdout(&out);
    assert!(text.contains("    G_11(X) dim 1, non-exact, witness x11*\n"), "{text}");
    assert!(text.contains("    G_4(Y,X;f) dim 1, non-exact, witness y4*\n"), "{text}");
    assert!(text.contains("  note: non-exact at G_11(X), Grel_8(Y,X;f), G_4(Y,X;f)\n"), "{text}");
}

#[test]
fn self_maps_of_hp2() {
    let out = gseq(&[
        "run",
        workspace("pinch.gseq").to_str().unwrap(),
        "--task",
        "self_maps",
        "--format",
        "json",
    ]);
    let r: Report = serde_json::from_str(&stdout(&out)).unwrap();
    let nonzero: Vec<(&str, usize)> = r.tasks[0]
        .tables
        .iter()
        .map(|(n, row)| (n.as_str(), row.dims[0]))
        .filter(|&(_, d)| d > 0)
        .collect();
    assert_eq!(nonzero, vec![("7", 1), ("11", 1)]);
}

#[test]
fn json_is_deterministic() {
    let path = workspace("pinch.gseq");
    let a = gseq(&["run", path.to_str().unwrap(), "--format", "json"]);
    let b = gseq(&["run", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_has_the_report_shape() {
    for name in ["pinch.gseq", "checks.gseq"] {
        let out = gseq(&["run", workspace(name).to_str().unwrap(), "--format", "json"]);
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(v["tool_version"].is_string());
        assert!(v["assumptions"].as_array().unwrap().iter().all(Value::is_string));
        for t in v["tasks"].as_array().unwrap() {
            for key in ["name", "kind", "subject"] {
                assert!(t[key].is_string(), "{name}: {key}");
            }
            for (degree, row) in t["tables"].as_object().unwrap() {
                assert!(degree.parse::<usize>().is_ok());
                assert!(row["dims"].as_object().unwrap().values().all(Value::is_u64));
                assert!(row["exact"].is_boolean());
                assert!(row["witnesses"].as_array().unwrap().iter().all(Value::is_string));
            }
        }
    }
}

#[test]
fn text_and_json_carry_the_same_dimensions() {
    let path = workspace("pinch.gseq");
    let text = stdout(&gseq(&["run", path.to_str().unwrap()]));
    let json: Report = serde_json::from_str(&stdout(&gseq(&["run", path.to_str().unwrap(), "--format", "json"]))).unwrap();

    let mut from_text = Vec::new();
    for line in text.lines().filter(|l| l.starts_with("    ") && l.contains(" dim ")) {
        let (label, rest) = line.trim_start().split_once(" dim ").unwrap();
        let dim: usize = rest.split(',').next().unwrap().parse().unwrap();
        from_text.push((label.to_string(), dim));
    }
    let mut from_json = Vec::new();
    for t in &json.tasks {
        for row in t.tables.values() {
            for (label, dim) in &row.dims {
                from_json.push((label.clone(), *dim));
            }
        }
    }
    assert!(!from_text.is_empty());
    assert_eq!(from_text, from_json);
}

#[test]
fn output_file() {
    let target = std::env::temp_dir().join(format!("gseq-out-{}.json", std::process::id()));
    let out = gseq(&[
        "run",
        workspace("checks.gseq").to_str().unwrap(),
        "--task",
        "thom",
        "--format",
        "json",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["tasks"][0]["kind"], "thom");
    std::fs::remove_file(target).unwrap();
}

#[test]
fn empty_workspace() {
    let path = scratch("empty.gseq", "# nothing here\n");
    let out = gseq(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = gseq(&["run", path.to_str().unwrap(), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["tasks"], Value::Array(vec![]));
}

#[test]
fn parse_error_exits_2_with_position() {
    let path = scratch("bad-parse.gseq", "model X {\n  gen x : ;\n}\n");
    let out = gseq(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad-parse.gseq:2:"), "{}", stderr(&out));
}

#[test]
fn semantic_errors_exit_1_and_are_all_listed() {
    let path = scratch(
        "bad-model.gseq",
        "model X { gen a : 3; gen b : 5; d b = a^2; }\nmodel Y { gen c : 2; gen c : 4; }\n",
    );
    let out = gseq(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("bad-model.gseq:1:"), "{err}");
    assert!(err.contains("bad-model.gseq:2:"), "{err}");
    assert!(err.contains("2 error(s)"), "{err}");
}

#[test]
fn task_parameter_errors_exit_1() {
    let path = workspace("pinch.gseq");
    let out = gseq(&["run", path.to_str().unwrap(), "--task", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gseq(&["run", path.to_str().unwrap(), "--max-degree", "100000"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn timing_is_opt_in() {
    let path = workspace("checks.gseq");
    let plain = stdout(&gseq(&["run", path.to_str().unwrap(), "--task", "thom", "--format", "json"]));
    assert!(!plain.contains("elapsed_ms"));
    let timed = stdout(&gseq(&["run", path.to_str().unwrap(), "--task", "thom", "--format", "json", "--timing"]));
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn splitting_refusal_is_reported() {
    let out = gseq(&["run", workspace("checks.gseq").to_str().unwrap(), "--task", "refused"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("  refused: nonzero linear part\n"));
}

#[test]
fn tncz_obstruction_is_named() {
    let out = gseq(&["run", workspace("checks.gseq").to_str().unwrap(), "--task", "twisted"]);
    assert!(stdout(&out).contains("obstruction: ψ(u3*y3) = y3"), "{}", stdout(&out));
}
