use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_triacontagonal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn verify_e8_exits_zero() {
    let out = run(&["verify", "--system", "e8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] e8.exact.reflection_closure"));
    assert!(text.contains("[PASS] e8.numeric.bijection"));
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn report_covers_both_systems() {
    let out = run(&["report", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["all_passed"], true);
    assert_eq!(value["tolerances"]["membership"], 1e-9);
    let names: Vec<&str> = value["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"projection.golden_scaling"));
    assert!(names.contains(&"h4.numeric.reflection_closure"));
}

#[test]
fn generate_verify_pipeline_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e8.jsonl");
    let out = run(&["generate", "--system", "e8", "--amplitude-mode", "cyclotomic", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 240);

    let piped = run(&["verify", "--input", path.to_str().unwrap(), "--format", "json"]);
    let direct = run(&["verify", "--system", "e8", "--amplitude-mode", "cyclotomic", "--format", "json"]);
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(piped.stdout, direct.stdout);

    let again = run_with_stdin(&["verify", "--input", "-", "--format", "json"], text.as_bytes());
    assert_eq!(again.stdout, direct.stdout);
}

#[test]
fn render_writes_svg_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.svg");
    let out = run(&["render", "--system", "e8", "--guide-circles", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("class=\"point\"").count(), 240);
    assert_eq!(svg.matches("class=\"guide\"").count(), 8);
}

#[test]
fn project_csv_and_json() {
    let csv = run(&["project", "--system", "h4"]);
    assert_eq!(csv.status.code(), Some(0));
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("family,n,radius,phase_index,re,im\n"));
    assert_eq!(text.lines().count(), 121);
    let points = triacontagonal::project::from_csv(&text).unwrap();
    assert_eq!(points.len(), 120);

    let json = run(&["project", "--system", "e8", "--amplitude-mode", "cyclotomic", "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 240);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["generate", "--system", "h4", "--amplitude-mode", "cyclotomic"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--format", "json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--system", "g2"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let garbage = run_with_stdin(&["verify", "--input", "-"], b"not json\n");
    assert_eq!(garbage.status.code(), Some(2));

    let roots = run(&["generate", "--system", "e8"]).stdout;
    let text = String::from_utf8(roots).unwrap();
    let truncated: String = text.lines().take(239).map(|l| format!("{l}\n")).collect();
    let failed = run_with_stdin(&["verify", "--input", "-"], truncated.as_bytes());
    assert_eq!(failed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&failed.stdout).contains("[FAIL] e8.numeric.cardinality"));
}
