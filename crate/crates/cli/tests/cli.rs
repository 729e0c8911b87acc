use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gsnet(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gsnet"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = gsnet(args, None);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_json(out: &Output) -> Value {
    assert!(!out.status.success());
    serde_json::from_slice(&out.stderr).unwrap_or_else(|_| panic!("not JSON: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn maxconnect_reports_alpha() {
    let v = ok_json(&["maxconnect", "--switches", "7", "--leaves", "2"]);
    assert_eq!(v["alpha"], 12);
    assert_eq!(v["predicted_alpha"], 12);
    assert_eq!(v["cost"]["total"], 9);
    assert_eq!(v["topology_class"]["kind"], "Star");
    assert_eq!(v["route"], "direct");
    let v = ok_json(&["maxconnect", "--switches", "5", "--leaves", "2,3,1,4,0"]);
    assert_eq!(v["alpha"], 6);
    let v = ok_json(&[
        "maxconnect",
        "--switches",
        "4",
        "--leaves",
        "1",
        "--even-reduction",
        "second-to-last",
    ]);
    assert_eq!(
        (v["alpha"].as_u64(), v["route"].as_str()),
        (Some(4), Some("even_reduction"))
    );
}

#[test]
fn enumerate_lists_six_classes() {
    let v = ok_json(&["enumerate", "--switches", "7"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
    assert_eq!(
        (v["total_sets"].as_u64(), v["canonical_classes"].as_u64()),
        (Some(10), Some(6))
    );
    assert_eq!(v["distinct_results"], 3);
    let v = ok_json(&["enumerate", "--switches", "7", "--all"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 10);
    let out = gsnet(&["enumerate", "--switches", "7", "--format", "csv"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("config,mirror,canonical,gates,topology_class,surviving_vertices"));
}

#[test]
fn cost_csv_matches_formula() {
    let out = gsnet(&["cost", "--m-max", "9", "--n-max", "4"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,predicted_cost,actual_cost"));
    let rows: Vec<Vec<usize>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5 * 5);
    assert!(rows.contains(&vec![3, 0, 1, 1]));
    assert!(rows.contains(&vec![9, 4, 20, 20]));
    assert!(rows.contains(&vec![1, 3, 0, 0]));
    let out = gsnet(&["cost", "--m-max", "4", "--n-max", "1", "--include-even"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4,1,4,4,even_reduction"));
}

#[test]
fn build_export_run_round_trip() {
    let out = gsnet(&["build", "star", "--leaves", "3"], None);
    let graph = String::from_utf8(out.stdout).unwrap();
    let dot = gsnet(&["export", "--format", "dot"], Some(&graph));
    let dot = String::from_utf8(dot.stdout).unwrap();
    assert_eq!(dot.matches("--").count(), 3);
    assert_eq!(
        dot.lines()
            .filter(|l| l.trim_end().ends_with(';') && !l.contains("--"))
            .count(),
        4
    );

    let json = gsnet(&["export", "--format", "json"], Some(&graph));
    let a: Value = serde_json::from_str(&graph).unwrap();
    let b: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(a, b);

    let dir = std::env::temp_dir().join(format!("gsnet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("p.json");
    std::fs::write(&p, r#"{"steps":[{"basis":"Y","target":0}]}"#).unwrap();
    let run = gsnet(&["run", "--protocol", p.to_str().unwrap(), "--trace"], Some(&graph));
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let v: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v["topology_class"]["kind"], "Complete");
    assert_eq!(v["cost"]["total"], 1);
    assert_eq!(v["trace"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_is_seeded_and_deterministic() {
    let args = [
        "verify",
        "--seed",
        "5",
        "--trials",
        "30",
        "--exhaustive-up-to",
        "3",
        "--max-vertices",
        "8",
    ];
    let a = ok_json(&args);
    assert_eq!(a["passed"], true);
    assert_eq!(a["measurement_rules"]["failed"], 0);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(a, ok_json(&seq));
    let e = error_json(&gsnet(&["verify"], None));
    assert_eq!(e["error"], "InvalidArguments");
    assert!(e["message"].as_str().unwrap().contains("--seed"));
}

#[test]
fn errors_are_machine_readable() {
    let e = error_json(&gsnet(&["enumerate", "--switches", "15"], None));
    assert_eq!(e["error"], "SearchBoundExceeded");
    let e = error_json(&gsnet(&["enumerate", "--switches", "6"], None));
    assert_eq!(e["error"], "EvenSwitchCount");
    let e = error_json(&gsnet(&["maxconnect", "--switches", "3", "--leaves", "1,2"], None));
    assert_eq!(e["error"], "InvalidArguments");
    let e = error_json(&gsnet(&["export"], Some("{not json")));
    assert_eq!(e["error"], "Json");
    let graph = r#"{"vertices":[{"id":0},{"id":1}],"edges":[[0,1]]}"#;
    let e = error_json(&gsnet(&["run", "--protocol", "/nonexistent/p.json"], Some(graph)));
    assert_eq!(e["error"], "Io");
    let e = error_json(&gsnet(&["frobnicate"], None));
    assert_eq!(e["error"], "InvalidArguments");
}
