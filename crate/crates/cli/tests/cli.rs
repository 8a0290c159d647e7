use std::process::{Command, Output};

use serde_json::Value;

fn boxcap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boxcap"))
        .args(args)
        .env_remove("BOXCAP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn classify_reports_the_class() {
    let o = boxcap(&["classify", "--g", "C3", "--h", "C3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["crosscap"], 1);

    let o = boxcap(&["classify", "--g", "K4", "--h", "P2", "--certify"]);
    let v = json(&o);
    assert_eq!(v["crosscap"], "at_least_2");
    let names: Vec<&str> = v["certificate"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|w| w["level"] == "product")
        .map(|w| w["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["D17"]);

    let o = boxcap(&["--format", "text", "classify", "--g", "P9", "--h", "P9"]);
    assert!(stdout(&o).starts_with("crosscap 0"));
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--g", "K_{1,3}", "--h", "K1,3", "--certify"];
    let a = boxcap(&args);
    let b = boxcap(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["certificate"]["type"], "embedding");
}

#[test]
fn bad_input_exits_two() {
    let o = boxcap(&["classify", "--g", "not a graph", "--h", "P3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = boxcap(&["classify", "--g", "P1", "--h", "P3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = boxcap(&["classify", "--g", "@/nonexistent/file", "--h", "P3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn minor_and_none() {
    let o = boxcap(&["minor", "--host", "C3xC3", "--pattern", "K5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["branchSets"].is_object());
    let o = boxcap(&["minor", "--host", "P6", "--pattern", "C3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn product_formats() {
    let g6 = stdout(&boxcap(&["product", "--g", "P2", "--h", "P2"]));
    assert_eq!(g6.trim(), "Cr");
    let dot = stdout(&boxcap(&["--format", "dot", "product", "--g", "P2", "--h", "P3"]));
    assert!(dot.contains("graph"));
    assert_eq!(dot.matches("--").count(), 7);
}

#[test]
fn embed_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (g, h, genus) in [("C3", "C3", 1), ("P4", "C5", 0), ("K1,3", "P2", 0), ("B:2", "P3", 1)] {
        let o = boxcap(&["embed", "--g", g, "--h", h]);
        assert_eq!(o.status.code(), Some(0), "{g} {h}");
        let file = dir.path().join(format!("{g}-{h}.json").replace([':', ','], "_"));
        std::fs::write(&file, &o.stdout).unwrap();
        let product = format!("{g}x{h}");
        let o = boxcap(&[
            "verify-embedding",
            "--graph",
            &product,
            "--embedding",
            file.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{g} {h}");
        let report = json(&o);
        assert_eq!(report["eulerGenus"], genus, "{g} {h}");
        assert_eq!(report["projective"], true);
    }
    let o = boxcap(&["embed", "--g", "K4", "--h", "P3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("k13.txt");
    std::fs::write(&edges, "4 3\n0 1\n0 2\n0 3\n").unwrap();
    let g6 = dir.path().join("c3.g6");
    std::fs::write(&g6, "Bw\n").unwrap();
    let o = boxcap(&[
        "classify",
        "--g",
        &format!("@{}", edges.display()),
        "--h",
        &format!("@{}", g6.display()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["crosscap"], 1);
}

#[test]
fn catalog_listing() {
    let o = boxcap(&["catalog", "list"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "E22"));
    assert!(text.contains("CP_plane:"));
    let o = boxcap(&["catalog", "show", "C3_factor_obstructions"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = boxcap(&["catalog", "show", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = boxcap(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8/8 lemma scripts match"));
}
