use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ncrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ncrel(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against a pinned file; `NCREL_BLESS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("NCREL_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap();
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncrel-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn poly_examples() {
    let out = ok(&["poly", "--family", "U:6", "--kind", "cw"]);
    assert_eq!(out.trim(), r#"["6","6","10","10","5","1"]"#);
    golden("poly_u6_cw.json", &out);
    assert_eq!(
        ok(&["poly", "--graph6", "@", "--kind", "cs"]).trim(),
        r#"["1"]"#
    );
    // 4q^3 (1 - q) for the 4-cycle.
    golden(
        "poly_c4_ecrel.json",
        &ok(&["poly", "--family", "C:4", "--kind", "ecrel"]),
    );
}

#[test]
fn poly_reads_graph6_files() {
    let path = scratch("graphs.g6");
    fs::write(&path, "@\nC~\n\nDhc\n").unwrap();
    let out = ok(&["poly", "--file", path.to_str().unwrap(), "--kind", "cs"]);
    let lines: Vec<&str> = out.lines().collect();
    // K_1, K_4, C_5.
    assert_eq!(
        lines,
        [
            r#"["1"]"#,
            r#"["4","6","4","1"]"#,
            r#"["5","5","5","5","1"]"#
        ]
    );
    let literal = ok(&["poly", "--graph6", "Dhc", "--kind", "cs"]);
    assert_eq!(lines[2], literal.trim());
}

#[test]
fn umr_winner_is_b8() {
    let out = ok(&[
        "umr",
        "--n",
        "8",
        "--cyclomatic",
        "2",
        "--measure",
        "ncrel",
        "--summary",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let family = ok(&["family", "B:8"]);
    let b8: Value = serde_json::from_str(&family).unwrap();
    assert_eq!(v["winners"], serde_json::json!([b8["canonical"]]));
    assert!(v["family_tags"].as_array().unwrap().contains(&"B:8".into()));
    golden("umr_8_2_ncrel.json", &out);
}

#[test]
fn umr_without_winner_reports_crossings() {
    let out = ok(&["umr", "--n", "7", "--cyclomatic", "2", "--measure", "nrel"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["winners"], serde_json::json!([]));
    let crossings = v["comparisons"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["report"]["verdict"] == "Crossing")
        .count();
    assert!(crossings > 0);
    golden("umr_7_2_nrel.json", &out);
}

#[test]
fn compare_is_crossing_with_signed_witnesses() {
    let out = ok(&[
        "compare",
        "--left",
        "B:8",
        "--right",
        "G3:1,1,4",
        "--measure",
        "nrel",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "Crossing");
    let signs: Vec<i64> = v["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["sign"].as_i64().unwrap())
        .collect();
    assert!(signs.contains(&1) && signs.contains(&-1));
    golden("compare_b8_g3_nrel.json", &out);

    let same = ok(&["compare", "--left", "U:6", "--right", "U:6"]);
    assert!(same.contains(r#""verdict": "Equal""#));
}

#[test]
fn family_classify_copwin_records() {
    golden(
        "family.jsonl",
        &ok(&["family", "U:6", "B:8", "G3:1,1,4", "H:9,3"]),
    );
    golden(
        "classify.jsonl",
        &ok(&["classify", "--graph6", "G{aCE?", "--family", "C:6"]),
    );
    golden(
        "copwin.jsonl",
        &ok(&["copwin", "--family", "U:7", "--family", "C:5"]),
    );
}

#[test]
fn enumerate_generators_agree() {
    assert_eq!(
        ok(&["enumerate", "--n", "7", "--cyclomatic", "2", "--count"]).trim(),
        "67"
    );
    assert_eq!(
        ok(&["enumerate", "--n", "7", "--cyclomatic", "2"]),
        ok(&["enumerate", "--n", "7", "--cyclomatic", "2", "--filter"])
    );
    // Trees of order 6.
    assert_eq!(
        ok(&["enumerate", "--n", "6", "--cyclomatic", "0", "--count"]).trim(),
        "6"
    );
}

#[test]
fn roots_records_and_summary() {
    let out = ok(&["roots", "--family", "C:4", "--jobs", "2"]);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["0", "0", "0", "4", "-4"])
    );
    assert_eq!(v["max_dist_from_one"], 1.0);
    assert_eq!(v["inside_disk"], true);
    let summary = ok(&["roots", "--connected", "5", "--summary"]);
    let s: Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(s["graphs"], 1 + 1 + 2 + 6 + 21);
    assert_eq!(s["all_inside"], true);
}

#[test]
fn verify_paper_scopes() {
    let out = ok(&["verify-paper", "--scope", "table1"]);
    assert!(out.starts_with("[PASS]  1 "), "{out}");

    let table = scratch("appendix.tsv");
    let out = ok(&[
        "verify-paper",
        "--scope",
        "appendix",
        "--appendix",
        table.to_str().unwrap(),
    ]);
    assert!(out.contains("wrote 67 rows"));
    let text = fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().count(), 68);
    assert_eq!(text.lines().next(), Some("graph6\tedges\tCS"));

    // The disk check is known not to hold at order 6.
    let out = ncrel(&["verify-paper", "--scope", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("E~~w"));
}

#[test]
fn conjecture_counterexample_exits_one() {
    let out = ncrel(&["conjecture-h", "--n", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["holds"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["poly"][..],
        &["poly", "--family", "X:3"],
        &["poly", "--graph6", "~~~"],
        &["umr", "--n", "20", "--cyclomatic", "2"],
        &["conjecture-h", "--n", "8", "--cyclomatic", "2"],
        &["verify-paper", "--scope", "13"],
        &["compare", "--left", "U:6"],
        &["poly", "--file", "/nonexistent/graphs.g6"],
    ] {
        let out = ncrel(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
