use levelplan::cli::run;
use serde_json::Value;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("levelplan".to_string())
        .chain(args.iter().map(|a| a.replace("@", &format!("{DATA}/"))))
        .collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn count_d1() {
    let (code, out, _) = call(&["count", "@d1.json"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2");
    assert_eq!(call(&["count", "@p1.json"]).1.trim(), "4");
}

#[test]
fn contradicting_orders_exit_one() {
    let (code, out, _) = call(&["solve-constrained", "@d1_contradiction.json"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["status"], "UNSAT");
    let (code, out, _) = call(&["solve-constrained", "@d1_order.json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["witness"]["levels"][1], serde_json::json!(["b", "a"]));
}

#[test]
fn two_sources_exit_two_and_name_them() {
    let (code, out, _) = call(&["validate", "@two_sources.json"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["sources"], serde_json::json!(["s", "u"]));
    let (code, _, err) = call(&["count", "@two_sources.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("single-source"), "{err}");
}

#[test]
fn unknown_flags_and_missing_files_exit_two() {
    assert_eq!(call(&["count", "--bogus", "@d1.json"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["count", "@missing.json"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn super_sink_flag() {
    assert_eq!(call(&["count", "@no_sink.json"]).0, 2);
    let (code, out, _) = call(&["count", "--super-sink", "@no_sink.json"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2");
}

#[test]
fn oracle_and_guard() {
    let (code, out, _) = call(&["oracle", "@p1.json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["count"], 4);
    assert_eq!(call(&["oracle", "--guard", "5", "@p1.json"]).0, 2);
}

#[test]
fn sefe_verdicts() {
    let (code, out, _) = call(&["solve-sefe", "@p1_sefe.json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["status"], "SAT");
    let (code, out, _) = call(&["solve-sefe", "@fan_sefe_unsat.json"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["status"], "UNSAT");
}

#[test]
fn partial_verdicts() {
    for f in ["@d1_partial.json", "@p1_partial.json"] {
        let (code, out, _) = call(&["solve-partial", f]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(json(&out)["status"], "SAT");
    }
}

#[test]
fn tree_commands() {
    let (code, out, _) = call(&["build-tree", "@p1.json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["count"], "4");
    let (code, out, _) = call(&["dump-tree", "--spqr", "@r2.json"]);
    assert_eq!(code, 0);
    assert!(json(&out)["nodes"].as_array().unwrap().len() >= 12);
    let (code, out, _) = call(&["enumerate", "--limit", "3", "@p1.json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["embeddings"].as_array().unwrap().len(), 3);
    let (code, out, _) = call(&["embed", "@r2.json"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["levels"].as_array().unwrap().len(), 6);
    let (code, out, _) = call(&["embed", "@fan_tall.json"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["level_planar"], false);
    let (code, out, _) = call(&["count", "@fan_tall.json"]);
    assert_eq!((code, out.trim()), (1, "0"));
}

#[test]
fn render_writes_svg() {
    let (code, out, _) = call(&["render", "@p1.json"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<?xml"));
    assert!(out.contains("<svg"));
    assert!(out.contains("</svg>"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["dump-tree", "@p1.json"][..],
        &["enumerate", "@r2.json"],
        &["oracle", "@d1.json"],
        &["solve-sefe", "@p1_sefe.json"],
        &["render", "@r2.json"],
    ] {
        assert_eq!(call(args), call(args), "{args:?}");
    }
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("levelplan-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["count", "@d1.json", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim(), "2");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn bench_reports_times() {
    let (code, out, _) = call(&["bench", "--sizes", "200,400", "--repeats", "1", "--seed", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    assert_eq!(call(&["bench", "--max-n", "100", "--sizes", "200"]).0, 2);
}
