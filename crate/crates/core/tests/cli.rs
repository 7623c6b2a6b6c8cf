use std::path::PathBuf;

use zplus::cli::run;
use zplus::io::{GroupFile, InvariantFile, ModuleFile, RingFile};
use zplus::repg;
use zplus::sl2::{fusion_ring, Sl2Level};

fn zplus(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zplus").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zplus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn level_ring_file(l: u32) -> PathBuf {
    let f = RingFile::from_ring(&fusion_ring(Sl2Level::new(l).unwrap())).unwrap();
    scratch(&format!("ring{l}.json"), &serde_json::to_string(&f).unwrap())
}

#[test]
fn ring_verify_reports_based_structure() {
    let p = level_ring_file(2);
    let (code, out, _) = zplus(&["ring", "verify", "--in", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "valid Z+-ring; based; involution = identity");
}

#[test]
fn ring_verify_flags_violations() {
    // b1 * b1 = b1 + b0 with a negative constant thrown in.
    let text = r#"{"rank": 2, "labels": ["1", "x"], "unit_set": [0],
        "structure_constants": [[[1, 0], [0, 1]], [[0, 1], [1, -1]]], "involution": null}"#;
    let p = scratch("bad_ring.json", text);
    let (code, out, _) = zplus(&["ring", "verify", "--in", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("negative structure constant"), "{out}");
}

#[test]
fn classify_as_json() {
    let (code, out, _) = zplus(&["nimrep", "classify", "--level", "10", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Vec<String> = serde_json::from_str(&out).unwrap();
    assert_eq!(v, vec!["A11", "D7", "E6"]);
}

#[test]
fn solve_level_four() {
    let (code, out, _) = zplus(&["minv", "solve", "--level", "4", "--bound", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 modular invariant(s) at level 4"));
    assert!(out.contains("|χ0+χ4|^2 + 2|χ2|^2"));
}

#[test]
fn invariants_round_trip_through_json() {
    let (code, out, _) = zplus(&["minv", "solve", "--level", "16", "--format", "json"]);
    assert_eq!(code, 0);
    let files: Vec<InvariantFile> = serde_json::from_str(&out).unwrap();
    assert_eq!(files.len(), 3);
    for f in &files {
        let inv = f.to_invariant().unwrap();
        assert_eq!(&InvariantFile::from_invariant(&inv).unwrap(), f);
    }
    assert_eq!(serde_json::to_string_pretty(&files).unwrap() + "\n", out);
}

#[test]
fn modules_round_trip_and_verify() {
    let (code, out, _) = zplus(&["module", "enumerate", "--level", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let files: Vec<ModuleFile> = serde_json::from_str(&out).unwrap();
    assert_eq!(files.len(), 2);
    assert_eq!(files.iter().filter(|f| f.based).count(), 1);
    for (k, f) in files.iter().enumerate() {
        let m = f.to_module().unwrap();
        assert_eq!(&ModuleFile::from_module(f.ring.clone(), &m, f.based).unwrap(), f);
        let p = scratch(&format!("enum{k}.json"), &serde_json::to_string(f).unwrap());
        let (code, text, _) = zplus(&["module", "verify", "--in", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{text}");
    }
}

#[test]
fn enumeration_output_does_not_depend_on_jobs() {
    let a = zplus(&["module", "enumerate", "--level", "2", "--jobs", "1"]);
    let b = zplus(&["module", "enumerate", "--level", "2", "--jobs", "3"]);
    assert_eq!(a, b);
    let c = zplus(&["minv", "solve", "--level", "28", "--jobs", "3", "--format", "json"]);
    let d = zplus(&["minv", "solve", "--level", "28", "--format", "json"]);
    assert_eq!(c, d);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["--seed-catalog"][..],
        &["catalog", "list", "--max-rank", "9", "--format", "json"],
        &["repg", "subgroups", "--group", "D8"],
        &["ring", "fusion-matrices", "--level", "3", "--format", "json"],
    ] {
        assert_eq!(zplus(args), zplus(args));
    }
}

#[test]
fn from_graph_then_check_claims() {
    let (code, out, _) = zplus(&["nimrep", "from-graph", "--type", "E6", "--level", "10", "--format", "json"]);
    assert_eq!(code, 0);
    let e6 = scratch("e6.json", &out);
    let (_, invs, _) = zplus(&["minv", "solve", "--level", "10", "--format", "json"]);
    let files: Vec<InvariantFile> = serde_json::from_str(&invs).unwrap();
    let mut matched = 0;
    for (k, f) in files.iter().enumerate() {
        let p = scratch(&format!("z10_{k}.json"), &serde_json::to_string(f).unwrap());
        let (code, text, _) =
            zplus(&["minv", "check", "--in", p.to_str().unwrap(), "--against", e6.to_str().unwrap()]);
        if code == 0 {
            matched += 1;
            assert!(text.contains("sum of squared entries: 12"), "{text}");
        } else {
            assert_eq!(code, 1);
        }
    }
    assert_eq!(matched, 1);
}

#[test]
fn rejected_graph_exits_one() {
    let p = scratch("a3.json", r#"{"size": 3, "adjacency": [[0,1,0],[1,0,1],[0,1,0]]}"#);
    let (code, _, err) = zplus(&["nimrep", "from-graph", "--in", p.to_str().unwrap(), "--level", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("p_4"));
    let (code, out, _) = zplus(&["nimrep", "exponents", "--in", p.to_str().unwrap(), "--level", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "exponents: 0 1 2");
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(zplus(&["frobnicate"]).0, 2);
    assert_eq!(zplus(&["ring", "verify", "--in", "/nonexistent/ring.json"]).0, 2);
    let p = scratch("broken.json", "{\"rank\": 2,\n  \"labels\": [");
    let (code, _, err) = zplus(&["ring", "verify", "--in", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("broken.json:2:"), "{err}");
    assert_eq!(zplus(&["ring", "verify"]).0, 2);
    assert_eq!(zplus(&["repg", "fiber-count", "--group", "C4xC4"]).0, 2);
    let (code, out, _) = zplus(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("nimrep"));
}

#[test]
fn group_file_and_counts() {
    let f = GroupFile::from_group(&repg::builtin("D8").unwrap());
    let p = scratch("d8.json", &serde_json::to_string(&f).unwrap());
    assert_eq!(zplus(&["repg", "fiber-count", "--in", p.to_str().unwrap()]).1.trim(), "3");
    assert_eq!(zplus(&["repg", "fiber-count", "--group", "Q8"]).1.trim(), "1");
    assert_eq!(zplus(&["repg", "modcat-count", "--group", "Z2xZ2"]).1.trim(), "6");
    let (_, out, _) = zplus(&["repg", "subgroups", "--group", "D8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let klein = v.as_array().unwrap().iter().filter(|c| c["type"] == "C2xC2").count();
    assert_eq!(klein, 2);
}

#[test]
fn catalog_and_ring_queries() {
    let (_, out, _) = zplus(&["catalog", "show", "--type", "E7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h"], 18);
    assert_eq!(v["algebra_object"], serde_json::json!([0, 8, 16]));
    assert_eq!(zplus(&["ring", "bound", "--level", "2"]).1.trim(), "4");
    let (_, out, _) = zplus(&["module", "enumerate", "--level", "1"]);
    assert!(out.starts_with("2 irreducible module(s) with rank <= 2 and entries <= 2"));
    let (_, out, _) = zplus(&["catalog", "list", "--max-rank", "4"]);
    assert!(out.contains("D4\t6\t1 3 3 5"));
    assert!(out.contains("T2\t5\t1 3"));
}
