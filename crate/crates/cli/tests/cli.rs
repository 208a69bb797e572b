use std::fs;
use std::path::PathBuf;

use graphalg_cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn call(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["graphalg"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("graphalg-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

const SINK_VIOLATION: &str = "\
graph X
vertex x
vertex y
edge e x -> y
edge f y -> y
subgraph F1 vertices x,y edges e,f
subgraph F2 vertices x
";

#[test]
fn verify_podles_passes() {
    let o = call(&["verify", "--corpus", "podles", "--max-len", "3"]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
    assert!(o.stdout.contains("pass: true"));

    let o = call(&["--json", "verify", "--corpus", "podles"]);
    let report: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    for flag in [
        "commutes",
        "kernel_products_zero",
        "mapped_kernel_included",
        "lifting_verified",
        "graded",
        "pass",
    ] {
        assert_eq!(report[flag], true, "{flag}");
    }
    assert_eq!(report["length_bound"], 3);
    assert!(report.get("elapsed_ms").is_none());
}

#[test]
fn json_is_deterministic_and_timing_is_opt_in() {
    let args = ["--json", "verify", "--corpus", "lens-3-1", "--seed", "9"];
    assert_eq!(call(&args).stdout, call(&args).stdout);
    let o = call(&["--json", "verify", "--corpus", "podles", "--timing"]);
    let report: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(report["elapsed_ms"].is_u64());
}

#[test]
fn sink_violation_exits_with_witness() {
    let path = temp_file("bad.graph", SINK_VIOLATION);
    let o = call(&["check", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("sinks fails at `x`"), "{}", o.stdout);

    let o = call(&["--json", "check", "--graph", path.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(report["cond_sinks"]["witness"], "x");
    assert_eq!(report["admissible"], false);

    let o = call(&["verify", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("stopped at: admissibility"));
}

#[test]
fn eval_applies_relations() {
    let o = call(&["eval", "--corpus", "podles", "S[a]* S[a] - S[u1]"]);
    assert_eq!(o.code, EXIT_PASS);
    assert_eq!(o.stdout.trim(), "0");

    let o = call(&[
        "eval",
        "--corpus",
        "podles",
        "S[l] S*[l] + S[a] S*[a] + S[b] S*[b]",
    ]);
    assert_eq!(o.stdout.trim(), "S[w]");

    // choosing l as the special edge at w rewrites S_l S_l* instead of S_a S_a*
    let sp = temp_file("special", "# vertex edge\nw l\n");
    let o = call(&[
        "eval",
        "--corpus",
        "podles",
        "--special-edges",
        sp.to_str().unwrap(),
        "S[l] S*[l]",
    ]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
    assert_eq!(o.stdout.trim(), "S[w] - S[a] S*[a] - S[b] S*[b]");

    let o = call(&["eval", "--corpus", "podles", "S[q]"]);
    assert_eq!(o.code, EXIT_USAGE);
}

#[test]
fn input_errors_exit_two() {
    let path = temp_file("broken.graph", "graph G\nvertex a\nedge e a => a\n");
    let o = call(&["check", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);

    assert_eq!(call(&["verify", "--corpus", "torus"]).code, EXIT_USAGE);
    assert_eq!(call(&["verify"]).code, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(
        call(&["check", "--graph", "/nonexistent/file"]).code,
        EXIT_USAGE
    );
    assert_eq!(call(&["--help"]).code, EXIT_PASS);
}

#[test]
fn corpus_show_round_trips_through_check() {
    let o = call(&["corpus", "show", "sphere-2"]);
    assert_eq!(o.code, EXIT_PASS);
    let path = temp_file("sphere.graph", &o.stdout);
    let o = call(&["check", "--graph", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.stdout);

    let o = call(&["corpus", "show", "podles", "--dot"]);
    assert!(o.stdout.starts_with("digraph"));
    let o = call(&["--json", "corpus", "list"]);
    let list: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(list.as_array().unwrap().len(), 14);
}

#[test]
fn enumerate_closures_quotient_and_dot() {
    let o = call(&["enumerate", "--corpus", "podles"]);
    assert_eq!(o.code, EXIT_PASS);
    assert!(
        o.stdout.contains("subgraph F1 vertices u1,w edges a,l"),
        "{}",
        o.stdout
    );

    let o = call(&["--json", "closures", "--corpus", "podles", "--set", "u1,u2"]);
    let closure: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(closure, serde_json::json!(["u1", "u2"]));

    let o = call(&["closures", "--corpus", "sphere-1", "--set", "sp,sm"]);
    // v1 keeps its loop outside the set, so it is not absorbed
    assert_eq!(o.stdout.trim(), "{sm,sp}");

    let o = call(&["quotient", "--corpus", "podles", "--set", "u2"]);
    assert_eq!(o.code, EXIT_PASS);
    assert!(o.stdout.contains("# b -> 0"));

    let path = temp_file("line.graph", "graph L\nvertex x\nvertex y\nedge e x -> y\n");
    let o = call(&["closures", "--graph", path.to_str().unwrap(), "--set", "y"]);
    assert_eq!(o.stdout.trim(), "{x,y}");
    let o = call(&["quotient", "--graph", path.to_str().unwrap(), "--set", "y"]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("saturated: no"));
    assert!(o.stdout.contains("witness: CK2 at x"), "{}", o.stdout);

    let o = call(&["quotient", "--corpus", "podles", "--set", "w"]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("not hereditary"));

    let o = call(&["export-dot", "--corpus", "podles"]);
    assert!(o.stdout.contains("\"w\" -> \"u1\" [label=\"a\"];"));
}
