use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krull-arith"))
        .args(args)
        .env_remove("KRULL_ARITH_CACHE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn single_free_atom() {
    let v = json(&[
        "atoms",
        "--group",
        r#"{"free_rank":1}"#,
        "--set",
        "[[1],[-1]]",
    ]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["davenport"], 2);
}

#[test]
fn simplex_invariants_meet_expectations() {
    let v = json(&[
        "invariants",
        "--preset",
        "thm74",
        "--r",
        "2",
        "--alpha",
        "1",
    ]);
    assert_eq!(v["atoms"]["davenport"], 3);
    assert_eq!(v["delta"]["value"], serde_json::json!([1]));
    assert_eq!(v["delta"]["exact"], true);
    for k in ["omega", "tame"] {
        assert_eq!(v[k]["value"], 3, "{k}");
    }
    assert_eq!(v["catenary"]["value"]["c"], 3);
    assert_eq!(v["all_expectations_pass"], true);
}

#[test]
fn reports_are_deterministic_across_runs_and_threads() {
    let args = ["invariants", "--preset", "cyclic:5", "--threads"];
    let a = run(&[&args[..], &["1"]].concat());
    let b = run(&[&args[..], &["4"]].concat());
    let c = run(&[&args[..], &["4"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

fn cache_entries(dir: &Path) -> Vec<std::path::PathBuf> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect()
}

#[test]
fn cache_hits_match_cold_runs_and_corruption_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["invariants", "--preset", "cyclic:4", "--cache-dir", d];
    let cold = run(&args);
    assert!(cold.status.success());
    let entries = cache_entries(dir.path());
    assert_eq!(entries.len(), 1);
    let warm = run(&args);
    assert_eq!(cold.stdout, warm.stdout);

    std::fs::write(&entries[0], b"{ not json").unwrap();
    let again = run(&args);
    assert!(again.status.success());
    assert_eq!(cold.stdout, again.stdout);
    let repaired: Value = serde_json::from_slice(&std::fs::read(&entries[0]).unwrap()).unwrap();
    assert_eq!(repaired["atoms"]["count"], 7);

    let env = Command::new(env!("CARGO_BIN_EXE_krull-arith"))
        .args(&args[..3])
        .env("KRULL_ARITH_CACHE", d)
        .output()
        .unwrap();
    assert_eq!(env.stdout, cold.stdout);
    assert_eq!(cache_entries(dir.path()).len(), 1);
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&["invariants", "--preset", "cyclic:3"]);
    assert!(plain.get("timing_ms").is_none());
    let timed = json(&["invariants", "--preset", "cyclic:3", "--timing"]);
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn collapse_fails_the_first_condition() {
    let v = json(&["transfer-check", "--map", "collapse", "--bound", "4"]);
    assert_eq!(v["t1_ok"], false);
    assert_eq!(v["t1_counterexample"], "()");
}

#[test]
fn builtin_transfer_exit_codes() {
    let ok = run(&["transfer-check", "--map", "prop712", "--bound", "5"]);
    assert_eq!(ok.status.code(), Some(0));
    let broken = run(&["transfer-check", "--map", "prop712", "--bound", "6"]);
    assert_eq!(broken.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&broken.stdout).unwrap();
    assert_eq!(v["t1_ok"], true);
    assert_eq!(v["t2_ok"], false);
    assert_eq!(v["lengths_preserved"], false);
}

#[test]
fn custom_map_file() {
    let map = r#"{"source":{"group":{"free_rank":1},"elements":[[1],[-1]]},
                  "target":{"group":{"free_rank":0,"torsion":[2]},"elements":[[1]]},
                  "map":[[[1],[1]],[[-1],[1]]]}"#;
    let v = json(&["transfer-check", "--map", map, "--bound", "4"]);
    assert!(v["expected"]["t1_ok"].is_null());
    assert_eq!(v["t1_ok"], true);
}

#[test]
fn csv_and_markdown() {
    let csv = run(&["invariants", "--preset", "cyclic:3", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("k,lambda_k,rho_k,set\n"));
    assert_eq!(text.lines().count(), 5);
    let md = run(&["atoms", "--preset", "cyclic:3", "--format", "markdown"]);
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.starts_with("| key | value |\n| --- | --- |\n"));
    assert!(text.contains("| count | 4 |"));
}

#[test]
fn preset_build_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("box.json");
    let f = file.to_str().unwrap();
    let out = run(&[
        "preset", "build", "--preset", "cube", "--r", "2", "--out", f,
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let direct = json(&["atoms", "--preset", "cube:2"]);
    let loaded = json(&["atoms", "--alphabet", f]);
    assert_eq!(direct["atoms"], loaded["atoms"]);
    let list = json(&["preset", "list"]);
    assert!(list["families"]
        .as_array()
        .unwrap()
        .iter()
        .any(|f| f["name"] == "hypersurface"));
}

#[test]
fn lengths_modes() {
    let probe = json(&["lengths", "--preset", "cyclic:3", "--closure-probe"]);
    assert_eq!(probe["probe"]["verdict"], "closed_within_bound");
    let block = json(&[
        "lengths",
        "--preset",
        "cyclic:5",
        "--block",
        "[1]^10*[4]^10",
    ]);
    assert_eq!(block["set"], serde_json::json!([4, 7, 10]));
    let sum = json(&["lengths", "--lengths", "2,4", "--sumset", "{2,4}"]);
    assert_eq!(sum["sumset"], serde_json::json!([4, 6, 8]));
    let yes = json(&["lengths", "--member", "C4", "--lengths", "4,6,8"]);
    assert_eq!(yes["member"], true);
    let no = json(&["lengths", "--member", "C3", "--lengths", "4,6,8"]);
    assert_eq!(no["member"], false);
}

#[test]
fn decompose_and_divisor_theory() {
    let v = json(&["decompose", "--preset", "split1:2"]);
    assert_eq!(v["count"], 2);
    let d = json(&["divisor-theory", "--preset", "five_point"]);
    assert_eq!(d["holds"], true);
}

#[test]
fn atom_count_flags_the_quadratic_form() {
    let ok = run(&["atom-count", "--preset", "hypersurface:E8"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["count"], 9);
    let d6 = run(&[
        "atom-count",
        "--preset",
        "hypersurface:D6",
        "--brute-force",
        "16",
    ]);
    assert_eq!(d6.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&d6.stdout).unwrap();
    assert_eq!(v["count"], v["brute_force"]);
}

#[test]
fn bad_input_exits_one() {
    for args in [
        &["atoms", "--preset", "nope"][..],
        &["atoms"],
        &["atoms", "--preset", "cyclic:3", "--set", "[]"],
        &["invariants", "--preset", "cyclic:3", "--only", "bogus"],
        &["factorize", "--preset", "cyclic:3", "--block", "(1)"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}
