//! Command-line contract: outputs, exit codes, JSON round trips and golden files.
//! Set TORIGEN_BLESS=1 to rewrite the golden files.

use std::path::PathBuf;
use torigen::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<String> = std::iter::once("torigen").chain(args.iter().copied()).map(String::from).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, got: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("TORIGEN_BLESS").is_some() {
        std::fs::write(&path, got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(got, want, "{name}");
}

#[test]
fn class_of_three_flag() {
    let (code, out, _) = call(&["class", "--space", "U(3)/T3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "6*a1^3 + 6*a1*a2 - 6*a3");
}

#[test]
fn numeric_top_number_of_grassmannian() {
    let (code, out, _) = call(&["snumbers", "--space", "U(4)/U(2)xU(2)", "--numeric", "1,2,3,4", "--omega", "0,0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-20");
}

#[test]
fn usage_errors_exit_two_with_grammar() {
    for args in [&["class", "--space", "U(3)/Sp(1)"][..], &["frobnicate"], &["class"], &["class", "--space", "CP3", "--structure", "J9"]] {
        let (code, _, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(err.contains("U(n)/U(k1)x...xU(km)"), "{args:?}: {err}");
    }
}

#[test]
fn failed_check_exits_one() {
    let dir = std::env::temp_dir().join(format!("torigen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("bad.json");
    std::fs::write(&file, r#"{"0": [-1, 1, 1], "1": [1, 1, 1], "2": [1, 1, 1], "3": [1, 1, 1], "4": [1, 1, 1], "5": [1, 1, 1]}"#).unwrap();
    let (code, out, _) = call(&["stable", "--space", "U(3)/T3", "--assign", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("not admissible"));
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"0": [1, 1, 1], "1": [1, 1, 1], "2": [1, 1, 1], "3": [1, 1, 1], "4": [1, 1, 1], "5": [1, 1, 1], "epsilon": 1}"#).unwrap();
    assert_eq!(call(&["stable", "--space", "U(3)/T3", "--assign", good.to_str().unwrap()]).0, 0);
}

#[test]
fn json_reports_round_trip() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["class", "--space", "CP3"],
        vec!["chern", "--space", "SU(4)/S(U(1)xU(1)xU(2))", "--structure", "J2"],
        vec!["snumbers", "--space", "G2/SU(3)"],
        vec!["genus", "--space", "CP1", "--trunc", "4"],
        vec!["verify", "--space", "U(4)/U(2)xU(2)"],
        vec!["stable", "--space", "G2/SU(3)"],
        vec!["flag", "--n", "3", "--method", "tchi"],
        vec!["grassmann", "--q", "2", "--l", "2", "--xi", "3,2,1,0"],
        vec!["fgl", "--series", "a-of-b", "--trunc", "4"],
    ];
    for mut c in cases {
        c.extend(["--format", "json"]);
        let (code, out, err) = call(&c);
        assert_eq!(code, 0, "{c:?}: {err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(torigen::cli::render_json(&v), out, "{c:?}");
    }
}

#[test]
fn json_values_are_exact_strings() {
    let (_, out, _) = call(&["snumbers", "--space", "CP2", "--numeric", "1,5,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v["s_numbers"].as_array().unwrap() {
        assert!(row["value"].is_string());
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let one = call(&["--threads", "1", "stable", "--space", "CP3"]);
    let four = call(&["--threads", "4", "stable", "--space", "CP3"]);
    assert_eq!(one, four);
    assert!(one.1.starts_with("16 admissible"));
}

#[test]
fn cache_directory_is_written_and_reused() {
    let dir = std::env::temp_dir().join(format!("torigen-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let d = dir.to_str().unwrap();
    let first = call(&["--cache", d, "chern", "--space", "U(4)/U(2)xU(2)"]);
    assert_eq!(first.0, 0);
    assert!(dir.join("beta_4.txt").exists());
    assert!(dir.join("pq_memo.txt").exists());
    let second = call(&["--cache", d, "chern", "--space", "U(4)/U(2)xU(2)"]);
    assert_eq!(first, second);
    std::fs::write(dir.join("beta_4.txt"), "n 4\n(4,0,0,0): 1\n").unwrap();
    // a corrupt cache is reported, not silently recomputed
    assert_eq!(call(&["--cache", d, "class", "--space", "CP1"]).0, 1);
}

#[test]
fn golden_texts() {
    golden("class_m10_j3.txt", &call(&["class", "--space", "SU(4)/S(U(1)xU(1)xU(2))", "--structure", "J3"]).1);
    golden("chern_g42.txt", &call(&["chern", "--space", "U(4)/U(2)xU(2)"]).1);
    golden("flag4_corl.txt", &call(&["flag", "--n", "4", "--method", "corL"]).1);
    golden("grassmann_3_1.txt", &call(&["grassmann", "--q", "3", "--l", "1"]).1);
    golden("genus_s6.txt", &call(&["genus", "--space", "G2/SU(3)", "--trunc", "5"]).1);
    golden("stable_s6.json", &call(&["stable", "--space", "G2/SU(3)", "--format", "json"]).1);
    golden("fgl_b_of_a.txt", &call(&["fgl", "--series", "b-of-a", "--trunc", "4"]).1);
    golden("verify_m10_j1.txt", &call(&["verify", "--space", "SU(4)/S(U(1)xU(1)xU(2))", "--structure", "J1"]).1);
}

#[test]
fn reproduce_table_passes() {
    let (code, out, _) = call(&["reproduce", "--all"]);
    assert_eq!(code, 0, "{out}");
    for row in ["M10-J2 c1^5", "flag-even n=4", "S6-stable count"] {
        assert!(out.lines().any(|l| l.starts_with("PASS") && l.contains(row)), "{row}");
    }
    assert!(!out.contains("FAIL"));
}
