use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn omql(args: &[&str]) -> Output {
    omql_env(args, &[])
}

fn omql_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_omql"));
    cmd.args(args).env_remove("OMQL_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("omql runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn demo_matches_golden_and_is_stable() {
    let a = omql(&["demo", "example1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), include_str!("golden/example1.txt"));
    assert_eq!(stdout(&omql(&["demo", "example1"])), stdout(&a));
    for row in [
        "H(φ(p⊙q))(t) | d        0        0",
        "(G(p)⊙G(q))(t) | 0        {0,e,h}  h",
        "(G(p)→G(q))(t) | {a',b'}  {a',b'}  a'",
    ] {
        assert!(stdout(&a).contains(row), "missing row {row}");
    }
}

#[test]
fn demo_json_rows_in_order() {
    let o = omql(&["--format", "json", "demo", "example1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["expr"], "H(φ(p⊙q))");
    assert_eq!(
        rows[5]["values"][1]["value"],
        serde_json::json!(["0", "e", "h"])
    );
    assert_eq!(v["relations"].as_array().unwrap().len(), 4);
}

#[test]
fn laws_on_non_reflexive_frame_is_a_precondition_error() {
    let o = omql(&["check", "laws", "--frame", &fixture("strict3.tf")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("reflexive"), "{}", stderr(&o));
}

#[test]
fn reconstruct_star_exhaustive_contains_r() {
    let o = omql(&[
        "reconstruct",
        "--mode",
        "star",
        "--exhaustive",
        "--frame",
        &fixture("chain3.tf"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("R ⊆ R*: yes"));
    assert!(out.contains("R* ∖ R: none"));
    assert!(
        out.contains("1\t1\t1\t1\n2\t0\t1\t1\n3\t0\t0\t1\n"),
        "{out}"
    );
}

#[test]
fn reconstruct_bar_with_verify() {
    let o = omql(&[
        "reconstruct",
        "--mode",
        "bar",
        "--verify",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["contains_original"], true);
    assert_eq!(v["definitive"], true);
    assert!(v["verify"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "pass"));
}

#[test]
fn reconstruct_over_cap_needs_sampling() {
    let o = omql_env(&["reconstruct", "--mode", "star"], &[("OMQL_CAP", "1000")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap"), "{}", stderr(&o));

    let args = [
        "reconstruct",
        "--mode",
        "star",
        "--sample",
        "200",
        "--seed",
        "7",
    ];
    let s = omql_env(&args, &[("OMQL_CAP", "1000")]);
    assert_eq!(s.status.code(), Some(0), "{}", stderr(&s));
    assert!(stdout(&s).contains("sampled 200, seed 7"));
    assert!(stdout(&s).contains("over-approximates"));
    assert_eq!(
        stdout(&s),
        stdout(&omql_env(&args, &[("OMQL_CAP", "1000")]))
    );
}

#[test]
fn eval_and_cmp() {
    let o = omql(&["eval", "--op", "imp", "--lhs", "{a,b}", "--rhs", "{f,i}"]);
    assert_eq!(stdout(&o), "{a',b'}\n");
    let o = omql(&["eval", "--op", "odot", "--lhs", "a", "--rhs", "a"]);
    assert_eq!(stdout(&o), "a\n");
    let o = omql(&["cmp", "--kind", "le1", "--lhs", "{a,b}", "--rhs", "{f',i'}"]);
    assert!(stdout(&o).ends_with("holds\n"));
    let o = omql(&["cmp", "--kind", "le", "--lhs", "{a,b}", "--rhs", "a'"]);
    assert!(stdout(&o).ends_with("fails\n"));
}

#[test]
fn tense_and_star_tables() {
    let o = omql(&[
        "tense",
        "--op",
        "G",
        "--val",
        &fixture("example1_q.val"),
        "--format",
        "tsv",
    ]);
    assert_eq!(stdout(&o), "t\tG(q)\n1\t{f,i}\n2\ta'\n3\ta'\n");
    let o = omql(&[
        "star",
        "--ops",
        "P,P",
        "--val",
        &fixture("example4_r.val"),
        "--cross-check",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v[0]["values"][0],
        serde_json::json!({"time": "1", "value": ["a"]})
    );
}

#[test]
fn tense_on_non_serial_frame_fails() {
    let o = omql(&[
        "tense",
        "--op",
        "P",
        "--values",
        "a,b,c",
        "--relation",
        "chain-lt",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("empty"), "{}", stderr(&o));
}

#[test]
fn checks_pass_on_fig1() {
    for args in [
        &["check", "dynamic-pair", "--sample", "100"][..],
        &["check", "laws", "--sample", "100"],
        &["check", "adjointness", "--poset", "bool2"],
    ] {
        let o = omql(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn theorem14_reports_seed_and_both_parts() {
    let o = omql(&[
        "check",
        "theorem14",
        "--direction",
        "i",
        "--ops",
        "G,H,G",
        "--seed",
        "3",
    ]);
    let out = stdout(&o);
    assert!(
        out.contains("hypothesis:") && out.contains("conclusion:"),
        "{out}"
    );
    assert!(out.contains("seed 3"));
    assert_ne!(o.status.code(), Some(2));
}

#[test]
fn validate_reports_fixpoint_complement() {
    let dir = std::env::temp_dir().join(format!("omql-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fix.omp");
    std::fs::write(
        &path,
        "element 0\nelement a\nelement 1\ncover 0 a\ncover a 1\ninv 0 1\ninv a a\n",
    )
    .unwrap();
    let p = path.to_string_lossy();
    let o = omql(&["validate", "--poset", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"), "{}", stdout(&o));
    let o = omql(&[
        "eval", "--poset", &p, "--op", "odot", "--lhs", "a", "--rhs", "a",
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(omql(&["check"]).status.code(), Some(2));
    assert_eq!(
        omql(&["tense", "--op", "X", "--values", "a"]).status.code(),
        Some(2)
    );
    assert_eq!(
        omql(&["eval", "--poset", "nope", "--op", "odot", "--lhs", "a", "--rhs", "a"])
            .status
            .code(),
        Some(2)
    );
}
