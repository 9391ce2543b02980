use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_classprod");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eta_on_extraspecial() {
    let o = run(&[
        "eta",
        "--named",
        "extraspecial_p3",
        "--p",
        "3",
        "--class-rep",
        "auto-noncentral",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("η(AA⁻¹)=3"), "{out}");
    assert!(out.contains("dl(G/C_G(A)) = 1 ≤ 2η−1 = 5"), "{out}");
}

#[test]
fn eta_with_second_class() {
    let o = run(&[
        "eta",
        "--named",
        "quaternion8",
        "--class-rep",
        "2",
        "--b-rep",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eta_ab"], 2);
    assert_eq!(v["ab_meets_center"], true);
}

#[test]
fn verify_cyclic_all() {
    let o = run(&["verify", "--named", "cyclic", "--n", "12", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    assert_eq!(
        out.lines().filter(|l| l.contains("[cyclic(12)]")).count(),
        10
    );
}

#[test]
fn verify_s4_theorem_b_skips() {
    let o = run(&[
        "verify",
        "--named",
        "symmetric",
        "--n",
        "4",
        "--suite",
        "theorem_B",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["status"], "skipped");
    assert_eq!(v[0]["skip_reason"], "not supersolvable");
    assert_eq!(v[0]["check_name"], "theorem_B");
    for key in ["group", "cases", "witnesses", "elapsed_ms"] {
        assert!(v[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_examples_suite() {
    let o = run(&["verify", "--suite", "examples"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS examples"));
}

#[test]
fn usage_and_build_errors_exit_2() {
    for args in [
        &[
            "verify",
            "--named",
            "cyclic",
            "--n",
            "4",
            "--suite",
            "theorem_Q",
        ][..],
        &["inspect", "--named", "nonesuch", "--n", "4"],
        &[
            "inspect",
            "--named",
            "symmetric",
            "--n",
            "5",
            "--max-order",
            "60",
        ],
        &["scan", "--threads", "0"],
        &["classes"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn spec_file_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("g.json");
    std::fs::write(
        &spec,
        r#"{"type":"direct","components":[{"type":"named","name":"cyclic","n":2},{"type":"named","name":"symmetric","n":3}]}"#,
    )
    .unwrap();
    let out = dir.path().join("classes.csv");
    let o = run(&[
        "classes",
        "--spec",
        spec.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 1 + 6);
}

#[test]
fn scan_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.jsonl");
    std::fs::write(
        &corpus,
        "# small corpus\n\
         {\"type\":\"named\",\"name\":\"symmetric\",\"n\":3}\n\
         {\"type\":\"named\",\"name\":\"dihedral\",\"n\":6}\n\
         {\"type\":\"named\",\"name\":\"symmetric\",\"n\":4}\n\
         {\"type\":\"named\",\"name\":\"quaternion8\"}\n",
    )
    .unwrap();
    let c = corpus.to_str().unwrap();
    let one = run(&["scan", "--spec", c, "--threads", "1"]);
    let four = run(&["scan", "--spec", c, "--threads", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    assert!(!text.contains('\r'));
    assert!(text.lines().all(|l| l == l.trim_end()));
    let s3_rows = text
        .lines()
        .filter(|l| l.starts_with("symmetric(3),"))
        .count();
    assert_eq!(s3_rows, 3);
    assert!(String::from_utf8(one.stderr).unwrap().contains("least q"));
}
