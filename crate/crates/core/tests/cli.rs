use std::process::Command;

use serde_json::Value;

const A3_TILDE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/a3tilde.json");
const WILD: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/wild.json");
const CYCLIC: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/cyclic.json");
const KRONECKER: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/kronecker.json");
const A2: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/a2.json");

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qstab").chain(args.iter().copied());
    let code = qstab::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn slopes_finite_report() {
    let v = json(&[
        "slopes", "-q", A3_TILDE, "-w", "1,1,2,0", "--format", "json",
    ]);
    assert_eq!(v["verdict"], "finite");
    assert_eq!(v["case"], "TameCategory");
    assert_eq!(v["mu_delta"], "1/1");
    assert_eq!(
        v["slopes"],
        serde_json::json!(["0/1", "1/2", "2/3", "1/1", "2/1"])
    );
    assert_eq!(v["witnesses"]["1/2"], serde_json::json!([0, 1, 0, 1]));
    assert!(v["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .all(Value::is_string));
}

#[test]
fn slopes_infinite_report() {
    let v = json(&[
        "slopes", "-q", A3_TILDE, "-w", "3,2,2,1", "--format", "json",
    ]);
    assert_eq!(v["verdict"], "infinite");
    assert_eq!(v["case"], "RegularCategory");
    assert_eq!(v["mu_delta"], "2/1");
    assert_eq!(v["family_base"], serde_json::json!([0, 1, 1, 1]));
    assert_eq!(
        v["family_slopes"],
        serde_json::json!(["5/3", "13/7", "21/11"])
    );
    let v = json(&[
        "slopes", "-q", A3_TILDE, "-w", "3,2,2,1", "--format", "json", "--count", "5",
    ]);
    assert_eq!(v["family_slopes"].as_array().unwrap().len(), 5);
}

#[test]
fn classify_text() {
    let (code, out, _) = run(&["classify", "-q", A3_TILDE, "-w", "3,2,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "RegularCategory; X_θ infinite");
    let (_, out, _) = run(&["classify", "-q", A3_TILDE, "-w", "1,2,3,2"]);
    assert_eq!(out.lines().next().unwrap(), "DynkinCategory; X_θ finite");
}

#[test]
fn semistable_report() {
    let v = json(&[
        "semistable",
        "-q",
        A3_TILDE,
        "-w",
        "1,2,3,2",
        "-d",
        "1,1,0,1",
        "--format",
        "json",
    ]);
    assert_eq!(v["status"], "Unstable");
    assert_eq!(v["violator"], serde_json::json!([0, 1, 0, 1]));
    assert_eq!(v["slope"], "5/3");
    let (code, out, _) = run(&[
        "semistable",
        "-q",
        A3_TILDE,
        "-w",
        "1,2,3,2",
        "-d",
        "1,1,0,1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("status: Unstable") && out.contains("violator: [0, 1, 0, 1]"));
}

#[test]
fn negative_weights_parse() {
    let v = json(&[
        "slopes",
        "-q",
        A3_TILDE,
        "-w",
        "-1,-1,-2,0",
        "--format",
        "json",
    ]);
    assert_eq!(v["verdict"], "finite");
    assert_eq!(v["slopes"][0], "-2/1");
}

#[test]
fn structure_reports() {
    let v = json(&["tubes", "-q", A3_TILDE, "--format", "json"]);
    assert_eq!(
        v,
        serde_json::json!([
            {"rank": 2, "quasi_simples": [[0, 0, 1, 0], [1, 1, 0, 1]]},
            {"rank": 2, "quasi_simples": [[0, 1, 0, 0], [1, 0, 1, 1]]}
        ])
    );
    let v = json(&["roots", "-q", A3_TILDE, "--format", "json"]);
    assert_eq!(v["preprojective"].as_array().unwrap().len(), 4);
    assert_eq!(v["regular"].as_array().unwrap().len(), 4);
    let v = json(&["info", "-q", A3_TILDE, "--format", "json"]);
    assert_eq!(v["type"], "Euclidean(Ã, 3)");
    assert_eq!(v["delta"], serde_json::json!([1, 1, 1, 1]));
    let v = json(&["info", "-q", A2, "--format", "json"]);
    assert_eq!(v["type"], "Dynkin(A, 2)");
    assert!(v.get("delta").is_none());
}

#[test]
fn oracle_subcommand() {
    let v = json(&[
        "oracle", "-q", KRONECKER, "-d", "1,1", "-w", "1,0", "--format", "json", "--seed", "4",
    ]);
    assert_eq!(v["subdims"], serde_json::json!([[0, 0], [0, 1], [1, 1]]));
    assert_eq!(v["verdict"]["status"], "Stable");
    let again = json(&[
        "oracle", "-q", KRONECKER, "-d", "1,1", "-w", "1,0", "--format", "json", "--seed", "4",
    ]);
    assert_eq!(v, again);
    let (code, _, err) = run(&["oracle", "-q", KRONECKER, "-d", "2,2"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn user_errors_exit_2_with_one_line() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["slopes", "-q", WILD, "-w", "1,0"],
        vec!["slopes", "-q", A2, "-w", "1,0"],
        vec!["info", "-q", CYCLIC],
        vec!["slopes", "-q", A3_TILDE, "-w", "1,2"],
        vec!["slopes", "-q", A3_TILDE, "-w", "1,a,2,3"],
        vec![
            "semistable",
            "-q",
            A3_TILDE,
            "-w",
            "1,2,3,2",
            "-d",
            "2,2,2,2",
        ],
        vec![
            "semistable",
            "-q",
            A3_TILDE,
            "-w",
            "1,2,3,2",
            "-d",
            "0,-1,0,0",
        ],
        vec!["slopes", "-q", "/nonexistent/quiver.json", "-w", "1"],
        vec!["slopes", "-q", A3_TILDE],
        vec!["frobnicate"],
        vec!["slopes", "-q", A3_TILDE, "-w", "1,1,2,0", "--bound", "0"],
    ];
    for args in cases {
        let (code, out, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {out} {err}");
        assert!(out.is_empty(), "{args:?}");
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
    }
    let (_, _, err) = run(&["slopes", "-q", WILD, "-w", "1,0"]);
    assert!(err.contains("Wild"), "{err}");
    let (_, _, err) = run(&["info", "-q", CYCLIC]);
    assert!(err.contains("cycle"), "{err}");
}

#[test]
fn resource_limit_exits_3_with_partial_report() {
    let out = Command::new(env!("CARGO_BIN_EXE_qstab"))
        .args([
            "slopes", "-q", A3_TILDE, "-w", "1,1,2,0", "--format", "json",
        ])
        .env("QSTAB_MAX_BOX", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "resource_limit");
}

#[test]
fn binary_reports_are_byte_stable() {
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_qstab"))
            .args([
                "slopes", "-q", A3_TILDE, "-w", "1,2,3,2", "--format", "json",
            ])
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let wild = Command::new(env!("CARGO_BIN_EXE_qstab"))
        .args(["classify", "-q", WILD, "-w", "1,0"])
        .output()
        .unwrap();
    assert_eq!(wild.status.code(), Some(2));
}

#[test]
fn text_and_json_carry_the_same_values() {
    let v = json(&[
        "slopes", "-q", A3_TILDE, "-w", "1,1,2,0", "--format", "json",
    ]);
    let (_, text, _) = run(&["slopes", "-q", A3_TILDE, "-w", "1,1,2,0"]);
    for s in v["slopes"].as_array().unwrap() {
        assert!(text.contains(s.as_str().unwrap()));
    }
    for c in v["certificates"].as_array().unwrap() {
        assert!(text.contains(c.as_str().unwrap()));
    }
    assert!(text.contains("witnesses.1/2: [0, 1, 0, 1]"));
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("slopes"));
}
