use std::process::{Command, Output};

fn cobarlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobarlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn validate_bundled_fixtures() {
    assert_eq!(code(&cobarlab(&["validate", "--fixture", "example1"])), 0);
    let bad = cobarlab(&["validate", "--fixture", "bad_degree"]);
    assert_eq!(code(&bad), 1);
    assert!(
        stdout(&bad).contains("degree violation"),
        "{}",
        stdout(&bad)
    );
    let bad = cobarlab(&["validate", "--fixture", "bad_span"]);
    assert_eq!(code(&bad), 1);
    assert!(
        stdout(&bad).contains("outside the span"),
        "{}",
        stdout(&bad)
    );
}

#[test]
fn validate_reads_files() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/example2.json");
    assert_eq!(code(&cobarlab(&["validate", path])), 0);
}

#[test]
fn cobar_example_one_dimensions() {
    let o = cobarlab(&[
        "cobar",
        "--fixture",
        "example1",
        "--coalgebra",
        "X",
        "--twisting",
        "beta",
        "--max-weight",
        "6",
        "--window",
        "0..3",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims = v["dims"].as_array().unwrap();
    for degree in [1, 2] {
        let weights: Vec<u64> = dims
            .iter()
            .filter(|d| d["degree"] == degree)
            .map(|d| {
                assert_eq!(d["dim"], 1);
                d["weight"].as_u64().unwrap()
            })
            .collect();
        assert_eq!(weights, (1..=6).collect::<Vec<_>>());
    }
    assert!(dims.iter().all(|d| d["degree"] != 0));
}

#[test]
fn cobar_c1_is_concentrated_in_degree_one() {
    let o = cobarlab(&[
        "cobar",
        "--fixture",
        "example2",
        "--coalgebra",
        "C1",
        "--twisting",
        "kappa_ass",
        "--max-weight",
        "6",
        "--window",
        "0..6",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for level in v["homology"].as_array().unwrap() {
        for (k, b) in level["betti"].as_object().unwrap() {
            assert_eq!(b.as_u64().unwrap() > 0, k == "1", "{level}");
        }
    }
}

#[test]
fn weq_exit_codes() {
    let run = |m: &str, t: &str, f: &str| {
        code(&cobarlab(&[
            "weq",
            "--fixture",
            f,
            "--morphism",
            m,
            "--twisting",
            t,
        ]))
    };
    assert_eq!(run("X_to_0", "epsilon", "example1"), 0);
    assert_eq!(run("X_to_0", "beta", "example1"), 1);
    assert_eq!(run("C1_to_C2", "kappa_ass", "example2"), 1);
    assert_eq!(run("C1_to_C2", "beta", "example2"), 0);
}

#[test]
fn weq_with_too_few_levels_is_unstable() {
    let o = cobarlab(&[
        "weq",
        "--fixture",
        "example1",
        "--morphism",
        "X_to_0",
        "--twisting",
        "beta",
        "--schedule",
        "3,4",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("unstable"));
}

#[test]
fn survives_renders_a_certificate() {
    let o = cobarlab(&[
        "survives",
        "--fixture",
        "example2",
        "--coalgebra",
        "C2",
        "--twisting",
        "kappa_ass",
        "--class",
        "~y",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("survives (stable)"));
}

#[test]
fn survives_rejects_uncertified_degrees() {
    let o = cobarlab(&[
        "survives",
        "--fixture",
        "example2",
        "--coalgebra",
        "C2",
        "--twisting",
        "kappa_ass",
        "--class",
        "~y",
        "--window",
        "0..4",
    ]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("certified"));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&cobarlab(&["cobar"])), 3);
    assert_eq!(code(&cobarlab(&["validate", "--fixture", "nope"])), 3);
    assert_eq!(
        code(&cobarlab(&[
            "validate",
            "--fixture",
            "example1",
            "--field",
            "F4"
        ])),
        3
    );
    assert_eq!(
        code(&cobarlab(&[
            "weq",
            "--fixture",
            "example1",
            "--morphism",
            "X_to_0",
            "--twisting",
            "beta",
            "--window",
            "3..1"
        ])),
        3
    );
    assert_eq!(
        code(&cobarlab(&[
            "cobar",
            "--fixture",
            "example1",
            "--coalgebra",
            "Y",
            "--twisting",
            "beta"
        ])),
        3
    );
}

#[test]
fn field_override_over_f5() {
    let o = cobarlab(&[
        "weq",
        "--fixture",
        "example2",
        "--field",
        "Fp:5",
        "--morphism",
        "C1_to_C2",
        "--twisting",
        "kappa_ass",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn paper_report_json_twin_matches_text() {
    let text = stdout(&cobarlab(&["paper-report"]));
    let json = cobarlab(&["paper-report", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let status = row["status"].as_str().unwrap().to_uppercase();
        let line = format!(
            "[{status}] {:<3} {}",
            row["id"].as_str().unwrap(),
            row["title"].as_str().unwrap()
        );
        assert!(text.contains(&line), "missing {line}");
    }
}

#[test]
fn paper_report_over_f5_skips_com_rows() {
    let o = cobarlab(&["paper-report", "--field", "F5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let status = |id: &str| {
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["id"] == id)
            .unwrap()["status"]
            .as_str()
            .unwrap()
            .to_string()
    };
    for id in ["2", "3", "6"] {
        assert_eq!(status(id), "skipped", "row {id}");
    }
    for id in ["1", "4", "5", "9"] {
        assert_eq!(status(id), "pass", "row {id}");
    }
    assert_eq!(v["table"][1]["status"], "skipped");
}
