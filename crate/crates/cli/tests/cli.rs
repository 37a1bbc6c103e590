//! End-to-end behaviour of the `zmspec` binary: outputs, formats and exit
//! codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zmspec"))
        .args(args)
        .env_remove("ZMSPEC_GUARDRAIL")
        .output()
        .expect("zmspec binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn theta_examples() {
    for (n, m, want) in [
        ("3", "4", "28"),
        ("3", "6", "91"),
        ("2", "2", "3"),
        ("3", "12", "364"),
    ] {
        let out = run(&["theta", "-n", n, "-m", m]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), want);
    }
}

#[test]
fn invalid_sizes_exit_2() {
    assert_eq!(code(&run(&["theta", "-n", "1", "-m", "4"])), 2);
    assert_eq!(code(&run(&["theta", "-n", "3", "-m", "1"])), 2);
    assert_eq!(code(&run(&["theta", "-n", "3"])), 2);
    assert_eq!(
        code(&run(&[
            "points",
            "-n",
            "3",
            "-m",
            "2",
            "--ordering",
            "k-grouped"
        ])),
        2
    );
}

#[test]
fn points_listing() {
    let out = stdout(&run(&["points", "-n", "3", "-m", "2"]));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0], "0,0,0,1");
    assert_eq!(rows[6], "6,1,1,1");
    assert_eq!(
        stdout(&run(&["points", "-n", "2", "-m", "2"]))
            .lines()
            .count(),
        4
    );
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "points",
        "-n",
        "3",
        "-m",
        "4",
        "--ordering",
        "k-grouped",
        "--format",
        "json",
    ])))
    .unwrap();
    let labels: Vec<&str> = json["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels.len(), 28);
    assert_eq!(
        &labels[7..14],
        ["021", "012", "013", "102", "103", "112", "113"]
    );
}

#[test]
fn guardrail_exits_3() {
    assert_eq!(
        code(&run(&["points", "-n", "3", "-m", "4", "--guardrail", "27"])),
        3
    );
    assert_eq!(
        code(&run(&["points", "-n", "3", "-m", "4", "--guardrail", "28"])),
        0
    );
    let out = Command::new(env!("CARGO_BIN_EXE_zmspec"))
        .args(["matrix", "-n", "3", "-m", "4"])
        .env("ZMSPEC_GUARDRAIL", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert_eq!(code(&run(&["theta", "-n", "8", "-m", "1000"])), 0);
    assert_eq!(code(&run(&["matrix", "-n", "8", "-m", "1000"])), 3);
}

#[test]
fn a_for_p22_is_a_permutation_matrix() {
    let out = stdout(&run(&[
        "matrix", "-n", "2", "-m", "2", "--which", "A", "--format", "csv",
    ]));
    assert_eq!(out, "label,01,10,11\n01,0,1,0\n10,1,0,0\n11,0,0,1\n");
}

#[test]
fn matrix_formats() {
    let mm = stdout(&run(&[
        "matrix",
        "-n",
        "3",
        "-m",
        "2",
        "--format",
        "matrixmarket",
    ]));
    let mut lines = mm
        .lines()
        .filter(|l| !l.starts_with('%') || l.starts_with("%%"));
    assert_eq!(
        lines.next(),
        Some("%%MatrixMarket matrix array integer general")
    );
    assert_eq!(lines.next(), Some("7 7"));
    let entries: Vec<i64> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(entries.len(), 49);
    assert_eq!(entries.iter().sum::<i64>(), 21 + 42);
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "matrix", "-n", "3", "-m", "2", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(json["entries"][0][0], 3);
    assert_eq!(json["labels"][6], "111");
    let csv = stdout(&run(&[
        "matrix", "-n", "2", "-m", "11", "--which", "A", "--format", "csv",
    ]));
    assert!(csv.starts_with("label,\"0,1\",\"1,0\","));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("zmspec-cli-test-{}.txt", std::process::id()));
    let out = run(&[
        "matrix",
        "-n",
        "3",
        "-m",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("(001) 3 1 1 1 1 1 1\n"));
}

#[test]
fn spectrum_examples() {
    let out = stdout(&run(&["spectrum", "-n", "3", "-m", "2"]));
    let pairs: Vec<(String, String)> = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            (it.next().unwrap().into(), it.next().unwrap().into())
        })
        .collect();
    assert_eq!(pairs, [("9".into(), "1".into()), ("2".into(), "6".into())]);

    for (m, count) in [("4", 3), ("6", 4)] {
        let out = run(&["spectrum", "-n", "3", "-m", m, "--verify"]);
        assert_eq!(code(&out), 0);
        let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["all_ok"], true);
        assert_eq!(report["entries"].as_array().unwrap().len(), count);
        assert!(report["entries"][0]["lambda"].is_string());
    }
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "spectrum", "-n", "3", "-m", "4", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(json["entries"][2]["lambda"], "4");
    assert_eq!(json["entries"][2]["multiplicity"], "21");
    // Far beyond 64 bits, but the table itself needs no enumeration.
    let big = stdout(&run(&[
        "spectrum", "-n", "40", "-m", "1024", "--format", "json",
    ]));
    assert!(big.contains("\"theta\""));
}

#[test]
fn tensor_check_examples() {
    for (n, m1, m2) in [("2", "2", "3"), ("3", "2", "3")] {
        let out = run(&["tensor-check", "-n", n, "--m1", m1, "--m2", m2]);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).trim_end().ends_with("pass"));
    }
    assert_eq!(
        code(&run(&["tensor-check", "-n", "2", "--m1", "2", "--m2", "4"])),
        2
    );
}

#[test]
fn count_examples() {
    let cases: [(&[&str], &str); 3] = [
        (&["--coeffs", "0", "0", "0", "0"], "closed 16, brute 16"),
        (
            &["--pair", "0,0,1", "0,1,0", "--layer", "0"],
            "closed 4, brute 4",
        ),
        (&["--coeffs", "2", "0", "0", "2"], "closed 4, brute 4"),
    ];
    for (extra, want) in cases {
        let mut args = vec!["count", "--p", "2", "--e", "2"];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out).trim(), want);
    }
    assert_eq!(
        code(&run(&[
            "count", "--p", "2", "--e", "2", "--coeffs", "-1", "3", "2", "-5"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "count", "--p", "2", "--e", "2", "--pair", "0,0,1", "0,1,0", "--layer", "3"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "count", "--p", "4", "--e", "1", "--coeffs", "1", "0", "0", "1"
        ])),
        2
    );
    assert_eq!(code(&run(&["count", "--p", "2", "--e", "2"])), 2);
}

#[test]
fn deterministic_output() {
    let args = ["matrix", "-n", "3", "-m", "6", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}
