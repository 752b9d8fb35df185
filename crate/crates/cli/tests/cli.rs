use std::process::{Command, Output};

fn ahseries(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahseries"))
        .args(args)
        .env_remove("AHSERIES_PRECISION")
        .output()
        .expect("run ahseries")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coeffs_csv() {
    let o = ahseries(&["coeffs", "--prime", "3", "--count", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,numerator,denominator,residue");
    assert_eq!(lines.len(), 7);
    assert_eq!(*lines.last().unwrap(), "5,7,40,1");

    let o = ahseries(&["coeffs", "--prime", "3", "--count", "1", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,numerator,denominator,residue\n0,1,1,1\n");
}

#[test]
fn coeffs_json_and_text() {
    let o = ahseries(&["coeffs", "--prime", "3", "--count", "7", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rows[6]["numerator"], "9");
    assert_eq!(rows[6]["denominator"], "80");
    assert_eq!(rows[6]["residue"], 0);

    let o = ahseries(&["coeffs", "--prime", "3", "--count", "3"]);
    assert!(stdout(&o).lines().last().unwrap().ends_with("1/2"));
}

#[test]
fn usage_errors_exit_2() {
    let o = ahseries(&["coeffs", "--prime", "4", "--count", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("modulus not prime"));

    for args in [
        &[
            "verify",
            "--prime",
            "2",
            "--precision",
            "64",
            "--identity",
            "eq2",
        ][..],
        &[
            "verify",
            "--prime",
            "3",
            "--precision",
            "64",
            "--identity",
            "remark_p2",
        ],
        &["verify", "--prime", "3", "--identity", "nope"],
        &["verify", "--prime", "5", "--precision", "0"],
        &[
            "verify",
            "--prime",
            "5",
            "--precision",
            "9",
            "--identity",
            "eq2",
        ],
        &[
            "verify",
            "--prime",
            "3",
            "--precision",
            "50",
            "--perturb",
            "80",
        ],
        &["table", "--prime", "2"],
        &["table", "--prime", "3", "--format", "xml"],
        &["coeffs"],
    ] {
        assert_eq!(ahseries(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_single_identity_json() {
    let o = ahseries(&[
        "verify",
        "--prime",
        "3",
        "--precision",
        "100",
        "--identity",
        "prop_xp",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 1);
    assert_eq!(reports[0]["identity"], "prop_xp");
    assert_eq!(reports[0]["holds"], true);
}

#[test]
fn json_round_trips() {
    let o = ahseries(&[
        "verify",
        "--prime",
        "3",
        "--precision",
        "60",
        "--perturb",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let reports: Vec<ahseries::VerificationReport> = serde_json::from_str(&text).unwrap();
    assert!(reports.iter().any(|r| !r.holds && r.witness.is_some()));
    assert_eq!(serde_json::to_string_pretty(&reports).unwrap() + "\n", text);
}

#[test]
fn p2_all_skips_odd_only() {
    let o = ahseries(&[
        "verify",
        "--prime",
        "2",
        "--precision",
        "64",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("remark_p2,2,64,holds,true")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("eq2,2,64,skipped,false")));
}

#[test]
fn precision_from_env_and_flag_wins() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_ahseries"));
        cmd.args(["coeffs", "--prime", "5", "--format", "csv"])
            .env_remove("AHSERIES_PRECISION");
        if let Some(v) = env {
            cmd.env("AHSERIES_PRECISION", v);
        }
        if let Some(v) = flag {
            cmd.args(["--precision", v]);
        }
        String::from_utf8(cmd.output().unwrap().stdout)
            .unwrap()
            .lines()
            .count()
            - 1
    };
    assert_eq!(run(None, None), 200);
    assert_eq!(run(Some("12"), None), 12);
    assert_eq!(run(Some("12"), Some("7")), 7);
}

#[test]
fn table_grid() {
    let o = ahseries(&["table", "--prime", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));

    let o = ahseries(&["table", "--prime", "13", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let cells: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cells.as_array().unwrap().len(), 169);

    let o = ahseries(&["table", "--prime", "5"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(!text.contains('*'));
}

#[test]
fn writes_to_out_file() {
    let path = std::env::temp_dir().join(format!("ahseries-cli-{}.csv", std::process::id()));
    let o = ahseries(&[
        "coeffs",
        "--prime",
        "3",
        "--count",
        "6",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.ends_with("5,7,40,1\n"));
}

#[test]
fn text_reports_failures() {
    let o = ahseries(&[
        "verify",
        "--prime",
        "5",
        "--precision",
        "100",
        "--identity",
        "eq2",
        "--perturb",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILS at X^"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eq2:"));
}
