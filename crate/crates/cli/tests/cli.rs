use std::process::{Command, Output};

use serde_json::Value;

fn concount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = concount(&full);
    assert!(
        o.status.success(),
        "{:?}: {}",
        args,
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn count_examples() {
    for (code, constraint, want) in [
        ("rm:m=4,r=3", "rll:d=1", "1292"),
        ("hamming:m=4", "rll:d=1", "101"),
        ("rm:m=4,r=2", "even-strict", "198"),
        ("rm:m=4,r=2", "2charge", "16"),
    ] {
        let v = json(&["count", "--code", code, "--constraint", constraint]);
        assert_eq!(v["result"]["count"], want, "{code} {constraint}");
    }
}

#[test]
fn count_methods_agree() {
    for m in ["auto", "dual", "direct", "brute"] {
        let v = json(&[
            "count",
            "--code",
            "hamming:m=3",
            "--constraint",
            "subblock:p=7,z=0",
            "--method",
            m,
        ]);
        assert_eq!(v["result"]["count"], "1");
    }
    let v = json(&[
        "count",
        "--code",
        "hamming:m=4",
        "--constraint",
        "2charge",
        "--method",
        "dual",
    ]);
    assert_eq!(v["result"]["method"], "dual_sum");
    assert_eq!(v["result"]["dual_dimension_used"], 4);
}

#[test]
fn big_counts_are_strings() {
    let v = json(&["count", "--code", "rm:m=7,r=5", "--constraint", "2charge"]);
    assert_eq!(v["result"]["count"], "144115188075855872");
    assert!(v["timing_ms"].is_null());
}

#[test]
fn json_and_csv_are_deterministic() {
    for fmt in ["json", "csv"] {
        let args = [
            "bound",
            "--n",
            "9",
            "--d",
            "3",
            "--constraint",
            "2charge",
            "--lp",
            "all",
            "--format",
            fmt,
        ];
        let a = concount(&args);
        let b = concount(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{fmt}");
    }
}

#[test]
fn timing_flag_fills_the_field() {
    let v = json(&[
        "count",
        "--code",
        "hamming:m=3",
        "--constraint",
        "2charge",
        "--timing",
    ]);
    assert!(v["timing_ms"].as_f64().is_some());
}

#[test]
fn bound_examples() {
    let v = json(&[
        "bound",
        "--n",
        "13",
        "--d",
        "9",
        "--constraint",
        "2charge",
        "--lp",
        "all",
    ]);
    let close = |x: &Value, y: f64| (x.as_f64().unwrap() - y).abs() < 5e-3;
    assert!(close(&v["result"]["primary"]["code_size_bound"], 2.828));
    assert!(close(&v["result"]["gensph"], 16.0));
    assert!(close(&v["result"]["delsarte"], 3.333));

    let v = json(&["bound", "--n", "10", "--d", "5", "--constraint", "rll:d=2"]);
    assert_eq!(v["result"]["primary"]["program"], "del_constrained");
    assert!(close(&v["result"]["primary"]["code_size_bound"], 7.856));

    let v = json(&["bound", "--n", "10", "--d", "3"]);
    assert_eq!(v["result"]["primary"]["program"], "del_classic");
    assert!(close(&v["result"]["primary"]["code_size_bound"], 85.333));
}

#[test]
fn bound_text_has_three_decimals() {
    let o = concount(&["bound", "--n", "13", "--d", "3", "--constraint", "2charge"]);
    assert!(stdout(&o).contains("45.255"), "{}", stdout(&o));
}

#[test]
fn lp_dump_is_written() {
    let dir = std::env::temp_dir().join(format!("concount-dump-{}", std::process::id()));
    let o = concount(&[
        "bound",
        "--n",
        "6",
        "--d",
        "3",
        "--lp-dump",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&dir).unwrap();
    std::fs::remove_file(&dir).ok();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    assert!(lines.next().unwrap().starts_with("max "));
    assert!(lines.next().unwrap().contains(">="));
}

#[test]
fn fourier_words_and_weights() {
    let v = json(&[
        "fourier",
        "--constraint",
        "odd-strict",
        "--word",
        "01010",
        "--word",
        "10000",
    ]);
    assert_eq!(v["result"]["values"][0]["F"], "0");
    assert_eq!(v["result"]["values"][1]["F"], "4");
    let v = json(&[
        "fourier",
        "--constraint",
        "weight:i=2",
        "--n",
        "4",
        "--by-weight",
    ]);
    let sums: Vec<&str> = v["result"]["weight_sums"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    // K_2(j) times C(4, j): 6, 0, -12, 0, 6.
    assert_eq!(sums, ["6", "0", "-12", "0", "6"]);
    let v = json(&["fourier", "--constraint", "2charge", "--n", "3"]);
    assert_eq!(v["result"]["values"].as_array().unwrap().len(), 8);
}

#[test]
fn weight_dist_in_code_and_space() {
    let v = json(&[
        "weight-dist",
        "--constraint",
        "2charge",
        "--code",
        "hamming:m=3",
    ]);
    assert_eq!(v["result"]["total"], "4");
    let v = json(&["weight-dist", "--constraint", "even-strict", "--n", "17"]);
    assert_eq!(v["result"]["counts"][3], "120");
}

#[test]
fn tables_report_status() {
    let o = concount(&["table", "--id", "V"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1292"));
    let o = concount(&["table", "--id", "odd-counts"]);
    assert_eq!(
        o.status.code(),
        Some(1),
        "the stated Hamming closed form is off by a factor 2"
    );
    assert!(stdout(&o).contains("MISMATCH"));
    let o = concount(&["table", "--id", "II", "--max-n", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIPPED"));
}

#[test]
fn verify_selects_suites_and_reports_faults() {
    let v = json(&["verify", "--max-n", "8", "--suites", "fourier"]);
    let names: Vec<&str> = v["result"]["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["char-sum", "identities"]);
    assert_eq!(v["result"]["passed"], true);

    let o = concount(&[
        "verify",
        "--max-n",
        "5",
        "--suites",
        "macwilliams",
        "--inject-fault",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["counterexample"]["suite"], "macwilliams");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| concount(args).status.code();
    assert_eq!(
        code(&["count", "--code", "golay", "--constraint", "2charge"]),
        Some(2)
    );
    assert_eq!(
        code(&["count", "--code", "rm:m=4,r=2", "--constraint", "rll"]),
        Some(2)
    );
    assert_eq!(code(&["count", "--code", "rm:m=4,r=2"]), Some(2));
    assert_eq!(code(&["table", "--id", "VII"]), Some(2));
    assert_eq!(
        code(&["count", "--code", "rm:m=9,r=4", "--constraint", "2charge"]),
        Some(3)
    );
    assert_eq!(
        code(&["bound", "--n", "20", "--d", "3", "--constraint", "rll:d=1"]),
        Some(3)
    );
    assert_eq!(
        code(&[
            "bound",
            "--n",
            "8",
            "--d",
            "3",
            "--constraint",
            "rll:d=1",
            "--lp",
            "del-sym"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "count",
            "--code",
            "file:/nonexistent/code.txt",
            "--constraint",
            "2charge"
        ]),
        Some(1)
    );
}

#[test]
fn file_codes_load() {
    let path = std::env::temp_dir().join(format!("concount-code-{}.txt", std::process::id()));
    std::fs::write(
        &path,
        "n=7 k=4 kind=generator\n1000110\n0100101\n0010011\n0001111\n",
    )
    .unwrap();
    let arg = format!("file:{}", path.display());
    let v = json(&["count", "--code", &arg, "--constraint", "none"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v["result"]["count"], "16");
}
