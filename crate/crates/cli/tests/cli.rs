use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qpm(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpm"))
        .args(args)
        .current_dir(dir)
        .env_remove("QPM_SEED")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn index_of_abab() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "abab").unwrap();
    let out = qpm(dir.path(), &["index", "--text", "t.txt", "--out", "i.json"]);
    assert_eq!(out.status.code(), Some(0));
    let first = fs::read(dir.path().join("i.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["indicators"].as_object().unwrap().len(), 2);
    qpm(dir.path(), &["index", "--text", "t.txt", "--out", "i.json"]);
    assert_eq!(fs::read(dir.path().join("i.json")).unwrap(), first);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "abc").unwrap();
    fs::write(dir.path().join("empty.txt"), "").unwrap();
    assert_eq!(
        qpm(dir.path(), &["search", "--nope"]).status.code(),
        Some(1)
    );
    assert_eq!(qpm(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(
        qpm(
            dir.path(),
            &[
                "search",
                "--text",
                "t.txt",
                "--pattern",
                "abc",
                "--r",
                "sometimes"
            ]
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        qpm(
            dir.path(),
            &["baseline", "--text", "t.txt", "--pattern", "abcd"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        qpm(
            dir.path(),
            &["index", "--text", "empty.txt", "--out", "x.json"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        qpm(
            dir.path(),
            &["index", "--text", "missing.txt", "--out", "x.json"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        qpm(
            dir.path(),
            &["synth", "init-state", "--s", "5", "--m", "5", "--verify"]
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        qpm(
            dir.path(),
            &[
                "synth",
                "transposition",
                "--width",
                "12",
                "--a",
                "0",
                "--b",
                "5",
                "--verify"
            ]
        )
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        qpm(
            dir.path(),
            &[
                "synth",
                "transposition",
                "--width",
                "13",
                "--a",
                "0",
                "--b",
                "5",
                "--verify"
            ]
        )
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn synth_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = qpm(
        dir.path(),
        &[
            "synth",
            "transposition",
            "--width",
            "2",
            "--a",
            "0",
            "--b",
            "3",
            "--verify",
        ],
    );
    let text = stdout(&out);
    assert!(
        text.contains("MCX=3") && text.contains("verify PASS"),
        "{text}"
    );

    let out = qpm(
        dir.path(),
        &[
            "synth", "oracle", "--text", "ab", "--symbol", "a", "--verify",
        ],
    );
    assert!(stdout(&out).contains("verify PASS"));

    let out = qpm(
        dir.path(),
        &[
            "synth",
            "init-state",
            "--s",
            "3",
            "--m",
            "2",
            "--verify",
            "--emit",
            "c.qc",
        ],
    );
    assert!(stdout(&out).contains("verify PASS fidelity=1.000000000000"));
    let circuit = fs::read_to_string(dir.path().join("c.qc")).unwrap();
    assert!(circuit.starts_with("QUBITS 6\n"));
}

#[test]
fn baseline_json() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "abcabc\n").unwrap();
    let out = qpm(
        dir.path(),
        &["baseline", "--text", "t.txt", "--pattern", "bc"],
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["best_score"], 2);
    assert_eq!(doc["offsets"], serde_json::json!([1, 4]));
}

#[test]
fn absent_pattern_gives_flat_distribution() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "abababababab").unwrap();
    let out = qpm(
        dir.path(),
        &[
            "search",
            "--text",
            "t.txt",
            "--pattern",
            "xyz",
            "--trials",
            "20",
            "--r",
            "fixed:0",
            "--format",
            "csv",
            "--out",
            "d.csv",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(dir.path().join("d.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("position,probability"));
    let probs: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(probs.len(), 12);
    assert!(probs[..10].iter().all(|p| (p - 0.1).abs() < 1e-12));
    assert!(probs[10..].iter().all(|&p| p == 0.0));
    let bundle: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("d.csv.bundle.json")).unwrap()).unwrap();
    assert_eq!(bundle["spec"]["pattern"], "xyz");
    assert_eq!(bundle["spec"]["format"], "csv");
}

#[test]
fn planted_default_instance_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qpm"))
        .args(["plant", "--text-out", "t.txt", "--pattern-out", "p.txt"])
        .current_dir(dir.path())
        .env("QPM_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "planted offset 177\n");
    assert_eq!(fs::read(dir.path().join("t.txt")).unwrap().len(), 212);
    assert_eq!(fs::read(dir.path().join("p.txt")).unwrap().len(), 10);

    let base = stdout(&qpm(
        dir.path(),
        &["baseline", "--text", "t.txt", "--pattern", "@p.txt"],
    ));
    let doc: serde_json::Value = serde_json::from_str(&base).unwrap();
    assert_eq!(doc["offsets"], serde_json::json!([177]));

    let run = qpm(
        dir.path(),
        &[
            "search",
            "--text",
            "t.txt",
            "--pattern",
            "@p.txt",
            "--trials",
            "50",
            "--seed",
            "9",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(run.status.code(), Some(0));
    let summary = stdout(&run);
    assert!(summary.contains("classical  [177]"), "{summary}");
    let replay = qpm(dir.path(), &["replay", "r.json"]);
    assert_eq!(replay.status.code(), Some(0));

    let mut doc: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("r.json")).unwrap()).unwrap();
    doc["spec"]["seed"] = 10.into();
    fs::write(
        dir.path().join("r.json"),
        serde_json::to_string_pretty(&doc).unwrap() + "\n",
    )
    .unwrap();
    assert_eq!(
        qpm(dir.path(), &["replay", "r.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "abcabcabdabc").unwrap();
    let run = |seed_env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qpm"));
        cmd.args([
            "search",
            "--text",
            "t.txt",
            "--pattern",
            "abd",
            "--trials",
            "30",
        ])
        .args(extra)
        .current_dir(dir.path())
        .env_remove("QPM_SEED");
        if let Some(s) = seed_env {
            cmd.env("QPM_SEED", s);
        }
        stdout(&cmd.output().unwrap())
    };
    assert_eq!(run(Some("44"), &[]), run(None, &["--seed", "44"]));
    assert!(run(None, &[]).contains("seed=0"));
}

#[test]
fn scaling_zero_functions() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&qpm(
        dir.path(),
        &[
            "scaling", "--family", "zero", "--n-min", "1", "--n-max", "3",
        ],
    ));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(&cols[1..5], &["0", "0", "0", "0"]);
    }
}

#[test]
fn scaling_counts_grow() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&qpm(dir.path(), &["scaling", "--seed", "1"]));
    let costs: Vec<u64> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
        .collect();
    assert_eq!(costs.len(), 6);
    assert!(costs.windows(2).all(|w| w[0] < w[1]), "{costs:?}");
}
