use std::process::Command;

fn varlp(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_varlp")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn norm_of_an_interval_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("p.json");
    std::fs::write(
        &spec,
        r#"{"dimension": 1, "domain": {"lo": [0], "hi": [4]},
            "pieces": [{"kind": "constant", "box": {"lo": [0], "hi": [4]}, "value": 2}]}"#,
    )
    .unwrap();
    let out = dir.path().join("run");
    let (code, stdout) = varlp(&["norm", "--spec", spec.to_str().unwrap(), "--set", "0,4", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("norm = 2.0000000"), "{stdout}");
    for f in ["norm.csv", "norm.summary.txt", "norm.config.json"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let config: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("norm.config.json")).unwrap()).unwrap();
    assert_eq!(config["cells"], 256);
}

#[test]
fn exit_codes_follow_the_error_kind() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().to_str().unwrap();
    assert_eq!(varlp(&["bogus"]).0, 2);
    assert_eq!(varlp(&["example", "NOPE", "--out", o]).0, 2);
    assert_eq!(varlp(&["blowup", "--t", "3", "--out", o]).0, 1);
    assert_eq!(varlp(&["example", "HM_COUNTER", "--out", o]).0, 0);
}

#[test]
fn seeded_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let (code, _) = varlp(&["paircheck", "--instances", "10", "--kernel-instances", "5", "--seed", "42", "--out", d.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let read = |d: &std::path::Path| std::fs::read_to_string(d.join("paircheck.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
}
