use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_skew-ek"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn family_output_is_accepted_everywhere() {
    let (code, ideal, _) = run(&["family", "random", "--n", "3", "--seed", "11", "--gens", "3", "--deg-cap", "3"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("skew-ek-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ideal.json");
    std::fs::write(&path, &ideal).unwrap();
    let path = path.to_str().unwrap();
    for sub in ["resolve", "verify", "invariants", "dg-table", "dg-verify", "homology-check"] {
        for format in ["json", "text"] {
            let (code, out, err) = run(&[sub, "--input", path, "--format", format]);
            assert_eq!(code, 0, "{sub} {format}: {err}");
            if format == "json" {
                let v: serde_json::Value = serde_json::from_str(&out).unwrap();
                assert_eq!(v["schema"], 1, "{sub}");
            }
        }
    }
    let v: serde_json::Value = serde_json::from_str(&ideal).unwrap();
    assert_eq!(v["schema"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_deterministic() {
    let ideal = r#"{"n":3,"generators":[[2,0,0],[1,1,0],[0,2,0],[1,0,1]]}"#;
    for args in [
        vec!["resolve", "--ideal", ideal, "--format", "json"],
        vec!["dg-verify", "--ideal", ideal, "--seed", "5"],
        vec!["homology-check", "--ideal", ideal, "--q-seed", "9", "--format", "json"],
    ] {
        let first = run(&args);
        assert_eq!(first.0, 0, "{:?}", first.2);
        assert_eq!(first, run(&args));
    }
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["verify", "--ideal", r#"{"n":2,"generators":[[1,1]]}"#]);
    assert_eq!(code, 2);
    assert!(err.contains("(x*y, 1): x^2 ∉ I"));
    assert_eq!(run(&["verify", "--ideal", "not json"]).0, 2);
    assert_eq!(run(&["verify", "--input", "/nonexistent/ideal.json"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    let ex = r#"{"n":2,"generators":[[2,0],[1,1],[0,2]]}"#;
    assert_eq!(run(&["homology-check", "--ideal", ex, "--bound", "4,4", "--prime", "101"]).0, 0);
    assert_eq!(run(&["homology-check", "--ideal", ex, "--prime", "100"]).0, 2);
    assert_eq!(run(&["homology-check", "--ideal", ex, "--all-ones"]).0, 0);
    assert_eq!(run(&["invariants", "--ideal", r#"{"n":2,"generators":[]}"#]).0, 2);
}

#[test]
fn numeric_resolution() {
    let ex = r#"{"n":2,"generators":[[2,0],[1,1],[0,2]]}"#;
    let comm = r#"{"schema":1,"n":2,"mode":"numeric","field":"Q","q":{"1,2":"3/2"}}"#;
    let (code, out, _) = run(&["resolve", "--ideal", ex, "--mode", "numeric", "--commutation", comm]);
    assert_eq!(code, 0);
    assert!(out.contains("-3/2*x"), "{out}");
    assert!(out.contains("-9/4*x"), "{out}");
}
