use std::process::{Command, Output};

fn subword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subword"))
        .args(args)
        .env_remove("SUBWORD_MAX_NODES")
        .env_remove("SUBWORD_MAX_CHAINS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = subword(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn mobius_all_methods_agree() {
    let out = ok(&[
        "mobius", "--poset", "lambda", "--u", "11", "--w", "333", "--method", "all",
    ]);
    assert!(out.starts_with("mu(11, 333) = 5\n"), "{out}");
    assert!(out.contains("all methods agree"));
    assert!(out.contains("eta=110  factors=[-1, -1, 2]  product=2"));
}

#[test]
fn mobius_trivial_and_zero() {
    assert!(
        ok(&["mobius", "--poset", "lambda", "--u", "11", "--w", "11"])
            .starts_with("mu(11, 11) = 1\n")
    );
    let out = ok(&[
        "mobius", "--poset", "fig3", "--u", "2", "--w", "29", "--method", "all",
    ]);
    assert!(out.starts_with("mu(2, 29) = 0\n"), "{out}");
}

#[test]
fn mobius_json() {
    let out = ok(&[
        "mobius", "--poset", "lambda", "--u", "11", "--w", "333", "--method", "all", "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], 5);
    assert_eq!(v["agree"], true);
    assert_eq!(v["values"]["morse"], 5);
    assert_eq!(v["per_embedding"].as_array().unwrap().len(), 3);
}

#[test]
fn single_methods() {
    for m in ["oracle", "morse"] {
        let out = ok(&[
            "mobius", "--poset", "lambda", "--u", "1", "--w", "33", "--method", m,
        ]);
        assert_eq!(out, "mu(1, 33) = -3\n");
    }
}

#[test]
fn interval_counts() {
    assert!(ok(&["interval", "--poset", "lambda", "--w", "33333"])
        .starts_with("nodes=364, edges=1904\n"));
    assert!(
        ok(&["interval", "--poset", "lambda", "--u", "11", "--w", "333"]).starts_with("nodes=24,")
    );
    assert!(
        ok(&["interval", "--poset", "lambda", "--u", "11", "--w", "11"])
            .starts_with("nodes=1, edges=0\n")
    );
}

#[test]
fn interval_exports() {
    let dot = ok(&[
        "interval", "--poset", "lambda", "--u", "1", "--w", "3", "--format", "dot",
    ]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("n1 -> n0;"));
    let json = ok(&[
        "interval", "--poset", "lambda", "--u", "11", "--w", "333", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 24);
}

#[test]
fn critical_chains_fig3() {
    let out = ok(&[
        "critical-chains",
        "--poset",
        "fig3",
        "--u",
        "2",
        "--w",
        "29",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5, "{out}");
    let dims: Vec<&str> = lines[..4]
        .iter()
        .map(|l| l.split("  ").find(|f| f.starts_with("d=")).unwrap())
        .collect();
    assert_eq!(dims, ["d=0", "d=1", "d=1", "d=0"]);
    assert_eq!(lines[4], "4 critical chains, signed count 0");
    assert!(lines[0].starts_with("29 > 25 > 21 > 2  labels=(<2,5>,<2,1>,<2,0>)"));
}

#[test]
fn critical_chains_json() {
    let out = ok(&[
        "critical-chains",
        "--poset",
        "lambda",
        "--u",
        "11",
        "--w",
        "333",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mobius"], 5);
    assert_eq!(v["chains"].as_array().unwrap().len(), 5);
}

#[test]
fn homotopy_report() {
    assert_eq!(
        ok(&["homotopy", "--poset", "lambda", "--u", "11", "--w", "333"]),
        "wedge of 5 spheres, dim 2\n"
    );
    let o = subword(&["homotopy", "--poset", "fig3", "--u", "2", "--w", "29"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chebyshev_table() {
    let out = ok(&["chebyshev", "--s", "2", "--max-n", "6"]);
    assert!(out.contains("T^2_6 = 32x^6 - 48x^4 + 18x^2 - 1"));
    assert!(out.ends_with("all equal: true\n"));
    assert!(!out.contains("false"));
    let out = ok(&[
        "chebyshev",
        "--s",
        "3",
        "--max-n",
        "5",
        "--oracle",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_equal"], true);
}

#[test]
fn verify_small_run() {
    let out = ok(&[
        "verify",
        "--posets",
        "random:5",
        "--max-w",
        "2",
        "--suite",
        "oracle",
        "--suite",
        "chebyshev",
    ]);
    assert!(out.ends_with("all suites passed\n"), "{out}");
}

#[test]
fn verify_reports_injected_fault() {
    let o = subword(&[
        "verify",
        "--posets",
        "random:2",
        "--max-w",
        "1",
        "--suite",
        "oracle",
        "--inject-fault",
        "flip-sign",
    ]);
    let out = stdout(&o);
    if cfg!(debug_assertions) {
        assert_eq!(o.status.code(), Some(1));
        assert!(
            out.contains("counterexample [oracle]: poset=lambda u=∅ w=∅"),
            "{out}"
        );
    } else {
        assert_eq!(o.status.code(), Some(2));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        subword(&["mobius", "--poset", "nope", "--w", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        subword(&["mobius", "--poset", "lambda", "--w", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        subword(&["verify", "--suite", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        subword(&[
            "--max-nodes",
            "10",
            "interval",
            "--poset",
            "lambda",
            "--w",
            "3333"
        ])
        .status
        .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_subword"))
        .args([
            "critical-chains",
            "--poset",
            "fig3",
            "--u",
            "2",
            "--w",
            "29",
        ])
        .env("SUBWORD_MAX_CHAINS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn poset_from_file() {
    let dir = std::env::temp_dir().join(format!("subword-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("v.json");
    std::fs::write(
        &path,
        r#"{"elements": ["a", "b", "c"], "covers": [["a", "c"], ["b", "c"]]}"#,
    )
    .unwrap();
    let out = ok(&[
        "mobius",
        "--poset",
        path.to_str().unwrap(),
        "--u",
        "aa",
        "--w",
        "ccc",
        "--method",
        "all",
    ]);
    assert!(out.starts_with("mu(aa, ccc) = 5\n"), "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = [
        "critical-chains",
        "--poset",
        "lambda",
        "--u",
        "1",
        "--w",
        "3333",
    ];
    assert_eq!(ok(&args), ok(&args));
}
