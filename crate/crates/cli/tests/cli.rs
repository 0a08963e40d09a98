use std::path::Path;
use std::process::Command;

use defcover_cli::run_command;
use tempfile::TempDir;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn argv(parts: &[&str]) -> Vec<String> {
    std::iter::once("ddc").chain(parts.iter().copied()).map(String::from).collect()
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

const P3: &str = "p 3 2\ne 1 2\ne 2 3\n";

#[test]
fn solve_small_delta_example() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.g", P3);
    let out = run_command(&argv(&["solve", "--graph", &g, "--delta", "1/4", "--k", "2", "--attack", "vertex"]));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(field(&out.stdout, "optimal"), Some("3"));
    assert_eq!(field(&out.stdout, "method"), Some("small-delta"));
    assert!(out.stdout.contains("--- certificate defense\nv 1\nv 2\nv 3\n"));
}

#[test]
fn verify_single_attack_example() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.g", P3);
    let d = write(dir.path(), "d.tok", "v 2\n");
    let a = write(dir.path(), "a.tok", "v 1\nv 3\n");
    let out = run_command(&argv(&["verify", "--graph", &g, "--delta", "1", "--defense", &d, "--attack-file", &a]));
    assert_eq!(out.code, 1);
    assert_eq!(field(&out.stdout, "result"), Some("not-countered"));

    let d2 = write(dir.path(), "d2.tok", "e 1 2 1/2\ne 2 3 1/2\n");
    let out = run_command(&argv(&["verify", "--graph", &g, "--delta", "1", "--defense", &d2, "--attack-file", &a]));
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("--- certificate pairs\n"));
}

#[test]
fn verify_all_attacks_reports_counterexample() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.g", P3);
    let d = write(dir.path(), "d.tok", "v 1\n");
    let out = run_command(&argv(&["verify", "--graph", &g, "--delta", "1", "--defense", &d, "--k", "1"]));
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("--- certificate attack\nv 3\n"));

    let d = write(dir.path(), "d2.tok", "v 2\n");
    let out = run_command(&argv(&[
        "verify", "--graph", &g, "--delta", "1", "--defense", &d, "--k", "1", "--attack-multiset",
    ]));
    assert_eq!(out.code, 0);
    assert_eq!(field(&out.stdout, "method"), Some("flow"));

    let out = run_command(&argv(&["verify", "--graph", &g, "--delta", "1", "--defense", &d]));
    assert_eq!(out.code, 2);
}

#[test]
fn gen_setcover_example() {
    let out = run_command(&argv(&["gen", "setcover", "--universe", "2", "--sets", "1,2", "--x", "1", "--delta", "1"]));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(field(&out.stdout, "vertices"), Some("5"));
    assert_eq!(field(&out.stdout, "l"), Some("2"));
    assert!(out.stdout.contains("--- certificate graph\np 5 4\n"));
}

#[test]
fn gen_writes_files() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k2.g", "p 2 1\ne 1 2\n");
    let out_g = dir.path().join("gadget.g");
    let out_c = dir.path().join("gadget.classes");
    let out = run_command(&argv(&[
        "gen", "distance", "--graph", &g, "--k", "2", "--d", "3",
        "--out", out_g.to_str().unwrap(), "--classes", out_c.to_str().unwrap(),
    ]));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let text = std::fs::read_to_string(&out_g).unwrap();
    let parsed = defcover_cli::format::parse_graph(&text).unwrap();
    assert_eq!(parsed.n(), 12);
    assert_eq!(parsed.hops(0, 1), 3);
    assert_eq!(std::fs::read_to_string(&out_c).unwrap().lines().count(), 12);
}

#[test]
fn gen_interdiction_rejects_small_t() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.g", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
    let out = run_command(&argv(&["gen", "interdiction", "--graph", &g, "--s", "3", "--t", "3"]));
    assert_eq!(out.code, 2);
    let out = run_command(&argv(&["gen", "interdiction", "--graph", &g, "--s", "3", "--t", "4"]));
    assert_eq!(out.code, 0);
    assert_eq!(field(&out.stdout, "class.I2"), Some("1"));
}

#[test]
fn exit_code_tracks_budget() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.g", P3);
    for (l, code) in [("1", 1), ("2", 0), ("5", 0)] {
        let out = run_command(&argv(&["solve", "--graph", &g, "--delta", "1", "--k", "2", "--l", l]));
        assert_eq!(out.code, code, "l={l}");
        assert_eq!(field(&out.stdout, "optimal"), Some("2"));
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.g", P3);
    let bad = write(dir.path(), "bad.g", "p 2 1\ne 1 1\n");
    let cases: Vec<Vec<String>> = vec![
        argv(&["solve", "--graph", &g, "--delta", "1", "--k", "1", "--bogus"]),
        argv(&["solve", "--graph", &g, "--delta", "0.5", "--k", "1"]),
        argv(&["solve", "--graph", &g, "--delta", "0", "--k", "1"]),
        argv(&["frobnicate"]),
        argv(&["solve", "--graph", &bad, "--delta", "1", "--k", "1"]),
        argv(&["solve", "--graph", "/nonexistent/g", "--delta", "1", "--k", "1"]),
    ];
    for a in cases {
        let out = run_command(&a);
        assert_eq!(out.code, 2, "{a:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = run_command(&argv(&["solve", "--graph", &bad, "--delta", "1", "--k", "1"]));
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
}

#[test]
fn json_carries_the_same_fields() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.g", P3);
    let out = run_command(&argv(&["solve", "--graph", &g, "--delta", "3/4", "--k", "2", "--json"]));
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["optimal"], 2);
    assert_eq!(v["method"], "tree-factor");
    assert_eq!(v["certificates"][0]["name"], "defense");
}

#[test]
fn oracle_agrees_on_p3() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "p3.g", P3);
    let out = run_command(&argv(&["oracle", "--graph", &g, "--delta", "1", "--k", "1"]));
    assert_eq!(out.code, 0);
    assert_eq!(field(&out.stdout, "optimal"), Some("1"));
}

#[test]
fn budget_exhaustion_is_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c6.g", "p 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 1 6\n");
    let out = Command::new(env!("CARGO_BIN_EXE_ddc"))
        .args(["solve", "--graph", &g, "--delta", "3/2", "--k", "3"])
        .env("DDC_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(field(&stdout, "result"), Some("resource-limit"));
}
