use std::path::PathBuf;
use std::process::Command;

use gradalg_cli::{run_command, Outcome, EXIT_NO, EXIT_USAGE, EXIT_YES};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("gradalg").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {} / {}", o.stdout, o.stderr))
}

#[test]
fn h2_of_klein_four() {
    let o = run(&["h2", "--group", "C2xC2"]);
    assert_eq!(o.code, EXIT_YES);
    let v = json(&o);
    assert_eq!(v["order"], 2);
    assert_eq!(v["invariant_factors"], serde_json::json!([2]));
}

#[test]
fn group_algebra_and_matrices_do_not_embed() {
    let a = fixture("group_algebra_c2.json");
    let b = fixture("matrices_c2.json");
    let c = fixture("matrices_over_group_algebra_c2.json");
    assert_eq!(run(&["embed", "matrix", "--a", &a, "--b", &b]).code, EXIT_NO);
    assert_eq!(run(&["embed", "matrix", "--a", &b, "--b", &a]).code, EXIT_NO);
    for x in [&a, &b] {
        let o = run(&["embed", "matrix", "--a", x, "--b", &c]);
        assert_eq!(o.code, EXIT_YES);
        assert_eq!(json(&o)["witness"]["kind"], "matrix");
    }
    let o = run(&["embed", "product", "--a", &format!("{a},{b}"), "--b", &c]);
    assert_eq!(o.code, EXIT_YES);
    assert_eq!(json(&o)["assignment"], serde_json::json!([0, 0]));
}

#[test]
fn identities_separate_twisted_klein_four() {
    let ws = fixture("workspace.json");
    let o = run(&["--workspace", &ws, "pi", "contain", "--a", "FV4", "--b", "FsV4", "--nmax", "2"]);
    assert_eq!(o.code, EXIT_NO);
    let v = json(&o);
    assert_eq!(v["contained"], false);
    let sep = v["results"].as_array().unwrap().iter().find(|r| r["contained"] == false).unwrap();
    assert_eq!(sep["degrees"].as_array().unwrap().len(), 2);
    assert_eq!(sep["separating"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn cocycle_subcommands() {
    let k = fixture("klein_cocycle.json");
    assert_eq!(json(&run(&["cocycle", "check", "--cocycle", &k]))["is_cocycle"], true);
    assert_eq!(json(&run(&["cocycle", "order", "--cocycle", &k]))["order"], 2);
    assert_eq!(run(&["cocycle", "equiv", "--a", &k, "--b", &k]).code, EXIT_YES);
    let ws = fixture("workspace.json");
    let o = run(&["--workspace", &ws, "cocycle", "restrict", "--cocycle", "klein", "--subgroup", "0,1"]);
    assert_eq!(o.code, EXIT_YES);
    assert_eq!(json(&o)["exponents"], serde_json::json!([[0, 0], [0, 0]]));
    let o = run(&["--workspace", &ws, "cocycle", "extend", "--cocycle", "klein"]);
    assert_eq!(o.code, EXIT_YES);
}

#[test]
fn lambda_and_tower() {
    let ws = fixture("workspace.json");
    let o = run(&["--workspace", &ws, "lambda", "--a", "M2Z4", "--target", "1,2"]);
    assert_eq!(o.code, EXIT_YES);
    assert_eq!(json(&o)["member"], true);
    assert_eq!(run(&["--workspace", &ws, "lambda", "--a", "M2Z4", "--target", "0,2"]).code, EXIT_NO);
    let o = run(&["--workspace", &ws, "tower", "--b", "FH", "--chain", "0,1,2,3", "--k", "1", "--t", "2"]);
    assert_eq!(o.code, EXIT_YES, "{}", o.stderr);
    assert_eq!(json(&o)["square"]["commutes"], true);
}

#[test]
fn errors_map_to_exit_two() {
    assert_eq!(run(&["bogus"]).code, EXIT_USAGE);
    let o = run(&["--order-cap", "4", "h2", "--group", "C2xC4"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("OrderCapExceeded"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("ws.json");
    std::fs::write(&bad, r#"{"cocycles": {"s": {"group": "Missing", "modulus": 2, "exponents": [[0]]}}}"#).unwrap();
    let o = run(&["--workspace", bad.to_str().unwrap(), "group", "--group", "C2"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("Validation"));
    let theta_outside = dir.path().join("a.json");
    std::fs::write(&theta_outside, r#"{"group": "S3", "subgroup": [0, 1], "k": 2, "theta": [0, 2]}"#).unwrap();
    let o = run(&["embed", "matrix", "--a", theta_outside.to_str().unwrap(), "--b", theta_outside.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_USAGE, "{}", o.stdout);
}

#[test]
fn binary_output_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_gradalg");
    let ws = fixture("workspace.json");
    let args = ["--workspace", ws.as_str(), "pi", "contain", "--a", "FsV4", "--b", "FV4", "--nmax", "3"];
    let first = Command::new(exe).args(args).output().unwrap();
    let second = Command::new(exe).args(args).output().unwrap();
    assert_eq!(first.status.code(), Some(EXIT_NO));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("config.json");
    std::fs::write(&cfg, r#"{"budget": 0}"#).unwrap();
    let ws = fixture("workspace.json");
    let out = Command::new(env!("CARGO_BIN_EXE_gradalg"))
        .env("GRADALG_CONFIG", &cfg)
        .args(["--workspace", &ws, "pi", "contain", "--a", "FV4", "--b", "FsV4", "--nmax", "2"])
        .output()
        .unwrap();
    // nothing fits a zero budget, so nothing separates
    assert_eq!(out.status.code(), Some(EXIT_YES));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["results"].as_array().unwrap().is_empty());
    assert_eq!(v["skipped"].as_array().unwrap().len(), 4 + 16);
}

#[test]
fn sweep_reports_each_check() {
    let o = run(&["sweep"]);
    let v = json(&o);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    // classes on central subgroups do not always extend (see README)
    assert_eq!(failing, ["central_class_extension"]);
    assert_eq!(o.code, EXIT_NO);
}
