use clap::Parser;
use clusterflag::cli::{execute, run_cli, Cli, SEED_ENV};

fn run(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("clusterflag").chain(args.iter().copied())).unwrap();
    let (mut out, mut log) = (Vec::new(), Vec::new());
    let code = execute(&cli, &mut out, &mut log).unwrap();
    (code, String::from_utf8(out).unwrap(), String::from_utf8(log).unwrap())
}

#[test]
fn translate_prints_signed_plucker_polynomials() {
    let (code, out, _) = run(&["translate", "--sh", "5", "[12]", "<13>"]);
    assert_eq!(code, 0);
    assert_eq!(out, "+P_{345}\n+P_{13}\n");
    let (_, out, _) = run(&["translate", "--mt", "6", "<1234>"]);
    assert_eq!(out, "+P_{1234}\n");
}

#[test]
fn verify_passes_and_writes_a_report() {
    let dir = std::env::temp_dir().join(format!("clusterflag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, out, _) = run(&["verify", "--flag", "6,2,4", "--trials", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("PASS\n"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["mutations"], 3);
    assert_eq!(report["sequence"], serde_json::json!(["(11)", "(7)", "(11)"]));
}

#[test]
fn run_exports_the_sh8_endpoint() {
    let (code, dot, log) = run(&["run", "--preset", "sh", "--n", "8", "--export", "dot", "--trials", "3"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("shape=").count(), 22);
    assert!(log.contains("(27),(21),(15),(9),(28),(22),(16),(10),(29),(23),(27),(21),(15),(9),(28),(22),(29),(27),(21),(28),(27)"));
    let (_, dot2, _) = run(&["run", "--preset", "sh", "--n", "8", "--export", "dot", "--trials", "3"]);
    assert_eq!(dot, dot2);
}

#[test]
fn seed_mutate_export_pipeline() {
    let dir = std::env::temp_dir().join(format!("clusterflag-pipe-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g = dir.join("g.json");
    let m = dir.join("m.json");
    let back = dir.join("back.json");
    run(&["seed", "--gr", "4,8", "--output", g.to_str().unwrap()]);
    run(&["mutate", "--input", g.to_str().unwrap(), "--at", "11", "(11)", "--output", m.to_str().unwrap()]);
    run(&["export", "--input", m.to_str().unwrap(), "--format", "json", "--output", back.to_str().unwrap()]);
    let a: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let b: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    assert_eq!(a, b);
    let (_, dot, _) = run(&["export", "--input", g.to_str().unwrap()]);
    assert!(dot.contains("shape=box"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run_cli(["clusterflag", "frobnicate"]), 2);
    assert_eq!(run_cli(["clusterflag", "verify", "--flag", "5,5"]), 2);
    assert_eq!(run_cli(["clusterflag", "mutate", "--input", "/nonexistent/seed.json", "--at", "1"]), 2);
    assert_eq!(run_cli(["clusterflag", "translate", "--sh", "5", "[1]"]), 2);
    assert_eq!(run_cli(["clusterflag", "verify", "--preset", "mt"]), 2);
}

#[test]
fn seed_env_overrides_flag() {
    let cli = Cli::try_parse_from(["clusterflag", "--seed", "3", "translate", "--sh", "5", "[12]"]).unwrap();
    std::env::set_var(SEED_ENV, "17");
    let with_env = cli.oracle.config();
    std::env::remove_var(SEED_ENV);
    assert_eq!(with_env.unwrap().seed, 17);
    assert_eq!(cli.oracle.config().unwrap().seed, 3);
}
