use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toroidal"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toroidal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn code(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn small_verify_passes() {
    assert_eq!(code(&["--n", "2", "--r", "1,1", "--max-boxes", "2", "--seed", "1", "verify"]), 0);
}

#[test]
fn mutated_verify_exits_with_failure() {
    let out = bin()
        .args(["--n", "2", "--r", "1,1", "--max-boxes", "2", "--seed", "1", "verify", "--mutate", "--skip-theorem"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["format_version"], "toroidal-json/1");
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(code(&["--n", "2", "frobnicate"]), 2);
    assert_eq!(code(&["--n", "2", "--r", "1,1,1", "fixed-points"]), 2);
    assert_eq!(code(&["--n", "1", "--r", "2", "fixed-points"]), 2);
    assert_eq!(code(&["--config", "/nonexistent/toroidal.conf", "fixed-points"]), 2);
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let conf = scratch("run.conf");
    std::fs::write(&conf, "# small run\nn = 3\nr = 1,1,1\nmax_boxes = 1\nseed = 4\n").unwrap();
    let out = bin().args(["--config", conf.to_str().unwrap(), "--max-boxes", "2", "fixed-points"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["config"]["n"], 3);
    assert_eq!(doc["config"]["max_boxes"], 2);
    assert_eq!(doc["config"]["seeds"], serde_json::json!([4]));
}

#[test]
fn out_files_are_byte_identical() {
    let path = scratch("op.json");
    let mut runs = vec![];
    for _ in 0..2 {
        let status = bin()
            .args(["--n", "2", "--r", "2,1", "--max-boxes", "3", "--seed", "7", "--out", path.to_str().unwrap()])
            .args(["op", "--kind", "e-fine", "--i", "1", "--j", "3", "--k", "1"])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        runs.push(std::fs::read(&path).unwrap());
    }
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
    let doc: serde_json::Value = serde_json::from_slice(&runs[0]).unwrap();
    assert_eq!(doc["config"]["command"], "op");
}
