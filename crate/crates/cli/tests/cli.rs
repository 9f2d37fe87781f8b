use std::path::Path;
use std::process::{Command, Output};

fn qfoundry(args: &[&str], env_out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qfoundry"));
    cmd.args(args).env_remove("QFOUNDRY_OUT");
    if let Some(dir) = env_out {
        cmd.env("QFOUNDRY_OUT", dir);
    }
    cmd.output().expect("binary runs")
}

fn dir_arg(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn passing_run_exits_zero_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = qfoundry(&["mz", "--out", &dir_arg(dir.path())], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["mz.report.json", "mz.splitter_scan.csv", "mz.manifest.json"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("mz.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["subcommand"], "mz");
    assert_eq!(manifest["constants"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn failed_verdict_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = qfoundry(&["rt", "--ratios", "10", "--out", &dir_arg(dir.path())], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL quadrature_10"));
}

#[test]
fn usage_errors_exit_one_with_a_single_line() {
    for args in [&["bell", "--model", "nosuch"][..], &["nosuch"], &["zeno", "--max-power", "0"], &[]] {
        let out = qfoundry(args, None);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        if !args.is_empty() {
            assert_eq!(String::from_utf8_lossy(&out.stderr).trim_end().lines().count(), 1, "{args:?}");
        }
    }
    assert_eq!(qfoundry(&["--help"], None).status.code(), Some(0));
}

#[test]
fn list_names_every_experiment() {
    let out = qfoundry(&["list", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let entries: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(entries.len(), 17);
    assert!(entries.iter().all(|e| e["topic"].as_str().is_some_and(|t| !t.is_empty())));
}

#[test]
fn environment_overrides_out_flag() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = qfoundry(&["dim", "--out", &dir_arg(flag_dir.path())], Some(env_dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert!(env_dir.path().join("dim.report.json").exists());
    assert!(!flag_dir.path().join("dim.report.json").exists());
}

#[test]
fn json_only_format_skips_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = qfoundry(&["zeno", "--format", "json", "--out", &dir_arg(dir.path())], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("zeno.report.json").exists());
    assert!(!dir.path().join("zeno.survival.csv").exists());
}

#[test]
fn replay_refuses_changed_constants() {
    let dir = tempfile::tempdir().unwrap();
    let constants = dir.path().join("constants.txt");
    std::fs::write(&constants, include_str!("../constants/si-codata2018.txt")).unwrap();
    let run = dir.path().join("run");
    let out =
        qfoundry(&["hawking", "--units", "si", "--constants", &dir_arg(&constants), "--out", &dir_arg(&run)], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = dir_arg(&run.join("hawking.manifest.json"));

    let again = dir.path().join("again");
    assert_eq!(qfoundry(&["replay", &manifest, "--out", &dir_arg(&again)], None).status.code(), Some(0));
    assert_eq!(
        std::fs::read(run.join("hawking.report.json")).unwrap(),
        std::fs::read(again.join("hawking.report.json")).unwrap()
    );

    let mut text = std::fs::read_to_string(&constants).unwrap();
    text.push_str("# edited\n");
    std::fs::write(&constants, text).unwrap();
    let out = qfoundry(&["replay", &manifest, "--out", &dir_arg(&dir.path().join("third"))], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("constants hash"));
}
