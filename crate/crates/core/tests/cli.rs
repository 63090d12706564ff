use std::path::Path;
use std::process::{Command, Output};

use qswitch::cli::{self, Cli, Command as Sub, Options};

fn qswitch(args: &[&str], env: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qswitch"));
    c.args(args).env_remove(cli::CONSTANTS_ENV);
    if let Some(p) = env {
        c.env(cli::CONSTANTS_ENV, p);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn single_point_sweep_reproduces_timing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("one.cfg");
    std::fs::write(&cfg, "[sweep]\nengine = timing\naxis = h linear 1 1 1\n").unwrap();
    let timing = qswitch(&["timing", "--preset", "earth"], None);
    let sweep = qswitch(&["sweep", "--preset", "earth", "--config", cfg.to_str().unwrap()], None);
    assert!(timing.status.success() && sweep.status.success());
    assert_eq!(timing.stdout, sweep.stdout);
}

#[test]
fn config_errors_report_line_and_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "# scenario\n[protocol]\nh = 1\nd = three\n").unwrap();
    let o = qswitch(&["timing", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");

    let o = qswitch(&["timing", "--preset", "jupiter"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = qswitch(&["timing", "--config", "/no/such/file.cfg"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn strict_turns_warnings_into_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("hold.cfg");
    std::fs::write(&cfg, "[protocol]\ndt_s = 5\n").unwrap();
    let lax = qswitch(&["timing", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(lax.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&lax.stderr).contains("warning"));
    let strict = qswitch(&["timing", "--strict", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn constants_env_overrides_file() {
    let dir = tempfile::tempdir().unwrap();
    let slow = dir.path().join("slow.constants");
    std::fs::write(&slow, "c = 3e8\n").unwrap();
    let fast = dir.path().join("fast.constants");
    std::fs::write(&fast, "[constants]\nc = 4e8\n").unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, format!("[constants]\nfile = {}\n", slow.display())).unwrap();

    let dt_c = |o: &Output| -> f64 {
        let text = stdout(o);
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        row[header.iter().position(|h| *h == "dt_c").unwrap()].parse().unwrap()
    };
    let from_file = qswitch(&["timing", "--config", cfg.to_str().unwrap()], None);
    let from_env = qswitch(&["timing", "--config", cfg.to_str().unwrap()], Some(&fast));
    assert_eq!(dt_c(&from_file), 0.3e-6 / 3e8);
    assert_eq!(dt_c(&from_env), 0.3e-6 / 4e8);
}

#[test]
fn out_dir_holds_every_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("switch");
    let o = qswitch(&["switch", "--preset", "switch-e1", "--format", "json", "--out", out.to_str().unwrap()], None);
    assert!(o.status.success());
    let mut names: Vec<String> =
        std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    assert_eq!(names, ["report.txt", "switch.json", "switch_path_diagonal.json", "switch_state.json"]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("switch.json")).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[3]["outcome"], "+");
}

#[test]
fn in_process_run_matches_binary() {
    let opts = Options { preset: Some("earth".into()), ..Default::default() };
    let parsed = Cli { command: Sub::Timing, options: opts };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(cli::run(&parsed, None, &mut out, &mut err), 0);
    assert_eq!(out, qswitch(&["timing", "--preset", "earth"], None).stdout);
}

#[test]
fn missing_sweep_section_is_a_usage_error() {
    let o = qswitch(&["sweep"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[sweep]"));
}
