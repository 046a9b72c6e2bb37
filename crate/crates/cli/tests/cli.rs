use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fstm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fstm")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.json");
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn capacity_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"snr_db": 20}"#);
    let out = dir.path().join("nested/cap.csv");
    let o = fstm(&["capacity", "--config", &cfg, "--seed", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("k,ldma,ttd,fsm,fsm_c1,fsm_c2,fsm_c4,fsm_c8\n"));
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 5);
    assert_eq!(meta["config"]["N"], 1024);
}

#[test]
fn full_preset_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{}");
    let a = fstm(&["nf-spread", "--config", &cfg, "--full"]);
    assert_eq!(a.status.code(), Some(0));
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 4097);
    let b = fstm(&["nf_spread", "--config", &cfg, "--full"]);
    assert_eq!(text, String::from_utf8(b.stdout).unwrap());
}

#[test]
fn bench_and_detect_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{}");
    let o = fstm(&["dfnt-bench", "--config", &cfg, "--sizes", "64,128", "--reps", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("N,flops_model,t_dfnt_ns,t_direct_ns\n64,"));

    let o = fstm(&[
        "detect", "--config", &cfg, "--angles", "2", "--depths", "2", "--velocities", "2", "--qam", "4", "--snr", "-5,40",
        "--symbols", "200",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "snr_db,ser,ber");
    assert_eq!(lines[2], "40,0,0");
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_config(dir.path(), "{}");
    assert_eq!(fstm(&["fig9", "--config", &good]).status.code(), Some(1));
    assert_eq!(fstm(&["capacity"]).status.code(), Some(1));
    assert_eq!(fstm(&["capacity", "--config", "/nonexistent/run.json"]).status.code(), Some(1));
    assert_eq!(fstm(&["corr_sweep", "--config", &good, "--schemes", "fsm,mimo"]).status.code(), Some(1));
    let typo = write_config(dir.path(), r#"{"snr_dB": 20}"#);
    let o = fstm(&["capacity", "--config", &typo]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("snr_dB"));
    let bad = write_config(dir.path(), r#"{"N": 1000}"#);
    assert_eq!(fstm(&["capacity", "--config", &bad]).status.code(), Some(1));
}

#[test]
fn runtime_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{}");
    // A regular file where a directory is needed.
    let out = Path::new(&cfg).join("cap.csv");
    assert_eq!(fstm(&["capacity", "--config", &cfg, "--out", out.to_str().unwrap()]).status.code(), Some(2));
}
