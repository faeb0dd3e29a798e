use std::path::PathBuf;
use std::process::{Command, Output};

fn invfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invfield")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("invfield-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn dump_label() {
    let o = invfield(&["dump", "--label", "u[1,0]", "--n", "2", "--q", "2", "--m", "1", "--d", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x[1,1]*y[1,1] + x[1,2]*y[1,2]");
}

#[test]
fn dump_set() {
    let o = invfield(&["dump", "--set", "thm_UU", "--n", "2", "--q", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().any(|l| l.starts_with("f[1,1] = x[1,1]")));
}

#[test]
fn dump_rejects_bad_label() {
    let o = invfield(&["dump", "--label", "c[1,5]", "--n", "2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn verify_writes_report() {
    let path = scratch("report.json");
    let p = path.to_str().unwrap();
    let args = [
        "verify", "--family", "GL,SL,U", "--grid", "n=2,q=2,m=2,d=2;n=3,q=2,m=2,d=1", "--suite", "all", "--seed", "42",
        "--out", p, "--format", "json",
    ];
    let o = invfield(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["schema"], "invfield-report");
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r.get("timing_ms").is_none()));
    assert!(v["conventions"]["t_twist"].is_string());

    invfield(&args);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}

#[test]
fn verify_text_and_timing() {
    let o = invfield(&["verify", "--family", "U", "--grid", "n=1,q=2,m=1,d=1", "--format", "text", "--timing"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("invfield-report v1"));
    assert!(out.contains(" ms)"));
}

#[test]
fn verify_config_errors() {
    let o = invfield(&["verify", "--grid", "n=3,q=2,m=1,d=1", "--suite", "hypersurface"]);
    assert_eq!(o.status.code(), Some(2));
    let o = invfield(&["verify", "--grid", "n=2,q=6,m=1,d=1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = invfield(&["verify", "--family", "SP"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cert_round_trip_and_tamper() {
    let path = scratch("cert.json");
    let p = path.to_str().unwrap();
    let o = invfield(&["cert", "--theorem", "UU", "--n", "3", "--q", "2", "--m", "2", "--d", "1", "--out", p]);
    assert!(o.status.success());
    let o = invfield(&["cert-verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("certificate verified\n"));

    let mut cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cert["steps"][1]["num"] = serde_json::Value::String("x[1,1]".into());
    let bad = scratch("bad.json");
    std::fs::write(&bad, serde_json::to_string(&cert).unwrap()).unwrap();
    let o = invfield(&["cert-verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    let o = invfield(&["cert-verify", scratch("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
