use std::process::{Command, Output};

use dertorus::exact::{parse_rational, q, Rational};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dertorus")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_default_passes() {
    let out = run(&["verify", "--trials", "20"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    let items = report.as_array().unwrap();
    assert!(items.len() >= 10);
    assert!(items.iter().all(|x| x["status"] == "pass"));
    assert!(items.iter().all(|x| x["instances_checked"].as_u64().unwrap() > 0));
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--trials", "10", "--seed", "7"]);
    let b = run(&["verify", "--trials", "10", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_rejects_rank_one() {
    let out = run(&["verify", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("d must be at least 2"));
}

#[test]
fn fault_injection_fails_with_witness() {
    let out = run(&["verify", "--trials", "20", "--fault-inject"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failed: Vec<&Value> = report.as_array().unwrap().iter().filter(|x| x["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|x| x["witness"].as_str().is_some_and(|w| !w.is_empty())));
}

#[test]
fn rep_adjoint() {
    let out = run(&["rep", "--weights", "1,1", "--b", "0"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["dim"], 8);
    assert_eq!(r["weyl_dim"], 8);
    assert_eq!(r["matrices"].as_array().unwrap().len(), 9);
}

#[test]
fn rep_trace_is_b() {
    let out = run(&["rep", "--weights", "2", "--b", "3"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["dim"], 3);
    let labels = r["weight_labels"].as_array().unwrap();
    for l in labels {
        let sum: Rational = l.as_array().unwrap().iter().map(|x| parse_rational(x.as_str().unwrap()).unwrap()).sum();
        assert_eq!(sum, q(3));
    }
    let trivial = json(&run(&["rep", "--weights", "0"]));
    assert_eq!(trivial["dim"], 1);
}

#[test]
fn scan_modes() {
    let der = json(&run(&["scan", "--weights", "0", "--b", "0", "--alpha", "0,0", "--mode", "der"]));
    assert_eq!(der["proper_submodule"], true);
    assert!(der["witness"].as_str().unwrap().contains("weight (0,0)"));
    let ader = json(&run(&["scan", "--weights", "0", "--b", "0", "--alpha", "0,0", "--mode", "ader"]));
    assert_eq!(ader["proper_submodule"], false);
    let generic = run(&["scan", "--weights", "0", "--b", "0", "--alpha", "1/3,-2/5"]);
    assert!(generic.status.success());
    assert_eq!(json(&generic)["proper_submodule"], false);
}

#[test]
fn config_file_and_override() {
    let dir = std::env::temp_dir().join(format!("dertorus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "weights = 1\nb = 5/7\nalpha = 1/3, 0\nword_length = 4\n").unwrap();
    let from_file = json(&run(&["scan", "--config", path.to_str().unwrap()]));
    assert_eq!(from_file["params"]["b"], "5/7");
    assert_eq!(from_file["word_length"], 4);
    let overridden = json(&run(&["scan", "--config", path.to_str().unwrap(), "--b", "-1/2"]));
    assert_eq!(overridden["params"]["b"], "-1/2");
    std::fs::write(&path, "b = 0.5\n").unwrap();
    let bad = run(&["rep", "--config", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}
