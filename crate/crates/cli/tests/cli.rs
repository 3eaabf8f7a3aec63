use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-cert")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn shipped(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("certs").join(name)
}

#[test]
fn series_commands() {
    let o = run(&["series", "revert", "1,0,1/2,0,3/8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1,0,-1/2,0,3/8\n");
    // (z + z^2)∘(z + z^2) = z + 2z^2 + 2z^3 + z^4
    assert_eq!(stdout(&run(&["series", "compose", "1,1", "1,1", "--order", "4"])), "1,2,2,1\n");
    assert_eq!(stdout(&run(&["series", "hankel", "1,0,-1/2,0,3/8"])), "-1/16\n");
    assert_eq!(stdout(&run(&["series", "hankel", "1,1/2,1/3", "--size", "2"])), "1/12\n");
    assert_eq!(run(&["series", "revert", "0,1"]).status.code(), Some(64));
}

#[test]
fn map_commands() {
    assert_eq!(stdout(&run(&["map", "c2f", "2,2,2,2"])), "1,3/2,2,5/2,3\n");
    assert_eq!(stdout(&run(&["map", "lz", "0", "1", "1/2", "1/3+1/4i"])), "0,2,0,2\n");
    assert_eq!(stdout(&run(&["map", "lz", "2", "1/2", "i", "-1"])), "2,2,2,2\n");
    let h = json(&run(&["map", "h31", "2,2,2,2", "--format", "json"]));
    assert_eq!(h["closed_form"], "1/64");
    assert_eq!(h["agree"], true);
    assert_eq!(run(&["map", "lz", "3", "0", "0", "0"]).status.code(), Some(64));
}

#[test]
fn sharpness_prints_the_extremal_value() {
    let o = run(&["sharpness"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H = -1/16\n"), "{}", stdout(&o));
}

#[test]
fn theorem_exit_codes() {
    let o = run(&["prove", "theorem", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "proved");
    assert_eq!(v["bound"], "1/16");
    assert_eq!(v["theta_max"], "320");

    let o = run(&["prove", "theorem", "--invert", "1.4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["failed_at"], "lemma-1.4");

    let o = run(&["prove", "theorem", "--depth-budget", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "inconclusive");
}

#[test]
fn lemma_controls() {
    assert_eq!(run(&["prove", "lemma", "1.8"]).status.code(), Some(0));
    let o = run(&["prove", "lemma", "1.4", "--invert", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["witnesses"][0], serde_json::json!([["c", "0"], ["x", "1/4"]]));
    assert_eq!(run(&["prove", "lemma", "1.5", "--perturb", "0:1/2"]).status.code(), Some(1));
    assert_eq!(run(&["prove", "lemma", "2.1"]).status.code(), Some(64));
    assert_eq!(run(&["prove", "case", "E"]).status.code(), Some(64));
}

#[test]
fn usage_errors_exit_64() {
    let o = run(&["prove", "theorem", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(run(&["scan", "--count", "0"]).status.code(), Some(64));
    assert_eq!(run(&["cert", "verify", "/nonexistent.json"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn defaults_reproduce_shipped_certificates() {
    for (args, file) in [(&["prove", "theorem"][..], "theorem.json"), (&["sharpness"][..], "sharpness.json")] {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let fresh = run(&a).stdout;
        assert!(fresh == std::fs::read(shipped(file)).unwrap(), "{file} differs from a fresh run");
    }
}

#[test]
fn shipped_certificates_verify_idempotently() {
    for file in ["theorem.json", "sharpness.json", "scan.json"] {
        let path = shipped(file);
        let first = run(&["cert", "verify", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(first.status.code(), Some(0), "{file}: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(json(&first)["status"], "proved");
        if file != "scan.json" {
            assert_eq!(run(&["cert", "verify", path.to_str().unwrap(), "--format", "json"]).stdout, first.stdout);
        }
    }
}

#[test]
fn tampered_certificate_fails_replay() {
    let mut doc: Value = serde_json::from_slice(&std::fs::read(shipped("theorem.json")).unwrap()).unwrap();
    doc["bound"] = "1/15".into();
    let dir = std::env::temp_dir().join(format!("hankel-cert-tamper-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("theorem.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(run(&["cert", "verify", path.to_str().unwrap()]).status.code(), Some(1));

    let mut doc: Value = serde_json::from_slice(&std::fs::read(shipped("sharpness.json")).unwrap()).unwrap();
    doc["h31"] = "-1/17".into();
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(run(&["cert", "verify", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_rendering_follows_json() {
    let path = shipped("theorem.json");
    let shown = stdout(&run(&["cert", "show", path.to_str().unwrap()]));
    assert!(shown.starts_with("claim: "));
    assert!(shown.contains("status: proved\n"));
    assert!(shown.contains("attained: theta(0, 0, 1) = 320\n"));
    let out = std::env::temp_dir().join(format!("hankel-cert-out-{}.txt", std::process::id()));
    assert_eq!(run(&["cert", "show", path.to_str().unwrap(), "--out", out.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), shown);
    std::fs::remove_file(out).unwrap();
}
