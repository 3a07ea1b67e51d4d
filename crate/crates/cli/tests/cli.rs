use std::process::{Command, Output};

fn garside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = garside(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn nf_examples() {
    assert!(stdout(&["nf", "--n", "3", "s2", "s1", "s2"]).starts_with("D^1 |\n"));
    assert!(stdout(&["nf", "--n", "3", "s1 S2"]).starts_with("D^-1 | s2 . s2 s1\n"));
    assert!(stdout(&["nf", "--n", "3"]).starts_with("D^0 |\n"));
    let j: serde_json::Value = serde_json::from_str(&stdout(&["nf", "--n", "4", "--format", "json", "s1 s3 s2"])).unwrap();
    assert_eq!(j["len"], 1);
}

#[test]
fn counts_at_n3() {
    let csv = stdout(&["counts", "--n", "3", "--lmax", "20"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("l,N,N°,N_w,N°_w"));
    for (l, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[1], (4u64 << l).to_string());
    }
    let avoiding = stdout(&["counts", "--n", "3", "--lmax", "6", "--pattern", "xa"]);
    assert!(avoiding.lines().nth(6).unwrap().split(',').all(|c| !c.is_empty()));
}

#[test]
fn spectrum_reports_gap() {
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&["spectrum", "--n", "3", "--pattern", "xa", "--format", "json"])).unwrap();
    assert!((j["gamma"]["gamma"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!(j["avoiding"][0]["gamma_w"]["upper"].as_f64().unwrap() < 2.0);
}

#[test]
fn certify_json() {
    let j: serde_json::Value = serde_json::from_str(&stdout(&["certify", "--n", "3", "s1 s1"])).unwrap();
    assert_eq!(j["kind"], "ReducibilityWitness");
    assert_eq!(j["len"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(garside(&["nf", "--n", "3", "s7"]).status.code(), Some(2));
    assert_eq!(garside(&["nf", "--n", "2", "s1"]).status.code(), Some(2));
    assert_eq!(garside(&["bogus"]).status.code(), Some(2));
    assert_eq!(garside(&["certify", "--n", "3", "s1 s2"]).status.code(), Some(2));
    let capped = garside(&["counts", "--n", "5", "--lmax", "4", "--pattern", "xb", "--lift-cap", "10"]);
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn outputs_are_reproducible() {
    let args = ["sample", "--n", "3", "--l", "12", "--samples", "300", "--seed", "5"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    assert_eq!(a, stdout(&["--threads", "1", "sample", "--n", "3", "--l", "12", "--samples", "300", "--seed", "5"]));
    assert!(a.starts_with("l,exact_bound_num,exact_bound_den,sampled,ci_lo,ci_hi\n12,"));
}

#[test]
fn cache_changes_timing_only() {
    let dir = std::env::temp_dir().join(format!("garside-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.join("g4.json");
    let path = cache.to_str().unwrap();
    let fresh = stdout(&["sphere", "--n", "4", "--lmax", "8"]);
    let first = stdout(&["sphere", "--n", "4", "--lmax", "8", "--cache", path]);
    assert!(cache.exists());
    let second = stdout(&["sphere", "--n", "4", "--lmax", "8", "--cache", path]);
    assert_eq!(fresh, first);
    assert_eq!(first, second);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_n3_passes() {
    let out = garside(&["verify", "--n", "3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
