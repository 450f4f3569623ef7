use std::path::Path;
use std::process::{Command, Output};

fn cqg(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cqg"))
        .args(args)
        .env("CQG_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

const AB: &str = r#"{"ring":"free:2","kind":"points","terms":[{"label":"a","re":"1.0","im":"0.0"},{"label":"b","re":"1.0","im":"0.0"}]}"#;

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dims_prints_the_dimension_recursion() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dims.csv");
    let o = cqg(&["dims", "--ring", "onplus:3", "--kmax", "3", "--out", out.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "k,dim\n0,1\n1,3\n2,8\n3,21\n");
}

#[test]
fn paley_reports_constant_one_at_level_zero() {
    let dir = tempfile::tempdir().unwrap();
    let o = cqg(&["paley", "--ring", "onplus:2", "--weight", "r=1,s=3", "--kmax", "1000", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["constant"]["finite"], 1.0);
    assert_eq!(v["attained_at"], 0);
}

#[test]
fn identical_runs_write_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("run{i}.csv"));
            let o = cqg(
                &[
                    "hl-ratio", "--ring", "onplus:3", "--family", "monotone", "--count", "4", "--seed", "11", "--support-cap", "8",
                    "--p", "1.5", "--p", "1.8", "--weight", "r=r0,s=2", "--no-cache", "--quiet", "--out", out.to_str().unwrap(),
                ],
                dir.path(),
            );
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            std::fs::read(&out).unwrap()
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn cache_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = ["norm", "--ring", "lattice:2", "--family", "sphere:level=2", "--count", "3", "--seed", "5", "--p", "1.5", "--p", "4"];
    let run = |extra: &[&str], name: &str| {
        let out = dir.path().join(name);
        let mut all: Vec<&str> = args.to_vec();
        all.extend_from_slice(extra);
        all.extend_from_slice(&["--quiet", "--out", out.to_str().unwrap()]);
        let o = cqg(&all, &cache);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let uncached = run(&["--no-cache"], "a.csv");
    let miss = run(&[], "b.csv");
    assert!(std::fs::read_dir(&cache).unwrap().count() > 0);
    let hit = run(&[], "c.csv");
    assert_eq!(uncached, miss);
    assert_eq!(miss, hit);
}

#[test]
fn violations_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    // A deliberately wrong bound: every ratio on this element exceeds 0.1.
    let o = cqg(
        &["hl-ratio", "--ring", "lattice:1", "--p", "1.5", "--weight", "r=1,s=1", "--family", "heat:t=0.1", "--seed", "7", "--bound", "0.1"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let o = cqg(
        &["hl-ratio", "--ring", "lattice:1", "--p", "1.5", "--weight", "r=1,s=1", "--family", "heat:t=0.1", "--seed", "7", "--bound", "100"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn non_convergence_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = cqg(
        &["norm", "--ring", "free:2", "--inline", AB, "--p", "inf", "--max-iter", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn io_failures_exit_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = blocker.join("report.csv");
    let o = cqg(&["dims", "--ring", "onplus:3", "--kmax", "3", "--out", out.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(4));
    let missing = dir.path().join("missing.json");
    let o = cqg(&["norm", "--element", missing.to_str().unwrap(), "--p", "2"], dir.path());
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = cqg(&["norm", "--ring", "onplus:3", "--family", "monotone", "--p", "2"], dir.path());
    assert_eq!(o.status.code(), Some(1), "seed is mandatory for randomized families");
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"ring": "onplus:3", "kmax": 2, "colour": "red"}"#).unwrap();
    let o = cqg(&["dims", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn config_files_fill_in_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"ring": "onplus:3", "kmax": 2, "format": "json"}"#).unwrap();
    let o = cqg(&["dims", "--config", cfg.to_str().unwrap(), "--kmax", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2, "command-line kmax wins: {v}");
}

#[test]
fn haagerup_on_a_given_element() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ab.json");
    std::fs::write(&f, AB).unwrap();
    let o = cqg(&["haagerup", "--N", "2", "--k", "1", "--element", f.to_str().unwrap(), "--radius", "8", "--format", "json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ratio = v["max_ratio"].as_f64().unwrap();
    // ‖λ(δ_a+δ_b)‖ = 2, bound √e·√2·√2.
    assert!(ratio > 0.55 && ratio <= 2.0 / (2.0 * 0.5f64.exp()) + 1e-12, "{ratio}");
}
