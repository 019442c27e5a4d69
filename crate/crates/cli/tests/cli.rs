use std::path::Path;
use std::process::{Command, Output};

use tdgen::io::{load_instance, render_solution, Solution};
use tdgen::sweep::parse_log;
use tdgen::{detect_conflicts, Vec3};

fn tdgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdgen")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn circle_file_is_fully_congested() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("circle.txt");
    assert_eq!(code(&tdgen(&["circle", "--n", "7", "--out", path(&file)])), 0);
    let inst = load_instance(&file).unwrap();
    assert_eq!(detect_conflicts(&inst).len(), 21);
}

#[test]
fn single_value_broadcasts_over_planes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    assert_eq!(code(&tdgen(&["polyhedral", "--hp", "2", "--mx", "2", "--out", path(&a)])), 0);
    assert_eq!(code(&tdgen(&["polyhedral", "--hp", "2", "--mx", "2,2", "--out", path(&b)])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // a list whose length matches neither 1 nor the plane count is rejected
    assert_eq!(code(&tdgen(&["polyhedral", "--hp", "2", "--mx", "2,2,2", "--out", path(&a)])), 2);
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.txt");
    assert_eq!(code(&tdgen(&["circle", "--n", "1", "--out", path(&out)])), 2);
    let infeasible = ["pseudo-random", "--n", "10", "--nc", "30", "--maxc", "3", "--out", path(&out)];
    assert_eq!(code(&tdgen(&infeasible)), 3);

    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "not an instance\n").unwrap();
    let failed = tdgen(&["analyze", path(&junk)]);
    assert_eq!(code(&failed), 4);
    assert!(!failed.stderr.is_empty());
}

#[test]
fn validate_reports_remaining_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let inst_file = dir.path().join("circle.txt");
    assert_eq!(code(&tdgen(&["circle", "--n", "2", "--radius", "50", "--out", path(&inst_file)])), 0);
    let inst = load_instance(&inst_file).unwrap();

    let identity = dir.path().join("identity.txt");
    std::fs::write(&identity, render_solution(&Solution::identity(&inst, "circle"))).unwrap();
    assert_eq!(code(&tdgen(&["validate", path(&inst_file), path(&identity)])), 5);

    // turning one aircraft by 90 degrees clears the head-on encounter
    let mut turned = Solution::identity(&inst, "circle");
    let v = turned.velocities[1].1;
    turned.velocities[1].1 = Vec3::new(-v.y, v.x, 0.0);
    let fixed = dir.path().join("fixed.txt");
    std::fs::write(&fixed, render_solution(&turned)).unwrap();
    assert_eq!(code(&tdgen(&["validate", path(&inst_file), path(&fixed)])), 0);

    turned.velocities.pop();
    let short = dir.path().join("short.txt");
    std::fs::write(&short, render_solution(&turned)).unwrap();
    assert_eq!(code(&tdgen(&["validate", path(&inst_file), path(&short)])), 4);
}

#[test]
fn relative_output_resolves_against_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tdgen"))
        .args(["grid", "--mx", "2", "--my", "2", "--out", "grid.txt"])
        .env("TDGEN_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let inst = load_instance(dir.path().join("grid.txt")).unwrap();
    assert_eq!(detect_conflicts(&inst).len(), 4);
}

#[test]
fn analyze_plot_and_sweep_write_their_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("r.txt");
    assert_eq!(code(&tdgen(&["random", "--n", "15", "--seed", "3", "--out", path(&inst)])), 0);

    let report = tdgen(&["analyze", path(&inst)]);
    assert_eq!(code(&report), 0);
    assert!(!report.stdout.is_empty());

    let svg = dir.path().join("r.svg");
    assert_eq!(code(&tdgen(&["plot", path(&inst), "--highlight", "--out", path(&svg)])), 0);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));

    let summary = dir.path().join("summary.txt");
    let log = dir.path().join("log.txt");
    let args = ["sweep", "--n", "10", "--den", "0.1", "--width", "200", "--out", path(&summary), "--log", path(&log)];
    assert_eq!(code(&tdgen(&args)), 0);
    let records = parse_log(&std::fs::read_to_string(&log).unwrap()).unwrap().records;
    // one width and the two default offsets
    assert_eq!(records.len(), 2);
    assert!(std::fs::metadata(&summary).unwrap().len() > 0);
}
