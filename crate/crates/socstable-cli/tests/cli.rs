//! End-to-end runs of the socstable binary: golden stdout for solve and
//! verify, exit codes for the three failure classes, determinism, trace
//! output, and the reduce/gen/bench file plumbing.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use socstable::format::serialize_hrss;
use socstable::model::{fixture_fig1, fixture_tight};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_socstable"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = env::temp_dir().join(format!("socstable-cli-{}", std::process::id())).join(name);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn solve_prints_the_matching_and_verdict() {
    let dir = scratch("solve");
    let inst = file(&dir, "fig1.hrss", &serialize_hrss(&fixture_fig1()));
    let out = run(bin().args(["solve", "--algo", "brute"]).arg(&inst));
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert_eq!(
        stdout(&out),
        "algorithm: brute\nmatch m1 w1\nmatch m2 w2\nsize: 2\nsocially-stable: true\n"
    );
    assert!(stderr(&out).contains("time-ms:"), "stderr: {}", stderr(&out));
}

#[test]
fn approximation_can_fall_short_where_the_exact_solver_does_not() {
    let dir = scratch("tight");
    let inst = file(&dir, "tight.hrss", &serialize_hrss(&fixture_tight()));
    let out = run(bin().args(["solve", "--algo", "approx"]).arg(&inst));
    assert!(out.status.success());
    assert!(stdout(&out).contains("size: 2"), "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("proposals"), "stderr: {}", stderr(&out));
    let out = run(bin().args(["solve", "--algo", "two-inf"]).arg(&inst));
    assert!(out.status.success());
    assert!(stdout(&out).contains("size: 3"), "stdout: {}", stdout(&out));
}

#[test]
fn repeated_runs_write_identical_bytes() {
    let dir = scratch("determinism");
    let spec = file(&dir, "g.genspec", "genspec 1\nseed 5\nresidents 30\nhospitals 20\nrho 0.5\n");
    let first = run(bin().arg("gen").arg(&spec));
    let second = run(bin().arg("gen").arg(&spec));
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let inst = file(&dir, "g.hrss", &stdout(&first));
    let a = run(bin().args(["solve", "--algo", "approx"]).arg(&inst));
    let b = run(bin().args(["solve", "--algo", "approx"]).arg(&inst));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_file_exits_one() {
    let out = run(bin().args(["solve", "--algo", "brute", "/nonexistent/no.hrss"]));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error:"), "stderr: {}", stderr(&out));
}

#[test]
fn malformed_input_exits_two() {
    let dir = scratch("malformed");
    let inst = file(&dir, "bad.hrss", "hrss 1\nresident r\n");
    let out = run(bin().args(["solve", "--algo", "brute"]).arg(&inst));
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("missing pref line for resident r"),
        "stderr: {}",
        stderr(&out)
    );
}

#[test]
fn unmet_precondition_exits_three() {
    let dir = scratch("precondition");
    let text = "hrss 1\nresident r1\nhospital h1 cap 2\npref r1: h1\npref h1: r1\n";
    let inst = file(&dir, "cap2.hrss", text);
    let out = run(bin().args(["solve", "--algo", "two-inf"]).arg(&inst));
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("h1"), "stderr: {}", stderr(&out));
}

#[test]
fn brute_limit_comes_from_env_or_flag() {
    let dir = scratch("limit");
    let inst = file(&dir, "fig1.hrss", &serialize_hrss(&fixture_fig1()));
    let out = run(bin()
        .env("SOCSTABLE_BRUTE_LIMIT", "1")
        .args(["solve", "--algo", "brute"])
        .arg(&inst));
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
    let out = run(bin()
        .env("SOCSTABLE_BRUTE_LIMIT", "1")
        .args(["solve", "--algo", "brute", "--brute-limit", "1000000"])
        .arg(&inst));
    assert!(out.status.success(), "flag should override the env var");
}

#[test]
fn verify_lists_blocking_pairs() {
    let dir = scratch("verify");
    let inst = file(&dir, "fig1.hrss", &serialize_hrss(&fixture_fig1()));
    let m = file(&dir, "m.matching", "match m1 w1\nmatch m2 w2\n");
    let out = run(bin().arg("verify").arg(&inst).arg(&m));
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "block m2 w1 unacquainted\n\
         classical-blocking: 1\n\
         social-blocking: 0\n\
         classically-stable: false\n\
         socially-stable: true\n"
    );
}

#[test]
fn trace_streams_events_before_the_result() {
    let dir = scratch("trace");
    let inst = file(&dir, "tight.hrss", &serialize_hrss(&fixture_tight()));
    let out = run(bin().args(["solve", "--algo", "approx", "--trace"]).arg(&inst));
    assert!(out.status.success());
    let text = stdout(&out);
    let first_trace = text.find("trace ").expect("trace lines present");
    let result = text.find("algorithm: approx").expect("result follows");
    assert!(first_trace < result, "stdout: {text}");
}

#[test]
fn reduce_writes_instance_and_map_files() {
    let dir = scratch("reduce");
    let inst = file(&dir, "fig1.hrss", &serialize_hrss(&fixture_fig1()));
    let base = dir.join("net");
    let out = run(bin()
        .args(["reduce", "--to", "hrsn", "--out"])
        .arg(&base)
        .arg(&inst));
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = fs::read_to_string(dir.join("net.hrsn")).unwrap();
    assert!(body.starts_with("hrsn 1\n"));
    let map = fs::read_to_string(dir.join("net.map")).unwrap();
    assert!(map.lines().all(|l| l.starts_with("dummy ")), "map: {map}");
    assert_eq!(map.lines().count(), 2);
}

#[test]
fn reduce_output_on_stdout_still_parses_as_an_instance() {
    let dir = scratch("reduce-stdout");
    let text = "hrss 1\nresident r1\nresident r2\nhospital h1 cap 2\npref r1: h1\npref r2: h1\npref h1: r1 r2\nacq r1 h1\n";
    let inst = file(&dir, "cap2.hrss", text);
    let out = run(bin().args(["reduce", "--to", "smiss-clone"]).arg(&inst));
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# map clone h1 h1#1 h1#2"), "stdout: {text}");
    let cloned = file(&dir, "cloned.hrss", &text);
    let out = run(bin().args(["solve", "--algo", "brute"]).arg(&cloned));
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("size: 2"));
}

#[test]
fn reduce_from_marriage_ties_is_seeded() {
    let dir = scratch("smti");
    let text = "smti 1\nman m1\nman m2\nman m3\nwoman w1\nwoman w2\nwoman w3\n\
        pref m1: [w1 w2 w3]\npref m2: w1 [w2 w3]\npref m3: [w2]\n\
        pref w1: m1 m2\npref w2: m3 m1 m2\npref w3: m1 m2\n";
    let inst = file(&dir, "ties.smti", text);
    let a = run(bin().args(["reduce", "--from", "smti", "--seed", "7"]).arg(&inst));
    let b = run(bin().args(["reduce", "--from", "smti", "--seed", "7"]).arg(&inst));
    assert!(a.status.success(), "stderr: {}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("hrss 1\n"));
    assert!(text.contains("# map tie-break-seed 7"), "stdout: {text}");
}

#[test]
fn gen_writes_numbered_instance_files() {
    let dir = scratch("gen");
    let spec = file(
        &dir,
        "batch.genspec",
        "genspec 1\nseed 3\nresidents 6\nhospitals 4\nrho 0.25\ncount 3\n",
    );
    let out_dir = dir.join("instances");
    let out = run(bin().arg("gen").arg("--out").arg(&out_dir).arg(&spec));
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    for i in 0..3 {
        let path = out_dir.join(format!("batch-{i:04}.hrss"));
        let solved = run(bin().args(["solve", "--algo", "approx"]).arg(&path));
        assert!(solved.status.success(), "instance {i} did not solve");
    }
    assert_eq!(fs::read_dir(&out_dir).unwrap().count(), 3);
}

#[test]
fn bench_emits_one_csv_row_per_instance_and_algorithm() {
    let dir = scratch("bench");
    let spec = file(
        &dir,
        "bench.genspec",
        "genspec 1\nseed 9\nresidents 5\nhospitals 4\nrho 0.5\ncount 2\n",
    );
    let out = run(bin().arg("bench").arg(&spec));
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("instance,algo,residents,hospitals,acceptable,acquainted,status,size,socially_stable,ratio,time_ms")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2 * 6);
    for row in rows {
        assert_eq!(row.split(',').count(), 11, "row: {row}");
        assert!(row.contains(",ok,") || row.contains(",skipped,"), "row: {row}");
    }
}

#[test]
fn unknown_algorithm_is_a_usage_error() {
    let out = run(bin().args(["solve", "--algo", "nope", "x.hrss"]));
    assert_eq!(out.status.code(), Some(2));
}
