use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use skewbrace::io;
use skewbrace::{GroupTable, SkewBrace};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewbrace")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_brace(dir: &tempfile::TempDir, name: &str, b: &SkewBrace) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, io::brace_to_json(b.as_bigroup())).unwrap();
    path.display().to_string()
}

#[test]
fn verify_passes_on_z4_brace_in_both_formats() {
    for file in ["z4_radical.json", "z4_radical.txt"] {
        let out = run(&["verify", data(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let report = stdout(&out);
        assert_eq!(report.lines().count(), 7);
        assert!(report.lines().all(|l| l.ends_with("PASS")), "{report}");
    }
}

#[test]
fn verify_reports_compatibility_witness() {
    let out = run(&["verify", data("incompatible.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    let compat = report.lines().find(|l| l.starts_with("compatibility")).unwrap();
    assert!(compat.ends_with("FAIL (1, 1, 1)"), "{compat}");
}

#[test]
fn verify_all_witnesses_lists_every_failure() {
    let out = run(&["verify", "--all-witnesses", data("incompatible.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.lines().filter(|l| l.trim_start().starts_with("witness")).count() > 1);
    assert!(report.contains("    witness (1, 1, 1)\n"));
}

#[test]
fn verify_rejects_non_group_table() {
    let out = run(&["verify", data("nonassociative_circ.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("circ") && err.contains("not associative"), "{err}");
}

#[test]
fn maps_prints_sigma_and_tau() {
    let out = run(&["maps", data("z4_radical.json").to_str().unwrap(), "--element", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1: sigma=[0,3,2,1] tau=[0,3,2,1]\n");

    let dir = tempfile::tempdir().unwrap();
    let trivial = write_brace(&dir, "t.json", &SkewBrace::trivial(&GroupTable::cyclic(3)));
    let out = run(&["maps", &trivial]);
    assert_eq!(stdout(&out), "0: sigma=[0,1,2] tau=[0,1,2]\n1: sigma=[0,1,2] tau=[0,1,2]\n2: sigma=[0,1,2] tau=[0,1,2]\n");

    let out = run(&["maps", data("z4_radical.json").to_str().unwrap(), "--element", "1", "--format", "json"]);
    assert_eq!(stdout(&out), "{\"n\":4,\"maps\":[{\"element\":1,\"sigma\":[0,3,2,1],\"tau\":[0,3,2,1]}]}\n");
}

#[test]
fn maps_rejects_out_of_range_element() {
    let out = run(&["maps", data("z4_radical.json").to_str().unwrap(), "--element", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rmap_exports_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let swap = write_brace(&dir, "z2.json", &SkewBrace::trivial(&GroupTable::cyclic(2)));
    let out = run(&["r-map", &swap]);
    assert_eq!(stdout(&out), "{\"n\":2,\"r\":[[[0,0],[1,0]],[[0,1],[1,1]]]}\n");

    let s3 = write_brace(&dir, "s3.json", &SkewBrace::trivial(&GroupTable::symmetric3()));
    let out = run(&["r-map", &s3, "--format", "csv"]);
    let csv = stdout(&out);
    assert_eq!(csv.lines().count(), 1 + 36);
    assert_eq!(csv.lines().next(), Some("a,b,first,second"));
    // R(1, 2) = (2, 2⁻¹·1·2) = (2, 3) in the S3 numbering
    assert!(csv.lines().any(|l| l == "1,2,2,3"));
    assert_eq!(run(&["r-map", &s3, "--format", "csv"]).stdout, out.stdout);
}

#[test]
fn check_ybe_accepts_braces_and_maps() {
    let out = run(&["check-ybe", data("z4_radical.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "yang-baxter    PASS\nnondegenerate  yes\nbijective      yes\n");

    let out = run(&["check-ybe", data("swap3.json").to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let rmap = dir.path().join("r.json");
    let brace = write_brace(&dir, "s3.json", &SkewBrace::opposite(&GroupTable::symmetric3()));
    let out = run(&["r-map", &brace, "--output", rmap.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(run(&["check-ybe", rmap.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn check_ybe_reports_witness() {
    let out = run(&["check-ybe", data("perturbed2.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.starts_with("yang-baxter    FAIL (0, 0, 0)"), "{report}");

    let out = run(&["check-ybe", data("incompatible.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_small_orders() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = run(&["enumerate", "--order", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("order=1 raw=1 iso=1 elapsed="));
    let (meta, braces) = io::parse_catalog(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((meta.order, meta.count, braces.len()), (1, 1, 1));

    let out = run(&["enumerate", "--order", "3", "--up-to-iso"]);
    let (meta, _) = io::parse_catalog(&stdout(&out)).unwrap();
    assert_eq!(meta.count, 1);
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("order=3 raw=1 iso=1"));
}

#[test]
fn enumerate_oracle_and_jobs_are_byte_identical() {
    for iso in [false, true] {
        let mut args = vec!["enumerate", "--order", "4"];
        if iso {
            args.push("--up-to-iso");
        }
        let base = run(&args).stdout;
        let oracle = run(&[args.as_slice(), &["--oracle"]].concat()).stdout;
        let jobs = run(&[args.as_slice(), &["--jobs", "3"]].concat()).stdout;
        assert_eq!(base, oracle);
        assert_eq!(base, jobs);
        assert_eq!(base, run(&args).stdout);
    }
}

#[test]
fn enumerate_rejects_unsupported_orders() {
    assert_eq!(run(&["enumerate", "--order", "9"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--order", "6", "--oracle"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--order", "0"]).status.code(), Some(2));
}

#[test]
fn missing_file_and_bad_usage_exit_two() {
    assert_eq!(run(&["verify", "/nonexistent/brace.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
