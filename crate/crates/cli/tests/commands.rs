use std::fs;
use std::path::Path;

use leibniz_cli::{parse_algebra_file, run_command, serialize_algebra, CommandOutput};
use leibniz_core::constructions::{build_named, random_algebra, RandomKind};
use proptest::prelude::*;

fn run(args: &[&str]) -> CommandOutput {
    let mut argv = vec!["leibniz"];
    argv.extend_from_slice(args);
    run_command(argv)
}

fn kv(out: &CommandOutput, key: &str) -> Option<String> {
    let prefix = format!("{key} = ");
    out.stdout
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
}

fn write_named(dir: &Path, name: &str, params: &[usize]) -> String {
    let entry = build_named(name, params).unwrap();
    let path = dir.join(format!("{}.alg", entry.slug()));
    fs::write(&path, serialize_algebra(&entry.algebra)).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn broken_file_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    fs::write(&path, "field Q\ndim 2\nbasis a b\na*a = b\nb*a = a\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap(), "--format", "kv"]);
    assert_eq!(out.status, 1);
    assert_eq!(kv(&out, "validation.valid").as_deref(), Some("false"));
    assert_eq!(kv(&out, "validation.witness").as_deref(), Some("(a, a, a)"));
}

#[test]
fn unparsable_file_exits_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    fs::write(&path, "field: Q\n").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status, 1);
    assert!(out.stderr.contains("line 1"));
}

#[test]
fn heisenberg_is_supersolvable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_named(dir.path(), "heisenberg", &[]);
    let out = run(&["check", "supersolvable", &path, "--format", "kv"]);
    assert_eq!(out.status, 0);
    assert_eq!(kv(&out, "flags.supersolvable").as_deref(), Some("true"));

    let out = run(&["witness", "--mode", "ef", &path, "--format", "kv"]);
    assert_eq!(out.status, 0);
    assert_eq!(kv(&out, "witness.found").as_deref(), Some("false"));
}

#[test]
fn sl2_is_not_solvable() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_named(dir.path(), "sl2", &[]);
    let out = run(&["analyze", &path, "--format", "kv"]);
    assert_eq!(out.status, 0);
    assert_eq!(kv(&out, "flags.solvable").as_deref(), Some("false"));
    assert_eq!(kv(&out, "flags.lie").as_deref(), Some("true"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["bogus"]).status, 64);
    assert_eq!(run(&["recog", "--n", "7", "x.alg"]).status, 64);
    assert_eq!(run(&["--help"]).status, 0);
    assert_eq!(run(&["--version"]).status, 0);
}

#[test]
fn missing_file_is_reported() {
    let out = run(&["analyze", "/nonexistent/none.alg"]);
    assert_ne!(out.status, 0);
    assert!(!out.stderr.is_empty());
}

#[test]
fn text_and_kv_carry_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_named(dir.path(), "cyclic_leibniz", &[3]);
    let text = run(&["analyze", &path]);
    let kvs = run(&["analyze", &path, "--format", "kv"]);
    assert_eq!(text.status, kvs.status);
    assert!(text.stdout.contains("[flags]"));
    assert_eq!(kv(&kvs, "flags.lie").as_deref(), Some("false"));
}

fn kind() -> impl Strategy<Value = RandomKind> {
    prop_oneof![
        Just(RandomKind::Nilpotent),
        Just(RandomKind::Solvable),
        Just(RandomKind::Mixed)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn file_round_trip(k in kind(), n in 1usize..=6, seed in any::<u64>()) {
        let a = random_algebra(k, n, seed).unwrap().algebra;
        let text = serialize_algebra(&a);
        let back = parse_algebra_file(&text).unwrap();
        prop_assert!(back.is_validated());
        prop_assert!(back.same_structure(&a));
        prop_assert_eq!(serialize_algebra(&back), text);
    }
}
