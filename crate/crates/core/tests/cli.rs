use std::path::PathBuf;
use std::process::Command;

fn entropic(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_entropic")).args(args).env_remove("ENTROPIC_TIMING").output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("entropic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn passing_commands_exit_zero() {
    for args in [
        &["check", "laws", "X2"][..],
        &["check", "laws", "UT"],
        &["check", "laws", "C3"],
        &["check", "laws", "nat_sat2"],
        &["inv", "C3"],
        &["abelianize", "C3"],
        &["tensor", "D", "K"],
        &["lie-of-monoid", "UT"],
        &["tensor-algebra", "A1", "--degree", "3"],
        &["envelope", "L1", "--degree", "2", "--stability-check"],
        &["primitives", "G2"],
        &["check", "adjunction", "L1", "X2", "--degree", "2"],
        &["list"],
    ] {
        let (out, err, code) = entropic(args);
        assert_eq!(code, 0, "{args:?}\n{out}{err}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [&["envelope", "L2", "--degree", "2"][..], &["--format", "json", "check", "laws", "P3"]] {
        assert_eq!(entropic(args), entropic(args));
    }
}

#[test]
fn file_references_resolve_against_the_file() {
    let b2 = fixture("b2.alg");
    let (out, _, code) = entropic(&["inv", &format!("{b2}:C3")]);
    assert_eq!(code, 0);
    assert!(out.contains("Inv = {0}"));
    let (out, _, code) = entropic(&["fmt", &b2]);
    assert_eq!(code, 0);
    let copy = scratch("b2-copy.alg", &out);
    assert_eq!(entropic(&["fmt", copy.to_str().unwrap()]).0, out);
}

#[test]
fn parse_failures_have_distinct_codes() {
    let syntax = scratch("syntax.alg", "semiring\n");
    let unresolved = scratch("unresolved.alg", "semimodule A over R = free x\n");
    let dimension = scratch(
        "dimension.alg",
        "semiring B = builtin bool\nsemimodule C over B\n  elements 0 1\n  zero 0\n  add\n    0: 0 1\n    1: 1\n  act\n    0: 0 0\n    1: 0 1\nend\n",
    );
    let invalid = scratch(
        "invalid.alg",
        "semiring B = builtin zmod 2\nsemimodule A over B = free x\nlie L on A\n  bracket\n    0: x 0\n    x: 0 0\nend\n",
    );
    let code = |p: &PathBuf| entropic(&["list", p.to_str().unwrap()]);
    assert_eq!(code(&syntax).2, 2);
    let (_, err, c) = code(&unresolved);
    assert_eq!(c, 4);
    assert!(err.contains("1:19:"), "{err}");
    let (_, err, c) = code(&dimension);
    assert_eq!(c, 5);
    assert!(err.contains("`C`"), "{err}");
    assert_eq!(code(&invalid).2, 1);
    assert_eq!(entropic(&["list", "/nonexistent/x.alg"]).2, 2);
}

#[test]
fn unlawful_objects_exit_one_with_witnesses() {
    // 1·x = 0, so 1 is not a left unit.
    let src = "semiring B = builtin zmod 2\nsemimodule A over B = free 1 x\nmonoid M on A\n  unit 1\n  mul\n    0: 0 0 0 0\n    x: 0 0 x x\n    1: 0 0 1 1\n    1+x: 0 0 1+x 1+x\nend\n";
    let p = scratch("unlawful.alg", src);
    let (out, _, code) = entropic(&["check", "laws", &format!("{}:M", p.display())]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL unit"), "{out}");
}

#[test]
fn usage_and_resource_codes() {
    assert_eq!(entropic(&["envelope", "L2"]).2, 2);
    assert_eq!(entropic(&["--format", "yaml", "inv", "C3"]).2, 2);
    assert_eq!(entropic(&["check", "adjunction", "L2", "UT", "--degree", "2"]).2, 4);
    assert_eq!(entropic(&["--cap", "2", "inv", "A2"]).2, 3);
    assert_eq!(entropic(&["--help"]).2, 0);
}
