use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use jordan_core::catalog::{catalog, catalog_cases};
use jordan_core::cli::file_name;
use jordan_core::format::parse_algebra_file;
use jordan_core::search::find_isomorphism;

fn jordan(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_jordan")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

fn catalog_file(case: &str, name: &str) -> String {
    catalog_dir().join(case).join(name).to_str().unwrap().to_string()
}

#[test]
fn check_reports_nilindex() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a.alg", "field F 3\ndim 3\n1 1 : 2:1\n1 2 : 3:1\n");
    let (code, out, _) = jordan(&["check", &f]);
    assert_eq!(code, 0);
    assert_eq!(out, "Jordan: yes; nilpotent: yes (nilindex 4)\n");
    let (_, json, _) = jordan(&["--json", "check", &f]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["nilindex"], 4);
}

#[test]
fn iso_expectations() {
    let (j46, j47) = (catalog_file("closed", "J_4_6.alg"), catalog_file("closed", "J_4_7.alg"));
    assert_eq!(jordan(&["iso", &j46, &j47, "--expect", "noniso"]).0, 0);
    assert_eq!(jordan(&["iso", &j46, &j47, "--expect", "iso"]).0, 1);
    assert_eq!(jordan(&["iso", &j46, &j46, "--expect", "iso"]).0, 0);
    let (code, out, _) = jordan(&["--json", "iso", &j46, &j47, "--mode", "closure"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"distinguished\""), "{out}");
}

#[test]
fn extend_writes_an_algebra_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "z.alg", "field F 5\ndim 2\n");
    let (code, out, err) = jordan(&["extend", &f, "--theta", "S(1,1)+S(2,2)"]);
    assert_eq!(code, 0, "{err}");
    let a = parse_algebra_file(&out).unwrap();
    assert_eq!(a.dim(), 3);
    assert_eq!(a.table(), "a^2 = c; b^2 = c");
    assert_eq!(jordan(&["extend", &f, "--theta", "S(1,3)"]).0, 2);
}

#[test]
fn classify_and_oracle() {
    let (code, out, _) = jordan(&["classify", "--dim", "3", "--field", "F:3"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("5 classes of dimension 3 over F 3\n"), "{out}");
    let (code, out, _) = jordan(&["oracle", "--dim", "3", "--field", "F:2"]);
    assert_eq!(code, 0);
    assert!(out.contains("5 classes of dimension 3 over F 2\n") && out.ends_with("92 nilpotent Jordan\n"), "{out}");
    let (code, _, err) = jordan(&["oracle", "--dim", "3", "--field", "F:3"]);
    assert_eq!(code, 3, "{err}");
    assert_eq!(jordan(&["classify", "--dim", "3", "--field", "Q"]).0, 2);
}

#[test]
fn output_is_reproducible() {
    let args = ["classify", "--dim", "4", "--field", "F:2"];
    let (_, one, _) = jordan(&args);
    assert_eq!(jordan(&args).1, one);
    let mut parallel = vec!["--jobs", "4"];
    parallel.extend(args);
    assert_eq!(jordan(&parallel).1, one);
    let (_, a, _) = jordan(&["--json", "--jobs", "1", "catalog", "verify", "--case", "closed", "--dim", "4"]);
    let (_, b, _) = jordan(&["--json", "--jobs", "4", "catalog", "verify", "--case", "closed", "--dim", "4"]);
    assert_eq!(a, b);
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("f4.alg", "field F 4\ndim 2\n"),
        ("range.alg", "field Q\ndim 2\n1 3 : 1:1\n"),
        ("dup.alg", "field Q\ndim 2\n1 1 : 2:1\n1 1 : 2:2\n"),
        ("nodim.alg", "field Q\n"),
    ] {
        let f = write(dir.path(), name, text);
        let (code, _, err) = jordan(&["check", &f]);
        assert_eq!(code, 2, "{name}");
        assert!(!err.is_empty());
    }
    assert_eq!(jordan(&["check", "/nonexistent.alg"]).0, 2);
    assert_eq!(jordan(&["frobnicate"]).0, 2);
}

#[test]
fn gb_and_catalog_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.gb", "field Q\nvars x y\norder lex\nx^2 + y^2 - 1\nx - y\n");
    let (code, out, _) = jordan(&["gb", &f]);
    assert_eq!(code, 0);
    assert!(out.contains("y^2 - 1/2") && out.contains("x - y"), "{out}");
    let (code, out, _) = jordan(&["catalog", "verify", "--case", "real", "--dim", "3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn stored_catalog_files_match_the_tables() {
    let mut seen = 0;
    for (case, dim) in catalog_cases() {
        for e in catalog(case, dim) {
            let path = catalog_dir().join(case.name()).join(file_name(&e.id));
            let text = fs::read_to_string(&path).unwrap_or_else(|_| panic!("{}", path.display()));
            let a = parse_algebra_file(&text).unwrap();
            assert!(a.check_jordan() && a.is_nilpotent(), "{}", path.display());
            assert_eq!(a, e.algebra, "{}", path.display());
            assert!(find_isomorphism(&a, &e.algebra).unwrap().is_some());
            let (code, out, _) = jordan(&["check", path.to_str().unwrap()]);
            assert_eq!(code, 0);
            assert!(out.starts_with("Jordan: yes; nilpotent: yes"));
            seen += 1;
        }
    }
    let on_disk: usize =
        fs::read_dir(catalog_dir()).unwrap().map(|d| fs::read_dir(d.unwrap().path()).unwrap().count()).sum();
    assert_eq!(seen, on_disk);
}
