use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use unifrac::instances::{make_named, NAMED};
use unifrac::io::{load_instance, write_instance};

fn unifrac(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("unifrac").chain(args.iter().copied());
    let code = unifrac_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../instances")
}

fn write(dir: &tempfile::TempDir, name: &str) -> String {
    let path = dir.path().join(name.to_lowercase());
    let (code, _, err) = unifrac(&["instance", name, "-o", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    path.to_str().unwrap().to_string()
}

#[test]
fn localise_ch3_has_seven_classes() {
    let dir = tempfile::tempdir().unwrap();
    let ch3 = write(&dir, "CH3");
    let out = dir.path().join("out");
    let dot = dir.path().join("out.dot");
    let (code, stdout, _) = unifrac(&["localise", &ch3, "-o", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!((code, stdout.as_str()), (0, "classes 7\n"));
    let doc = load_instance(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.base().num_morphisms(), 7);
    assert_eq!(fs::read_to_string(dot).unwrap().matches("->").count(), 7);
    let (code, stdout, _) = unifrac(&["validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.ends_with("valid true\n"));
}

#[test]
fn equal_example() {
    let dir = tempfile::tempdir().unwrap();
    let ch3 = write(&dir, "CH3");
    for method in ["oracle", "3x3", "both"] {
        let (code, stdout, _) =
            unifrac(&["equal", &ch3, "--left", "i_1,m_1_2,i_2", "--right", "m_0_1,m_0_2,i_2", "--method", method]);
        assert_eq!((code, stdout.as_str()), (0, "equal\n"), "{method}");
    }
    let (code, stdout, _) = unifrac(&[
        "equal", &ch3, "--left", "i_1,m_1_2,i_2", "--right", "m_0_1,m_0_2,i_2", "--method", "3x3", "--witness",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 7);
    assert!(stdout.contains("row4 m_0_1 m_0_2 i_2"));
}

#[test]
fn idem_fails_weak_uniformity() {
    let dir = tempfile::tempdir().unwrap();
    let idem = write(&dir, "idem");
    let (code, stdout, _) = unifrac(&["axioms", &idem]);
    assert_eq!(code, 1);
    assert!(stdout.contains("(WU) FAIL witness i=e f=e\n"), "{stdout}");
    assert!(stdout.ends_with("uni-fractionable false\n"));
    let (code, stdout, _) = unifrac(&["axioms", &idem, "--witness"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("(Fac) factorisation"));
}

#[test]
fn compose_and_normalise() {
    let dir = tempfile::tempdir().unwrap();
    let ch3 = write(&dir, "CH3");
    let mut classes = Vec::new();
    for mode in ["strict", "lax"] {
        let (code, stdout, err) =
            unifrac(&["compose", &ch3, "--left", "i_0,m_0_1,i_1", "--right", "i_1,m_1_2,i_2", "--mode", mode]);
        assert_eq!(code, 0, "{err}");
        classes.push(stdout.lines().nth(1).unwrap().to_string());
    }
    assert_eq!(classes[0], classes[1]);
    let (code, stdout, _) = unifrac(&["normalise", &ch3, "--arrow", "m_0_1,m_0_2,i_2"]);
    assert_eq!((code, stdout.as_str()), (0, "normal i_1,m_1_2,i_2\n"));
}

#[test]
fn check_suites() {
    let dir = tempfile::tempdir().unwrap();
    let dia = write(&dir, "DIA");
    let (code, stdout, _) = unifrac(&["check", &dia, "--suite", "all"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("theorem divergences 0\n"));
    assert!(stdout.contains("coproducts PASS"));
    assert!(stdout.contains("products PASS"));

    let z4 = write(&dir, "Z4");
    let (code, stdout, _) = unifrac(&["check", &z4, "--suite", "transport"]);
    assert_eq!((code, stdout.as_str()), (0, "addition PASS pairs 64\n"));

    let bad = write(&dir, "CH3-BAD23");
    let (code, stdout, _) = unifrac(&["check", &bad, "--suite", "axioms"]);
    assert_eq!((code, stdout.as_str()), (1, "axioms FAIL\naxioms failed (2 of 3)\n"));
}

#[test]
fn error_statuses() {
    let dir = tempfile::tempdir().unwrap();
    let ch3 = write(&dir, "CH3");
    let (code, _, err) = unifrac(&["equal", &ch3, "--left", "i_1,nope,i_2", "--right", "i_1,m_1_2,i_2"]);
    assert_eq!(code, 1);
    assert!(err.contains("nope"));

    let (code, _, err) = unifrac(&["equal", &ch3, "--left", "i_0,m_0_2,i_2", "--right", "i_1,m_1_2,i_2"]);
    assert_eq!(code, 1);
    assert!(err.contains("not parallel"));

    let (code, _, err) = unifrac(&["localise", &write(&dir, "PAR-F"), "-o", "/dev/null"]);
    assert_eq!(code, 1);
    assert!(err.contains("uni-fractionable"), "{err}");

    let broken = dir.path().join("broken");
    fs::write(&broken, "{\n  \"name\": \"x\",\n  \"objects\": [1]\n}\n").unwrap();
    let (code, _, err) = unifrac(&["validate", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");

    let (code, _, err) = unifrac(&["instance", "NOPE", "-o", "/dev/null"]);
    assert_eq!(code, 1);
    assert!(err.contains("NOPE"));

    assert_eq!(unifrac(&["frobnicate"]).0, 2);
    assert_eq!(unifrac(&["equal", &ch3, "--left", "i_0,i_0,i_0"]).0, 2);
    assert_eq!(unifrac(&["compose", &ch3, "--left", "a", "--right", "b", "--mode", "loose"]).0, 2);
    assert_eq!(unifrac(&["--help"]).0, 0);
}

#[test]
fn shipped_files_are_current() {
    for name in NAMED {
        let path = shipped().join(format!("{}.json", name.to_lowercase()));
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text, write_instance(&make_named(name).unwrap()), "{}", path.display());
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_unifrac");
    let idem = shipped().join("idem.json");
    let status = Command::new(bin).arg("axioms").arg(&idem).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    let status = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin).arg("validate").arg(shipped().join("dia.json")).output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
