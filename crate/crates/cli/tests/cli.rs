use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ideal24")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_preset_passes() {
    let o = run(&["verify", "preset:G"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("G: PASS"), "{}", stdout(&o));
}

#[test]
fn verify_file_json() {
    let o = run(&["verify", &data("g.con"), "--json", "--double-cover"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("\"volume_multiple\": 1") && out.contains("\"cusps\": 2"), "{out}");
    assert!(out.contains("\"double_cover\""), "{out}");
}

#[test]
fn structural_failure_exits_1() {
    let o = run(&["verify", &data("mirrored.con"), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"status\": \"FAIL\""));
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["verify", &data("bad_map.con")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 33"));
    assert_eq!(run(&["verify", "preset:nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", &data("missing.con")]).status.code(), Some(2));
    assert_eq!(run(&["census", &data("bad.scheme")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["census", &data("one_copy.scheme"), "--cap", "x"]).status.code(), Some(2));
}

#[test]
fn census_finds_g() {
    let o = run(&["census", &data("one_copy.scheme"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\"cusp_types\": [\"B4\",\"B4\"]"), "{out}");
    let capped = run(&["census", &data("one_copy.scheme"), "--cap", "1"]);
    assert!(stdout(&capped).starts_with("1 assignments (capped)"), "{}", stdout(&capped));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}
