use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldbach"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn decompose_session_report() {
    let out = ok(&["decompose", "--poly", "x*y+x+y+1", "--vars", "x,y", "--field", "QQ", "--mode", "pyramid"]);
    assert!(out.contains("{x*y^4, x*y^2, x^2*y, x}"), "{out}");
    assert!(out.contains("{x*y^4 + x*y + 1, x*y^2 + x + 1, x^2*y + y + 1, x + 1}"));
    assert!(out.contains("sum of 8 absolutely irreducible summands"));
}

#[test]
fn json_round_trip_through_certify() {
    let doc = ok(&["decompose", "--poly", "x^3*z + 2*y - 5", "--json", "--mode", "shortcut"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_goldbach"))
        .args(["certify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok"));

    // a tampered document fails with exit 1
    let tampered = doc.replacen("- 5", "- 6", 1);
    assert_ne!(tampered, doc);
    let path = std::env::temp_dir().join(format!("goldbach-tampered-{}.json", std::process::id()));
    std::fs::write(&path, tampered).unwrap();
    let o = run(&["certify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn oracle_sum_finds_nothing_over_f2() {
    assert_eq!(ok(&["oracle", "sum", "--target", "x^2+x", "--field", "F2", "--k", "2", "--deg", "2"]).trim(), "None");
    let out = ok(&["oracle", "sum", "--target", "x^2+x", "--field", "F3", "--k", "2", "--deg", "2"]);
    assert!(out.starts_with('{'), "{out}");
}

#[test]
fn localize_approx_value() {
    assert_eq!(ok(&["localize", "approx", "--gens", "2", "--interval", "3", "7/2"]).trim(), "27/8");
}

#[test]
fn series_reaches_tolerance() {
    let out = ok(&["localize", "series", "--x", "2/3", "--q", "5", "--tol", "1e-6"]);
    let rem = out.lines().last().unwrap();
    assert!(rem.starts_with("remainder "), "{out}");
}

#[test]
fn polytope_commands() {
    assert!(ok(&["polytope", "segment", "--a", "0,0", "--b", "3,5"]).starts_with("indecomposable"));
    assert!(ok(&["polytope", "segment", "--a", "0,0", "--b", "2,4"]).starts_with("decomposable"));
    assert!(ok(&["polytope", "pyramid", "--base", "1,0,0;0,1,0", "--apex", "0,0,1"]).starts_with("indecomposable"));
    assert!(ok(&["polytope", "summands", "--points", "0,0;2,0;0,2"]).starts_with("decomposable"));
    assert!(ok(&["polytope", "summands", "--points", "0,0;1,0;0,1"]).starts_with("indecomposable"));
    let hull = ok(&["polytope", "hull", "--points", "0,0;2,0;1,1;0,2;2,2"]);
    assert_eq!(hull.lines().count(), 4, "{hull}");
}

#[test]
fn forcing_and_identity() {
    let out = ok(&["forcing", "normal-form", "--poly", "x3", "--vars", "x1,x2,x3", "--coeffs", "1,1,1", "--pivot", "3"]);
    assert_eq!(out.trim(), "-x1 - x2");
    ok(&["forcing", "decompose", "--poly", "x1*x2+x3", "--coeffs", "1,2,3", "--constant", "-1"]);
    let o = run(&["forcing", "decompose", "--poly", "x*y", "--coeffs", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(ok(&["oracle", "identity", "--p", "3", "--i", "2"]).trim(), "true");
}

#[test]
fn exit_codes() {
    // malformed input: 2, with the expected grammar on stderr
    let o = run(&["decompose", "--poly", "x*+y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected:"));
    assert_eq!(run(&["decompose", "--poly", "x", "--field", "F4"]).status.code(), Some(2));
    assert_eq!(run(&["polytope", "segment", "--a", "0,x", "--b", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["localize", "approx", "--gens", "2", "--interval", "a", "1"]).status.code(), Some(2));
    // well-formed but unsupported: 1
    assert_eq!(run(&["decompose", "--poly", "x+1"]).status.code(), Some(1));
    assert_eq!(run(&["localize", "approx", "--gens", "2", "--interval", "2", "1"]).status.code(), Some(1));
}

#[test]
fn random_check_is_clean() {
    let out = ok(&["check", "--seed", "7", "--count", "15", "--field", "F5"]);
    assert!(out.contains("0 failures"), "{out}");
}
