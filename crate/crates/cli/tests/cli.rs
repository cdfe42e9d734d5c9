use std::process::{Command, Output};

use serde_json::Value;

fn rbn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbn"))
        .args(args)
        .env_remove("RBN_ORACLE_PRIME")
        .output()
        .expect("run rbn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn cohom_on_f2() {
    let o = rbn(&["cohom", "--surface", "F2", "--divisor", "2E+F"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "h0=2 h1=2 h2=0");
    let o = rbn(&["cohom", "--surface", "F2", "--divisor", "2E+F", "--json"]);
    let v = json(&o);
    assert_eq!(
        (v["h0"].clone(), v["h1"].clone(), v["h2"].clone()),
        (2.into(), 2.into(), 0.into())
    );
}

#[test]
fn cohom_partial_answer_exits_one() {
    // the anticanonical class of Bl_9 is beyond the vanishing rules
    let o = rbn(&[
        "cohom",
        "--surface",
        "blp2:k=9",
        "--divisor",
        "3L-E1-E2-E3-E4-E5-E6-E7-E8-E9",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "h0=? h1=? h2=0");
    let o = rbn(&["cohom", "--surface", "blp2:k=2", "--divisor", "-3L"]);
    assert_eq!(stdout(&o).trim(), "h0=0 h1=0 h2=1");
}

#[test]
fn wbn_verdicts_and_exit_codes() {
    let o = rbn(&["wbn", "--surface", "dp7", "--character", "r=3;c1=2L;ch2=-6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "holds");
    assert_eq!(v["witness"]["modifications"], 5);

    let o = rbn(&["wbn", "--surface", "F1", "--character", "r=2;c1=2E-F;chi=0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "fails");
    assert_eq!(v["obstruction"]["h0_lower_bound"], 1);

    let o = rbn(&["wbn", "--surface", "dp6", "--character", "r=2;c1=E1;chi=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "unknown");

    let o = rbn(&["wbn", "--surface", "F1", "--character", "r=2;c1=2E-F;chi=1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn goodsum_and_check() {
    let o = rbn(&["goodsum", "--surface", "dp7", "--rank", "3", "--c1", "2L"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["N"], "3L-E1-E2");
    assert_eq!(v["summands"].as_array().unwrap().len(), 3);

    let o = rbn(&["goodsum", "--surface", "dp7", "--check", "L-E1,L-E2,E1+E2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["good"], true);
    let o = rbn(&["goodsum", "--surface", "dp7", "--check", "2L,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_collinear_line() {
    let args = [
        "oracle",
        "h0",
        "--surface",
        "blp2:k=4:collinear=1,2,3,4",
        "--divisor",
        "L-E1-E2-E3-E4",
        "--seed",
        "7",
        "--trials",
        "3",
    ];
    let o = rbn(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let again = rbn(&args);
    assert_eq!(o.stdout, again.stdout);

    let o = Command::new(env!("CARGO_BIN_EXE_rbn"))
        .args(args)
        .env("RBN_ORACLE_PRIME", "12")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resolve_json_shape() {
    let o = rbn(&[
        "resolve",
        "--surface",
        "blp2:k=2",
        "--character",
        "r=2;c1=2L-E1-E2;chi=0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["left"]["-2L"], 2);
    assert_eq!(v["right"]["-L"], 2);
    assert_eq!(v["cokernel"]["chi"], 0);
    let solved = rbn(&[
        "resolve",
        "--surface",
        "blp2:k=2",
        "--character",
        "r=2;c1=2L-E1-E2;chi=0",
        "--solve",
    ]);
    assert_eq!(json(&solved)["left"], v["left"]);
    assert_eq!(json(&solved)["right"], v["right"]);
}

#[test]
fn curves_on_dp4() {
    let o = rbn(&["curves", "--surface", "dp4"]);
    assert_eq!(stdout(&o).lines().count(), 16);
}

#[test]
fn parse_errors_name_the_grammar() {
    let o = rbn(&["cohom", "--surface", "F2", "--divisor", "2X"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("basis symbol"));
    let o = rbn(&["chi", "--surface", "F2", "--character", "r=2;c1=E"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("chi=<int>"));
    let o = rbn(&["chi", "--surface", "G3", "--divisor", "E"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_is_csv() {
    let o = rbn(&[
        "wbn",
        "--surface",
        "F0",
        "--sweep",
        "--ranks",
        "2,3",
        "--bound",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("surface,r,c1,chi,status"));
    assert_eq!(lines.count(), 18);
}

#[test]
fn text_and_json_agree() {
    let args = ["wbn", "--surface", "F1", "--character", "r=2;c1=2E-F;chi=0"];
    let j = json(&rbn(&args));
    let mut t = args.to_vec();
    t.push("--text");
    let text = stdout(&rbn(&t));
    assert!(text.contains(&format!("status: {}", j["status"].as_str().unwrap())));
    assert!(text.contains(&format!("h0 >= {}", j["obstruction"]["h0_lower_bound"])));
}
