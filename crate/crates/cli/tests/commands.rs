//! End-to-end runs of the `qcalc` binary.

use std::process::{Command, Output};

fn qcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalc"))
        .args(args)
        .env_remove("QCALC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn json_line(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).lines().next().unwrap()).unwrap()
}

#[test]
fn normalizes_the_defining_relation() {
    let o = qcalc(&["normalize", "--generic", "D*theta \u{2212} q*theta*D"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1");
}

#[test]
fn brackets() {
    let o = qcalc(&["normalize", "[D, be(theta,2)]"]);
    assert_eq!(stdout(&o), "theta");
    let o = qcalc(&["bracket", "D", "be(theta, 3)"]);
    assert_eq!(stdout(&o), "(1 / (q + 1))*theta^2");
    let o = qcalc(&["bracket", "-n", "5", "D", "z"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("*theta^4"));
}

#[test]
fn syntax_errors_exit_two() {
    let o = qcalc(&["--json", "normalize", "qnum(3"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json_line(&o);
    assert_eq!(v["error"], "syntax");
    assert_eq!(v["offset"], 6);
    assert_eq!(v["column"], 7);
    assert_eq!(v["expected"][0], "`)`");
    let o = qcalc(&["normalize", "z"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(qcalc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn limits() {
    let o = qcalc(&["limit", "-n", "3", "qfact(6)/(qfact(3)^2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2, cancelled_order = 2");
    let v = json_line(&qcalc(&["--json", "limit", "-n", "5", "qnum(10)/qnum(5)"]));
    assert_eq!(v["value"], "2");
    assert_eq!(v["cancelled_order"], 1);
}

#[test]
fn poles_are_structured() {
    let o = qcalc(&["--json", "limit", "-n", "3", "1/qnum(3)"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_line(&o);
    assert_eq!(v["error"], "pole_at_root");
    assert_eq!(v["n"], 3);
}

#[test]
fn root_of_unity_normal_forms() {
    assert_eq!(stdout(&qcalc(&["normalize", "-n", "3", "D^3"])), "dz");
    assert_eq!(
        stdout(&qcalc(&["normalize", "-n", "3", "be(theta, 3)"])),
        "z"
    );
    assert_eq!(stdout(&qcalc(&["normalize", "-n", "5", "D^5 - dz"])), "0");
}

#[test]
fn representation_matrices() {
    let v = json_line(&qcalc(&["rep", "-n", "3", "--op", "a", "--numeric"]));
    assert_eq!(v["n"], 3);
    let rows = v["entries"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 3));
    assert!((rows[0][1][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let v = json_line(&qcalc(&["rep", "--op", "theta", "--cutoff", "3"]));
    assert_eq!(v["entries"][2][1], "q + 1");
    assert_eq!(
        qcalc(&["rep", "--op", "a", "--numeric"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcalc(&["rep", "-n", "3", "--op", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_suites() {
    let o = qcalc(&["verify", "--suite", "eq15", "--rmax", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
    let o = qcalc(&["--json", "verify", "--suite", "fsusy"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert!(lines.iter().all(|l| l["pass"] == true));
    for suite in ["lemmas", "defcr"] {
        assert_eq!(
            qcalc(&["verify", "--suite", suite]).status.code(),
            Some(0),
            "{suite}"
        );
    }
    assert_eq!(qcalc(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let run = || {
        let o = qcalc(&["--json", "verify", "--suite", "confluence"]);
        let v = json_line(&o);
        (v["pass"].clone(), v["detail"].clone())
    };
    assert_eq!(run(), run());
}
