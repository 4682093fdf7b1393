use std::process::{Command, Output};

fn abelkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn constant_prints_truncated_value() {
    let o = abelkit(&["constant", "--map", "A", "--x0", "1/2", "--digits", "30"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1.767993786136154050443634406781\n");
}

#[test]
fn constant_json() {
    let o = abelkit(&["constant", "--map", "J", "--x0", "1", "--digits", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "0.6401885142");
    assert_eq!(v["map"], "J");
    assert_eq!(v["digits"], 10);
}

#[test]
fn escaped_orbit_exits_one() {
    let o = abelkit(&["constant", "--map", "I", "--x0", "5/4", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("orbit escaped domain"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(abelkit(&["constant", "--x0", "1/2"]).status.code(), Some(2));
    assert_eq!(abelkit(&["constant", "--map", "A", "--map-expr", "x-x^2", "--x0", "1/2"]).status.code(), Some(2));
    assert_eq!(abelkit(&["constant", "--map", "NOPE", "--x0", "1/2"]).status.code(), Some(2));
    assert_eq!(abelkit(&["polys", "--map-expr", "x-(x^2"]).status.code(), Some(2));
    assert_eq!(abelkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn polys_match_table() {
    let o = abelkit(&["polys", "--map", "I", "--k", "7", "--format", "text"]);
    let out = stdout(&o);
    assert!(out.contains("P_2 = -3/2 - X + X^2\n"));
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn custom_map_expression() {
    let a = abelkit(&["polys", "--map-expr", "x - x^2", "--k", "5"]);
    let b = abelkit(&["polys", "--map", "A", "--k", "5"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn residual_is_zero() {
    let o = abelkit(&["residual", "--map", "B", "--k", "8"]);
    assert!(stdout(&o).ends_with("all zero: true\n"));
}

#[test]
fn recip_and_additive_series_agree() {
    let a = abelkit(&["recip", "--map", "B", "--k", "3"]);
    let b = abelkit(&["recip", "--ell", "1", "--sign", "+", "--k", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let c = abelkit(&["recip", "--ell", "2", "--sign", "+", "--k", "3"]);
    assert_eq!(stdout(&c), "n + C + (-1)/n + (-1/2 + C)/n^2 + (-5/6 + C - C^2)/n^3\n");
}

#[test]
fn orbit_and_sequences() {
    let o = abelkit(&["orbit", "--map", "I", "--x0", "1/2", "--n", "3"]);
    assert_eq!(stdout(&o), "1/2\n2/5\n10/31\n310/1171\n");
    let o = abelkit(&["sequences", "--family", "v", "--seed", "2,8", "--n", "4"]);
    assert_eq!(stdout(&o), "2\n8\n112\n19936\n");
    let o = abelkit(&["sequences", "--family", "t", "--seed", "3", "--n", "3"]);
    assert_eq!(stdout(&o), "3/1\n3/2\n9/7\n");
}

#[test]
fn patterns_and_reparam() {
    let o = abelkit(&["patterns", "--pair", "IJ", "--n", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap();
    let o = abelkit(&["reparam", "--direction", "J->I", "--x0", "1/2", "--n", "2"]);
    assert_eq!(stdout(&o), "1/3\n3/11\n33/145\n");
}

#[test]
fn verify_identity() {
    let o = abelkit(&["verify", "--identity", "AB", "--x", "2", "--digits", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["digits_agreed"].as_u64().unwrap() >= 17);
}

#[test]
fn grid_csv_for_oracle() {
    let o = abelkit(&["grid", "--map", "ORACLE", "--a", "1/2", "--b", "2", "--points", "4", "--digits", "10"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x,value,status,digits"));
    assert!(lines.next().unwrap().starts_with("0.5,2.0000000000,ok,"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn raw_inflection() {
    let o = abelkit(&["inflection", "--map", "I", "--a", "1/4", "--b", "1/2", "--raw", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.to_string().contains("0.322"));
}

#[test]
fn output_is_deterministic() {
    let args = ["constant-additive", "--ell", "2", "--sign", "-", "--x0", "2", "--digits", "15"];
    let a = abelkit(&args);
    assert_eq!(stdout(&a), "1.290937947423058\n");
    assert_eq!(a.stdout, abelkit(&args).stdout);
}

#[test]
fn quick_repro_passes() {
    let o = abelkit(&["repro", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
