use std::io::{Cursor, Write};
use std::process::{Command, Stdio};

use euler_cli::{run, Output};
use euler_core::{parse_element, parse_tensor, CyclotomicField};
use serde_json::Value;

fn euler(args: &[&str]) -> Output {
    euler_stdin(args, "")
}

fn euler_stdin(args: &[&str], input: &str) -> Output {
    let argv = std::iter::once("euler").chain(args.iter().copied());
    run(argv, &mut Cursor::new(input.as_bytes()))
}

fn json(out: &Output) -> Value {
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(out.stdout.trim()).expect("valid json")
}

#[test]
fn worked_product_text() {
    let out = euler(&["mul", "--r", "3", "z[1,1]", "z[1,2] z[2,1]"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "z[1,2] z[3,2] + z[2,0] z[2,1] + z[1,1] z[1,2] z[2,1] + z[1,2] z[1,1] z[2,1] + z[1,2] z[2,1] z[1,1]\n"
    );
}

#[test]
fn harmonic_number() {
    let out = euler(&["eval", "--r", "1", "--kind", "A", "--n", "3", "z[1,0]"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().next(), Some("11/6"));
    assert!(out.stdout.contains("1.833333333333"), "{}", out.stdout);
}

#[test]
fn json_results_reparse() {
    for (cmd, args) in [
        ("mul", vec!["z[1,1]", "z[1,2] z[2,1]"]),
        ("antipode", vec!["z[1,1] z[2,0] - 1/2 z[1,2]"]),
        ("overline", vec!["z[1,1] z[2,0] z[1,2]"]),
        ("reverse", vec!["3 + z[1,1] z[2,0]"]),
    ] {
        let mut argv = vec![cmd, "--r", "3", "--format", "json"];
        argv.extend(args);
        let doc = json(&euler(&argv));
        assert_eq!(doc["command"], cmd);
        assert_eq!(doc["r"], 3);
        assert!(doc["result"]["approx"].is_null());
        let exact = doc["result"]["exact"].as_str().unwrap();
        let parsed = parse_element(exact, 3).unwrap();
        assert_eq!(parsed.to_string(), exact);
    }
    let doc = json(&euler(&["coproduct", "--r", "2", "--format", "json", "z[1,1] z[2,0]"]));
    let exact = doc["result"]["exact"].as_str().unwrap();
    assert_eq!(parse_tensor(exact, 2).unwrap().to_string(), exact);
}

#[test]
fn eval_json_and_csv() {
    let doc = json(&euler(&["eval", "--r", "3", "--kind", "S", "--n", "4", "--format", "json", "z[1,1] z[1,2]"]));
    let result = &doc["result"];
    assert_eq!(result["n"], 4);
    assert_eq!(result["kind"], "S");
    let field = CyclotomicField::new(3).unwrap();
    field.parse(result["exact"].as_str().unwrap()).unwrap();
    assert!(result["approx"]["re"].is_string());

    let out = euler(&["eval", "--r", "2", "--n", "0..3", "--format", "csv", "z[1,1]"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "word,n,kind,exact,re,im");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("\"z[1,1]\",1,A,-1,"), "{}", lines[2]);

    let out = euler(&["eval", "--r", "2", "--n", "2..4", "z[1,1]"]);
    assert_eq!(out.stdout.lines().count(), 3);
}

#[test]
fn digits_control_precision() {
    let out = euler(&["eval", "--r", "3", "--n", "1", "--digits", "30", "z[1,1]"]);
    // A_{z[1,1]}(1) = ε, imaginary part √3/2
    assert!(out.stdout.contains("0.866025403784438646763723170753"), "{}", out.stdout);
}

#[test]
fn stdin_supplies_expressions() {
    let out = euler_stdin(&["mul", "--r", "1", "--stdin"], "z[1,0]\n\nz[1,0]\n");
    assert_eq!(out.stdout, "z[2,0] + 2 z[1,0] z[1,0]\n");
    let out = euler_stdin(&["mul", "--r", "1", "--stdin", "z[1,0]"], "z[2,0]\n");
    assert_eq!(out.code, 0);
    let out = euler_stdin(&["antipode", "--r", "1", "--stdin"], "");
    assert_eq!(out.code, 2);
}

#[test]
fn lyndon_listing() {
    let out = euler(&["lyndon", "--r", "1", "--degree", "2"]);
    assert_eq!(out.stdout, "count: 1\nformula: 1\nz[2,0]\n");
    let doc = json(&euler(&["lyndon", "--r", "2", "--degree", "2", "--format", "json"]));
    assert_eq!(doc["result"]["count"], 3);
    assert_eq!(doc["result"]["words"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["mul", "--r", "1", "z[1,0]"],
        &["mul", "--r", "1", "--nope", "z[1,0]", "z[1,0]"],
        &["mul", "--r", "0", "z[1,0]", "z[1,0]"],
        &["antipode", "--r", "2", "z[1,2]"],
        &["antipode", "--r", "2", "z[1,0] +"],
        &["eval", "--r", "2", "--n", "5..2", "z[1,0]"],
        &["eval", "--r", "2", "--kind", "Q", "--n", "2", "z[1,0]"],
        &["reverse", "--r", "2", "--format", "csv", "z[1,0]"],
        &["verify", "--r", "2", "--suite", "everything"],
    ];
    for args in cases {
        let out = euler(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty());
    }
    let out = euler(&["antipode", "--r", "3", "z[2,5]"]);
    assert!(out.stderr.contains("z[2,5]"), "{}", out.stderr);
    let out = euler(&["antipode", "--r", "3", "z[1,0"]);
    assert!(out.stderr.contains("byte 5"), "{}", out.stderr);
}

#[test]
fn help_exits_0() {
    let out = euler(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("verify"));
}

#[test]
fn verify_report_shape() {
    let args = ["verify", "--r", "1", "--suite", "hopf", "--max-degree", "4", "--max-length", "3", "--seed", "3"];
    let out = euler(&args);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("verify r=1 seed=3 max-degree=4 max-length=3 max-n=8\nhopf"));
    assert!(out.stdout.ends_with("PASS\n"));
    assert!(out.stderr.contains("cases in"));

    let mut jargs = args.to_vec();
    jargs.extend(["--format", "json"]);
    let doc = json(&euler(&jargs));
    assert_eq!(doc["result"]["passed"], true);
    assert_eq!(doc["result"]["suites"][0]["suite"], "hopf");
}

fn binary(args: &[&str], env_r: Option<&str>, input: &str) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_euler"));
    cmd.args(args).env_remove("EULER_DEFAULT_R");
    if let Some(r) = env_r {
        cmd.env("EULER_DEFAULT_R", r);
    }
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn binary_reads_default_r_only_when_flag_absent() {
    let out = binary(&["mul", "z[1,0]", "z[1,0]"], None, "");
    assert_eq!(out.status.code(), Some(2));
    let out = binary(&["mul", "z[1,0]", "z[1,0]"], Some("1"), "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "z[2,0] + 2 z[1,0] z[1,0]\n");
    // an explicit --r wins: z[1,1] is valid only for r = 2
    let out = binary(&["antipode", "--r", "2", "z[1,1]"], Some("1"), "");
    assert_eq!(out.status.code(), Some(0));
    let out = binary(&["antipode", "--stdin"], Some("2"), "z[1,1] z[2,0]\n");
    assert_eq!(String::from_utf8_lossy(&out.stdout), "z[3,1] + z[2,0] z[1,1]\n");
}
