use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_rkderive");

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        &["verify", "--name", "nope", "--order", "2"][..],
        &["conditions", "--stages", "0", "--order", "2"][..],
        &["reduce", "-"][..],
    ] {
        let out = run(args, "x +\n");
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn failed_verification_exits_with_one() {
    let out = run(&["verify", "--name", "rk4", "--order", "5"], "");
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["verify", "--name", "rk4", "--order", "4"], "");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["conditions", "--stages", "4", "--order", "4", "--format", "machine"];
    let first = stdout(&run(&args, ""));
    let second = stdout(&run(&args, ""));
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn family_document_feeds_verify() {
    let family = run(
        &["solve-family", "--scenario", "order3", "--c2", "1/2", "--c3", "1", "--format", "machine"],
        "",
    );
    assert!(family.status.success());
    let verified = run(&["verify", "--order", "3", "-"], &stdout(&family));
    assert!(verified.status.success(), "{}", stdout(&verified));
}

#[test]
fn excluded_locus_is_reported() {
    let out = run(&["solve-family", "--scenario", "order3", "--c2", "1/2", "--c3", "1/2"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("excluded locus"));
}

#[test]
fn embed_reproduces_second_weights() {
    let out = run(&["embed", "--name", "kutta38", "--r1", "1/6"], "");
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1/12 1/2 1/4   0 1/6"), "{text}");
    assert!(text.contains("order 3 satisfied"));
}
