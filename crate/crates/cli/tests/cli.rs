use std::io::Write;
use std::process::{Command, Output, Stdio};

fn weiljet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weiljet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn simple_dimension_from_one_quoted_argument() {
    let o = weiljet(&["dim", "simple", "d + d^2", "in", "D_n(3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dim_3(d + d^2) = 3\n");
}

#[test]
fn form_dimension() {
    let o = weiljet(&["dim", "forms", "--p", "2", "--q", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
}

#[test]
fn quasicolim_check_passes() {
    let o = weiljet(&["check", "quasicolim", "--name", "lemma_diff", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).ends_with("quasicolim: 4 passed, 0 failed, 0 skipped\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn seeded_affine_check_is_deterministic() {
    let args = [
        "check", "affine", "--p", "1", "--q", "1", "--n", "2", "--seed", "7",
    ];
    let (a, b) = (weiljet(&args), weiljet(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn parse_errors_exit_two_with_a_caret() {
    let o = weiljet(&["eval", "d + + d", "in", "D"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("parse error at byte 9"), "{err}");
    assert!(err.contains("\n           ^\n"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(weiljet(&[]).status.code(), Some(2));
    assert_eq!(
        weiljet(&["--file", "/nonexistent/weiljet"]).status.code(),
        Some(2)
    );
}

#[test]
fn failed_checks_exit_one() {
    let o = weiljet(&["eval", "cube D_n(2) base [0] coeffs [[a]]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("\nerror: D_n(2) has 2 coefficient slots, 1 given"));
}

#[test]
fn commands_from_stdin_and_files() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_weiljet"))
        .arg("-")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"# degree and dimension\ndim space D(3; [1,2], [1,3])\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "D(3; [1,2], [1,3]): algebra dimension 5, degree 3, dimension 2\n"
    );

    let path = std::env::temp_dir().join(format!("weiljet-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "algebra D^2").unwrap();
    let o = weiljet(&["--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "W(D^2) = Q[d1, d2] / (d1^2, d2^2)\ndimension 4\nbasis 1, d1, d2, d1*d2\n"
    );
}
