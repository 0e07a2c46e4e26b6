use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lilyk(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lilyk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bikernel_round_trips_through_solve() {
    let bk = lilyk(&["bikernel", "--problem", "rcdom", "--k", "4", "grid(4,3)"], None);
    assert!(bk.status.success());
    assert!(String::from_utf8_lossy(&bk.stderr).contains("kernel_n="));
    let solved = lilyk(&["solve", "-"], Some(&stdout(&bk)));
    assert!(solved.status.success());
    let out = stdout(&solved);
    assert!(out.contains("optimum=4"), "{out}");
    assert!(out.contains("accepted=true"), "{out}");
}

#[test]
fn verify_commands_agree() {
    for args in [
        &["verify", "pipeline", "--problem", "total", "grid(3,3)"][..],
        &["verify", "projkernel", "--r", "2", "--x", "0,5,10", "grid(4,4)"],
        &["verify", "multikernel", "--lambda", "1", "--mu", "1", "grid(3,3)"],
    ] {
        let o = lilyk(args, None);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        lilyk(&["solve", "--problem", "rcdom", "/no/such/file"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lilyk(&["solve", "-"], Some("not a graph\n")).status.code(), Some(2));
    let guarded = lilyk(&["--size-guard", "4", "solve", "--problem", "rcdom", "grid(3,3)"], None);
    assert_eq!(guarded.status.code(), Some(3));
}

#[test]
fn gen_is_seeded() {
    let a = lilyk(&["--seed", "7", "gen", "random_degenerate(20,2)"], None);
    let b = lilyk(&["--seed", "7", "gen", "random_degenerate(20,2)"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
