use std::io::Write;
use std::process::{Command, Output};

fn grilab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grilab"))
        .args(args)
        .env_remove("GRILAB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_theorem_passes_with_summary_line() {
    let o = grilab(&["verify", "theorem", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(
        out.lines()
            .last()
            .unwrap()
            .starts_with("result=pass checks=6 failures=0 seed=42"),
        "{out}"
    );
    assert!(out
        .lines()
        .any(|l| l.starts_with("check=theorem.direct_pair status=pass")));
}

#[test]
fn eval_binds_constants() {
    let o = grilab(&[
        "eval",
        "--expr",
        "a*x*a^-1*x^-1",
        "--let",
        "a=(0,1,0,0)",
        "--let",
        "x=(0,0,1,0)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value=(-1,0,0,0)"), "{}", stdout(&o));
    let o = grilab(&[
        "eval", "--ring", "rational", "--expr", "(x-x)^-1", "--let", "x=3",
    ]);
    assert!(
        stdout(&o).contains("check=eval status=skip"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn fuzz_reports_per_line_and_exit_codes() {
    let mut f = tempfile();
    writeln!(f.1, "# identities\nx*y - y*x\n(x*y*x^-1*y^-1)*(y*x) - x*y").unwrap();
    let o = grilab(&["fuzz", "--file", &f.0, "--trials", "20"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(out.contains("check=fuzz.line2 status=fail"), "{out}");
    assert!(out.contains("check=fuzz.line3 status=pass"), "{out}");
    let o = grilab(&[
        "fuzz", "--file", &f.0, "--trials", "20", "--ring", "rational",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    writeln!(f.1, "x*(y").unwrap();
    let o = grilab(&["fuzz", "--file", &f.0]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn bad_configuration_exits_2() {
    assert_eq!(
        grilab(&["verify", "lemma11", "--prec", "4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        grilab(&["verify", "lemma21", "--algebra", "0,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(grilab(&["verify", "nope"]).status.code(), Some(2));
}

fn tempfile() -> (String, std::fs::File) {
    let path = std::env::temp_dir().join(format!("grilab-cli-{}.txt", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path.to_string_lossy().into_owned(), file)
}
