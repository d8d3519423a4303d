use std::io::Cursor;

use qcone_cli::main_with;
use serde_json::Value as Json;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with(
        std::iter::once("qcone").chain(args.iter().copied()),
        &mut input,
        &mut out,
        &mut err,
    );
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_stdin(args, "")
}

fn json(args: &[&str]) -> (i32, Json) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = run(&full);
    (
        r.code,
        serde_json::from_str(r.stdout.trim()).unwrap_or_else(|e| panic!("{e}: {}", r.stdout)),
    )
}

#[test]
fn normal_forms() {
    let r = run(&["nf", "zs^2*z"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "q^2*z*zs^2 + g*(1+q)*zs");
    assert_eq!(run(&["nf", "d(b)", "--N", "2"]).stdout.trim(), "(1+q)*z*dz");
    assert_eq!(
        run(&["nf", "a*b", "--N", "2"]).stdout.trim(),
        "q^2*b*a + g*(1+q)*b"
    );
    assert_eq!(
        run(&["nf", "dz^dzs + dzs^dz"]).stdout.trim(),
        "(1-q)*dz^dzs"
    );
}

#[test]
fn check_exit_codes() {
    let pass = run(&["check", "a*b", "q^2*b*a + g*(1+q)*b", "--N", "2"]);
    assert_eq!(pass.code, 0, "{}", pass.stdout);
    assert!(pass.stdout.starts_with("PASS"));
    let fail = run(&["check", "a*b", "q^3*b*a", "--N", "2"]);
    assert_eq!(fail.code, 1);
    assert!(fail.stdout.starts_with("FAIL"));
    assert_eq!(run(&["check", "a*b"]).code, 2);
}

#[test]
fn mutated_coefficients_fail() {
    let rhs = "q^2*b*a + g*(1+q)*b";
    for mutant in [
        "q^3*b*a + g*(1+q)*b",
        "q^2*b*a + g*(1+q^2)*b",
        "q^2*b*a + 2*g*(1+q)*b",
        "q^2*b*a + g*b",
        "q^2*a*b + g*(1+q)*b",
    ] {
        assert_ne!(mutant, rhs);
        assert_eq!(
            run(&["check", "a*b", mutant, "--N", "2"]).code,
            1,
            "{mutant}"
        );
    }
    assert_eq!(run(&["check", "zs*z", "q*z*zs + 2*g"]).code, 1);
    assert_eq!(run(&["check", "d(z*zs)", "dz*zs + z*dzs"]).code, 0);
    assert_eq!(run(&["check", "d(z*zs)", "dz*zs + q*z*dzs"]).code, 1);
}

#[test]
fn parse_errors_report_offsets() {
    let r = run(&["nf", "("]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("offset 0"), "{}", r.stderr);
    let r = run(&["nf", "z*(a + b"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("offset 2"), "{}", r.stderr);
    let (code, v) = json(&["nf", "z + foo"]);
    assert_eq!(code, 2);
    assert_eq!(v["schema"], 1);
    assert!(v["error"].as_str().unwrap().contains("foo"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["nf", "b"]).code, 2);
    assert_eq!(run(&["relations", "--N", "1"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["witness"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn json_reports_carry_schema() {
    let cases: &[&[&str]] = &[
        &["nf", "zs*z"],
        &["check", "zs*z", "q*z*zs + g"],
        &["degree", "z^2*zs", "--N", "3"],
        &["relations", "--N", "3"],
        &["witness", "--N", "3"],
        &["idempotent", "--N", "2"],
        &["gwa", "--N", "3"],
        &["roots", "--N", "3"],
        &["eq5", "--N", "3"],
        &["bezout", "--n", "3"],
        &["omega0", "--N", "2"],
        &["complex", "--N", "2"],
        &["volume", "--N", "2"],
        &["fock-check", "zs*z", "q*z*zs + g"],
    ];
    for args in cases {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["schema"], 1, "{args:?}");
        assert_eq!(v["pass"], true, "{args:?}");
        assert_eq!(v["command"], args[0], "{args:?}");
        if let Some(checks) = v.get("checks") {
            for c in checks.as_array().unwrap() {
                for key in ["check", "N", "lhs", "rhs", "pass"] {
                    assert!(c.get(key).is_some(), "{args:?}: {c} lacks {key}");
                }
            }
        }
    }
}

#[test]
fn bezout_cofactors() {
    let (code, v) = json(&["bezout", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["f"], "-q^2/(1-q^2)");
    assert_eq!(v["g"], "1/(1-q^2)");
}

#[test]
fn degree_and_grading() {
    assert_eq!(run(&["degree", "z^2*zs", "--N", "3"]).stdout.trim(), "1");
    assert_eq!(run(&["degree", "b*a", "--N", "3"]).stdout.trim(), "0");
    let r = run(&["degree", "z + zs", "--N", "3"]);
    assert_eq!((r.code, r.stdout.trim()), (1, "inhomogeneous"));
}

#[test]
fn fock_check_numerics() {
    let (code, v) = json(&[
        "fock-check",
        "a*b",
        "q^2*b*a + g*(1+q)*b",
        "--N",
        "2",
        "--q",
        "3/4",
        "--gamma",
        "1/4",
    ]);
    assert_eq!(code, 0, "{v}");
    assert!(v["max_deviation"].as_f64().unwrap() <= 1e-10);
    let (code, v) = json(&["fock-check", "zs*z", "z*zs + g"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    assert_eq!(run(&["fock-check", "dz", "0"]).code, 2);
}

#[test]
fn stdin_dash() {
    let r = run_with_stdin(&["nf", "-"], "zs*z\n");
    assert_eq!((r.code, r.stdout.trim()), (0, "q*z*zs + g"));
    let r = run_with_stdin(&["check", "-", "q*z*zs + g"], "zs*z\n");
    assert_eq!(r.code, 0);
}

#[test]
fn verify_all_passes() {
    let r = run(&["verify-all", "--max-n", "3"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(!r.stdout.contains("FAIL"));
    let (code, v) = json(&["verify-all", "--max-n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], v["total"]);
}

fn shell_words(line: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    for ch in line.chars() {
        match ch {
            '"' => quoted = !quoted,
            ' ' if !quoted => {
                if !current.is_empty() {
                    words.push(std::mem::take(&mut current));
                }
            }
            _ => current.push(ch),
        }
    }
    if !current.is_empty() {
        words.push(current);
    }
    words
}

#[test]
fn book_transcripts_match() {
    let chapter = include_str!("../../../book/src/cli.md");
    let mut lines = chapter.lines().peekable();
    let mut seen = 0;
    while let Some(line) = lines.next() {
        let Some(command) = line.strip_prefix("$ qcone ") else {
            continue;
        };
        let mut expected = Vec::new();
        while let Some(next) = lines.peek() {
            if next.is_empty() || next.starts_with("```") {
                break;
            }
            expected.push(lines.next().unwrap());
        }
        let words = shell_words(command);
        let r = run(&words.iter().map(String::as_str).collect::<Vec<_>>());
        let actual = format!("{}{}", r.stdout, r.stderr);
        assert_eq!(actual.trim_end(), expected.join("\n"), "$ qcone {command}");
        seen += 1;
    }
    assert!(seen >= 6);
}
