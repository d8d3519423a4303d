//! Subcommands, their reports and exit codes.

use std::io::BufRead;

use clap::{Args, Parser, Subcommand};
use num::BigRational;
use qcone::cone::{
    beta0_closed_form, grading_witness, projector_idempotent, verify_cone_relations,
    verify_gwa_presentation, verify_simple_roots,
};
use qcone::conecalc::{
    bezout_cofactors, complex_structure_checks, omega0, omega0_witness, verify_eq5,
    volume_form_checks, x_poly, y_poly,
};
use qcone::fock::FockRep;
use qcone::report::{Check, RelationCheck};
use qcone::{DiscElement, UniPoly};
use serde::Serialize;
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::expr::{parse, Expr, ParseError};
use crate::numeric::{fock_compare, NumericError};
use crate::value::{eval, Context, EvalError, Value};

pub const SCHEMA: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qcone",
    version,
    about = "Exact computations on the quantum disc and quantum cones"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a single JSON object.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Print plain text (the default).
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Order {
    /// Cone order N ≥ 2.
    #[arg(long = "N", value_name = "N")]
    pub n: u32,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OptionalOrder {
    /// Cone order N ≥ 2; makes a, b, bs, x, w cone elements.
    #[arg(long = "N", value_name = "N")]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Nf {
        expr: String,
        #[command(flatten)]
        order: OptionalOrder,
    },
    /// Exact equality of two expressions.
    Check {
        lhs: String,
        rhs: String,
        #[command(flatten)]
        order: OptionalOrder,
    },
    /// Z_N-degree of a homogeneous element.
    Degree {
        expr: String,
        #[command(flatten)]
        order: Order,
    },
    /// Defining relations of the cone.
    Relations(Order),
    /// Strong grading witness X_i, Y_i with sum X_i Y_i = 1.
    Witness(Order),
    /// The idempotent e_ij = Y_i X_j.
    Idempotent(Order),
    /// Generalized Weyl presentation.
    Gwa(Order),
    /// Simple roots of the polynomials b bs and bs b in a.
    Roots(Order),
    /// The b* db and db b* identities.
    Eq5(Order),
    /// Bezout cofactors f, g with f X_n + g Y_n = 1.
    Bezout {
        #[arg(long = "n", value_name = "n")]
        n: u32,
    },
    /// omega0 as a combination of b* db and db b*.
    Omega0(Order),
    /// Complex structure checks.
    Complex(Order),
    /// Volume form checks.
    Volume(Order),
    /// Numerical check in the truncated Fock representation.
    FockCheck {
        lhs: String,
        rhs: String,
        #[command(flatten)]
        order: OptionalOrder,
        /// Deformation parameter, 0 < q < 1.
        #[arg(long, default_value = "1/2")]
        q: String,
        /// gamma > 0.
        #[arg(long, default_value = "1/2")]
        gamma: String,
        /// Truncation dimension.
        #[arg(long, default_value_t = 40)]
        dim: usize,
    },
    /// Every check for N = 2 ..= max-n and Bezout cofactors for n = 1 ..= max-n.
    VerifyAll {
        #[arg(long = "max-n", value_name = "N", default_value_t = 5)]
        max_n: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{input}: {source}")]
    Parse { input: String, source: ParseError },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Algebra(#[from] qcone::Error),
    #[error("{0}")]
    Usage(String),
}

/// A check record; `N` is absent for checks that do not involve a cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnessed_by: Option<String>,
    pub pass: bool,
}

impl From<Check> for CheckRecord {
    fn from(c: Check) -> Self {
        CheckRecord {
            check: c.check,
            n: Some(c.n),
            lhs: c.lhs,
            rhs: c.rhs,
            witnessed_by: c.witnessed_by,
            pass: c.pass,
        }
    }
}

impl CheckRecord {
    fn from_relation(n: u32, r: RelationCheck) -> Self {
        CheckRecord {
            check: r.relation,
            n: Some(n),
            lhs: r.lhs,
            rhs: r.rhs,
            witnessed_by: None,
            pass: r.pass,
        }
    }

    fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        let order = self.n.map(|n| format!("[N={n}] ")).unwrap_or_default();
        let mut s = format!("{tag}  {order}{}", self.check);
        if !self.pass {
            s.push_str(&format!(
                "\n      lhs: {}\n      rhs: {}",
                self.lhs, self.rhs
            ));
        }
        s
    }
}

/// A finished command: JSON payload, text rendering and verdict.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Json,
    pub text: String,
    pub pass: bool,
}

impl Report {
    fn new(command: &str, mut body: Json, text: String, pass: bool) -> Self {
        let mut json = json!({ "schema": SCHEMA, "command": command });
        if let (Json::Object(out), Json::Object(extra)) = (&mut json, body.take()) {
            out.extend(extra);
            out.insert("pass".into(), Json::Bool(pass));
        }
        Report { json, text, pass }
    }

    fn checks(command: &str, n: Option<u32>, checks: Vec<CheckRecord>, extra: Json) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        let text = checks
            .iter()
            .map(CheckRecord::line)
            .collect::<Vec<_>>()
            .join("\n");
        let mut body = json!({ "N": n, "checks": checks });
        if let (Json::Object(b), Json::Object(e)) = (&mut body, extra) {
            b.extend(e);
        }
        Report::new(command, body, text, pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// Source of expressions given as `-`.
pub struct Input<'a> {
    stdin: &'a mut dyn BufRead,
}

impl<'a> Input<'a> {
    pub fn new(stdin: &'a mut dyn BufRead) -> Self {
        Input { stdin }
    }

    fn resolve(&mut self, arg: &str) -> Result<String, CliError> {
        if arg != "-" {
            return Ok(arg.to_string());
        }
        let mut line = String::new();
        self.stdin
            .read_line(&mut line)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        let line = line.trim().to_string();
        if line.is_empty() {
            return Err(CliError::Usage("expected an expression on stdin".into()));
        }
        Ok(line)
    }

    fn expr(&mut self, arg: &str) -> Result<(String, Expr), CliError> {
        let src = self.resolve(arg)?;
        let e = parse(&src).map_err(|source| CliError::Parse {
            input: src.clone(),
            source,
        })?;
        Ok((src, e))
    }
}

fn check_order(n: Option<u32>) -> Result<(), CliError> {
    match n {
        Some(n) => qcone::check_order(n).map(|_| ()).map_err(CliError::from),
        None => Ok(()),
    }
}

fn rational(name: &str, s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| CliError::Usage(format!("--{name}: `{s}` is not a rational number")))
}

fn relation_report(command: &str, n: u32, checks: Vec<RelationCheck>) -> Report {
    Report::checks(
        command,
        Some(n),
        checks
            .into_iter()
            .map(|c| CheckRecord::from_relation(n, c))
            .collect(),
        json!({}),
    )
}

fn check_report(command: &str, n: u32, checks: Vec<Check>) -> Report {
    Report::checks(
        command,
        Some(n),
        checks.into_iter().map(CheckRecord::from).collect(),
        json!({}),
    )
}

fn witness_checks(
    n: u32,
) -> Result<(Vec<CheckRecord>, Option<qcone::cone::GradingWitness>), CliError> {
    match grading_witness(n) {
        Ok(w) => {
            let sum = Check::compare("sum X_i*Y_i = 1", n, &w.sum(), &DiscElement::one())
                .witnessed("grading witness");
            let beta = Check::compare(
                "beta_0 = g^(N-1)*prod_{l=1}^{N-1} [l]_q",
                n,
                &w.betas[0],
                &beta0_closed_form(n),
            );
            Ok((vec![sum.into(), beta.into()], Some(w)))
        }
        Err(qcone::Error::CheckFailed(msg)) => Ok((
            vec![CheckRecord {
                check: "sum X_i*Y_i = 1".into(),
                n: Some(n),
                lhs: msg,
                rhs: "1".into(),
                witnessed_by: None,
                pass: false,
            }],
            None,
        )),
        Err(e) => Err(e.into()),
    }
}

fn idempotent_check(n: u32) -> Result<(CheckRecord, qcone::cone::ConeMatrix), CliError> {
    let e = projector_idempotent(n)?;
    let e2 = e.multiply(&e)?;
    let render = |m: &qcone::cone::ConeMatrix| {
        let rows: Vec<String> = m
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    };
    let pass = e2 == e;
    let rec = CheckRecord {
        check: "e*e = e, e_ij = Y_i*X_j".into(),
        n: Some(n),
        lhs: render(&e2),
        rhs: render(&e),
        witnessed_by: None,
        pass,
    };
    Ok((rec, e))
}

fn bezout_record(n: u32) -> Result<(CheckRecord, qcone::conecalc::BezoutPair), CliError> {
    let p = bezout_cofactors(n)?;
    let rec = CheckRecord {
        check: format!("f*X_{n} + g*Y_{n} = 1"),
        n: None,
        lhs: p.combination().to_string(),
        rhs: UniPoly::one().to_string(),
        witnessed_by: Some(format!("f = {}, g = {}", p.f, p.g)),
        pass: p.combination() == UniPoly::one(),
    };
    Ok((rec, p))
}

fn omega0_record(n: u32) -> Result<(CheckRecord, qcone::conecalc::Omega0Witness), CliError> {
    let w = omega0_witness(n)?;
    let rec = CheckRecord::from(
        Check::compare(
            "c1*(bs*d(b)) + c2*(d(b)*bs) = omega0",
            n,
            &w.combination(),
            &omega0(),
        )
        .witnessed(format!("c1 = {}, c2 = {}", w.c1, w.c2)),
    );
    Ok((rec, w))
}

/// All checks for one order.
fn suite(n: u32) -> Result<Vec<CheckRecord>, CliError> {
    let mut out: Vec<CheckRecord> = verify_cone_relations(n)?
        .into_iter()
        .map(|c| CheckRecord::from_relation(n, c))
        .collect();
    out.extend(witness_checks(n)?.0);
    out.push(idempotent_check(n)?.0);
    out.extend(
        verify_gwa_presentation(n)?
            .into_iter()
            .map(|c| CheckRecord::from_relation(n, c)),
    );
    out.extend(verify_simple_roots(n)?.into_iter().map(CheckRecord::from));
    out.extend(verify_eq5(n)?.into_iter().map(CheckRecord::from));
    out.push(omega0_record(n)?.0);
    out.extend(
        complex_structure_checks(n)?
            .into_iter()
            .map(CheckRecord::from),
    );
    out.extend(volume_form_checks(n)?.into_iter().map(CheckRecord::from));
    Ok(out)
}

/// Run one command.
pub fn run_command(cmd: &Command, input: &mut Input<'_>) -> Result<Report, CliError> {
    Ok(match cmd {
        Command::Nf { expr, order } => {
            check_order(order.n)?;
            let (src, e) = input.expr(expr)?;
            let v = eval(&e, Context { n: order.n })?;
            let body =
                json!({ "N": order.n, "input": src, "kind": v.kind(), "result": v.to_string() });
            Report::new("nf", body, v.to_string(), true)
        }
        Command::Check { lhs, rhs, order } => {
            check_order(order.n)?;
            let (ls, le) = input.expr(lhs)?;
            let (rs, re) = input.expr(rhs)?;
            let ctx = Context { n: order.n };
            let (lv, rv) = (eval(&le, ctx)?, eval(&re, ctx)?);
            let rec = CheckRecord {
                check: format!("{ls} = {rs}"),
                n: order.n,
                lhs: lv.to_string(),
                rhs: rv.to_string(),
                witnessed_by: None,
                pass: lv.equals(&rv),
            };
            Report::checks("check", order.n, vec![rec], json!({}))
        }
        Command::Degree { expr, order } => {
            let n = qcone::check_order(order.n)?;
            let (src, e) = input.expr(expr)?;
            let v = eval(&e, Context { n: Some(n) })?;
            let degree = match &v {
                Value::Form(_) => {
                    return Err(CliError::Usage(
                        "degree expects a function, not a form".into(),
                    ))
                }
                other => other.components()[0].homogeneous_degree(n)?,
            };
            let text = match degree {
                Some(k) => format!("{k}"),
                None => "inhomogeneous".to_string(),
            };
            let body = json!({ "N": n, "input": src, "result": v.to_string(), "degree": degree });
            Report::new("degree", body, text, degree.is_some())
        }
        Command::Relations(o) => relation_report("relations", o.n, verify_cone_relations(o.n)?),
        Command::Witness(o) => {
            let (checks, w) = witness_checks(o.n)?;
            let mut r = Report::checks("witness", Some(o.n), checks, json!({ "witness": w }));
            if let Some(w) = w {
                let mut lines: Vec<String> =
                    w.x.iter()
                        .zip(&w.y)
                        .enumerate()
                        .map(|(i, (x, y))| format!("X_{i} = {x}\nY_{i} = {y}"))
                        .collect();
                lines.push(r.text);
                r.text = lines.join("\n");
            }
            r
        }
        Command::Idempotent(o) => {
            qcone::check_order(o.n)?;
            let (rec, e) = idempotent_check(o.n)?;
            let mut r = Report::checks("idempotent", Some(o.n), vec![rec], json!({ "e": e }));
            let rows: Vec<String> = e
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" | ")
                })
                .collect();
            r.text = format!("{}\n{}", rows.join("\n"), r.text);
            r
        }
        Command::Gwa(o) => relation_report("gwa", o.n, verify_gwa_presentation(o.n)?),
        Command::Roots(o) => check_report("roots", o.n, verify_simple_roots(o.n)?),
        Command::Eq5(o) => check_report("eq5", o.n, verify_eq5(o.n)?),
        Command::Bezout { n } => {
            let (rec, p) = bezout_record(*n)?;
            let (x, y) = (x_poly(*n), y_poly(*n));
            let text = format!(
                "X_{n} = {x}\nY_{n} = {y}\nf = {}\ng = {}\n{}",
                p.f,
                p.g,
                rec.line()
            );
            let body = json!({
                "n": n, "X": x.to_string(), "Y": y.to_string(),
                "f": p.f.to_string(), "g": p.g.to_string(), "checks": [rec],
            });
            Report::new("bezout", body, text, rec.pass)
        }
        Command::Omega0(o) => {
            qcone::check_order(o.n)?;
            let (rec, w) = omega0_record(o.n)?;
            let text = format!("c1 = {}\nc2 = {}\n{}", w.c1, w.c2, rec.line());
            let body = json!({
                "N": o.n, "c1": w.c1.to_string(), "c2": w.c2.to_string(),
                "f": w.bezout.f.to_string(), "g": w.bezout.g.to_string(), "checks": [rec],
            });
            Report::new("omega0", body, text, rec.pass)
        }
        Command::Complex(o) => check_report("complex", o.n, complex_structure_checks(o.n)?),
        Command::Volume(o) => check_report("volume", o.n, volume_form_checks(o.n)?),
        Command::FockCheck {
            lhs,
            rhs,
            order,
            q,
            gamma,
            dim,
        } => {
            check_order(order.n)?;
            let rep = FockRep::new(rational("q", q)?, rational("gamma", gamma)?, *dim)?;
            let (ls, le) = input.expr(lhs)?;
            let (rs, re) = input.expr(rhs)?;
            let r = fock_compare(&le, &re, &rep, order.n)?;
            let text = format!(
                "{}  {ls} = {rs}\n      max deviation {:.3e} on columns 0..{} (tolerance {:.0e})",
                if r.pass { "PASS" } else { "FAIL" },
                r.max_deviation,
                r.columns,
                r.tolerance
            );
            let body = json!({
                "N": order.n, "lhs": ls, "rhs": rs, "q": q, "gamma": gamma, "dim": dim,
                "degree": r.degree, "columns": r.columns, "max_deviation": r.max_deviation, "tolerance": r.tolerance,
            });
            Report::new("fock-check", body, text, r.pass)
        }
        Command::VerifyAll { max_n } => {
            qcone::check_order(*max_n)?;
            let mut checks = Vec::new();
            for n in 2..=*max_n {
                checks.extend(suite(n)?);
            }
            for n in 1..=*max_n {
                checks.push(bezout_record(n)?.0);
            }
            let passed = checks.iter().filter(|c| c.pass).count();
            let total = checks.len();
            let mut r = Report::checks(
                "verify-all",
                None,
                checks,
                json!({ "max_N": max_n, "passed": passed, "total": total }),
            );
            r.text
                .push_str(&format!("\n{passed}/{total} checks passed"));
            r
        }
    })
}

/// Parse arguments, run, print; returns the exit code.
pub fn main_with<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    let mut input = Input::new(stdin);
    match run_command(&cli.command, &mut input) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(stdout, "{}", report.json)
            } else {
                writeln!(stdout, "{}", report.text)
            };
            report.exit_code()
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(
                    stdout,
                    "{}",
                    json!({ "schema": SCHEMA, "error": e.to_string() })
                );
            }
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
