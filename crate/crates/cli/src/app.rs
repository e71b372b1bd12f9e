//! Command definitions and their execution.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a computation
//! hits a pole or other mathematical error, 2 on usage and syntax errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qcalc_core::limits::{render_value, AtRoot, GenericQ};
use qcalc_core::repr::{
    ket_matrix, number_operator, oscillator_a, oscillator_adag, oscillator_exact_matrix, KetOp,
    MatrixExport,
};
use qcalc_core::verify::{self, criterion, Criterion, CRITERIA};

use crate::ast::Expr;
use crate::eval::{eval_generic, eval_limit, eval_root, EvalError};
use crate::parse::{parse, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qcalc",
    version,
    about = "Exact q-calculus at generic q and at odd roots of unity"
)]
pub struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Mode {
    /// Work at generic q (the default).
    #[arg(long, conflicts_with = "n")]
    pub generic: bool,
    /// Work at q = exp(2 pi i / N), N odd and at least 3.
    #[arg(short = 'n')]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize {
        expr: String,
        #[command(flatten)]
        mode: Mode,
    },
    /// Print the normal form of the graded bracket [A, B].
    Bracket {
        a: String,
        b: String,
        #[command(flatten)]
        mode: Mode,
    },
    /// Limit of a scalar expression as q tends to exp(2 pi i / N).
    Limit {
        #[arg(short = 'n')]
        n: u32,
        expr: String,
    },
    /// Print an operator matrix as JSON.
    Rep {
        #[arg(short = 'n')]
        n: Option<u32>,
        /// One of D, theta, qN, a, adag, N.
        #[arg(long)]
        op: String,
        /// Number of basis kets (defaults to n, or 10 at generic q).
        #[arg(long)]
        cutoff: Option<u32>,
        /// Hermitian oscillator matrices in double precision.
        #[arg(long)]
        numeric: bool,
    },
    /// Run acceptance suites.
    Verify {
        /// A criterion name, `fsusy` (structure and transform) or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Truncation order for suites that have one.
        #[arg(long)]
        rmax: Option<u32>,
    },
}

/// Where results and diagnostics go.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub json: bool,
}

impl Io<'_> {
    fn emit(&mut self, text: &str, record: Value) {
        if self.json {
            let _ = writeln!(self.out, "{record}");
        } else {
            let _ = writeln!(self.out, "{text}");
        }
    }

    fn fail(&mut self, code: i32, text: &str, record: Value) -> i32 {
        if self.json {
            let _ = writeln!(self.out, "{record}");
        } else {
            let _ = writeln!(self.err, "error: {text}");
        }
        code
    }

    fn parse_error(&mut self, what: &str, e: &ParseError) -> i32 {
        let record = json!({
            "error": "syntax",
            "argument": what,
            "offset": e.offset,
            "column": e.column,
            "expected": e.expected,
            "found": e.found,
        });
        self.fail(EXIT_USAGE, &format!("{what}: {e}"), record)
    }

    fn eval_error(&mut self, e: &EvalError) -> i32 {
        let (kind, code) = match e {
            EvalError::Core(qcalc_core::Error::PoleAtRoot { .. }) => ("pole_at_root", EXIT_FAILED),
            EvalError::NeedsRoot(_) => ("needs_root", EXIT_USAGE),
            _ => ("evaluation", EXIT_FAILED),
        };
        let mut record = json!({ "error": kind, "message": e.to_string() });
        if let EvalError::Core(qcalc_core::Error::PoleAtRoot { n }) = e {
            record["n"] = json!(n);
        }
        self.fail(code, &e.to_string(), record)
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut io = Io {
        out,
        err,
        json: cli.json,
    };
    match cli.command {
        Command::Normalize { expr, mode } => match parse(&expr) {
            Ok(e) => normalize(&mut io, &e, &mode),
            Err(pe) => io.parse_error("expression", &pe),
        },
        Command::Bracket { a, b, mode } => {
            let lhs = match parse(&a) {
                Ok(e) => e,
                Err(pe) => return io.parse_error("first operand", &pe),
            };
            let rhs = match parse(&b) {
                Ok(e) => e,
                Err(pe) => return io.parse_error("second operand", &pe),
            };
            normalize(&mut io, &Expr::Bracket(Box::new(lhs), Box::new(rhs)), &mode)
        }
        Command::Limit { n, expr } => match parse(&expr) {
            Ok(e) => limit(&mut io, &e, n),
            Err(pe) => io.parse_error("expression", &pe),
        },
        Command::Rep {
            n,
            op,
            cutoff,
            numeric,
        } => rep(&mut io, n, &op, cutoff, numeric),
        Command::Verify { suite, rmax } => verify_suite(&mut io, &suite, rmax, seed_from_env()),
    }
}

/// `QCALC_SEED` if set and numeric, the fixed default otherwise.
pub fn seed_from_env() -> u64 {
    std::env::var("QCALC_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(verify::DEFAULT_SEED)
}

fn normalize(io: &mut Io, e: &Expr, mode: &Mode) -> i32 {
    let (result, record) = match mode.n {
        None => match eval_generic(e) {
            Ok(x) => {
                let s = x.to_string();
                (
                    s.clone(),
                    json!({ "mode": "generic", "input": e.to_string(), "result": s }),
                )
            }
            Err(ee) => return io.eval_error(&ee),
        },
        Some(n) => match eval_root(e, n) {
            Ok(x) => {
                let s = x.to_string();
                (
                    s.clone(),
                    json!({ "mode": "root", "n": n, "input": e.to_string(), "result": s }),
                )
            }
            Err(ee) => return io.eval_error(&ee),
        },
    };
    io.emit(&result, record);
    EXIT_OK
}

fn limit(io: &mut Io, e: &Expr, n: u32) -> i32 {
    match eval_limit(e, n) {
        Ok(lim) => {
            let value = render_value(&lim.value);
            let coeffs: Vec<String> = lim.value.coeffs().iter().map(|c| c.to_string()).collect();
            let text = format!("{value}, cancelled_order = {}", lim.cancelled_order);
            io.emit(
                &text,
                json!({
                    "n": n,
                    "input": e.to_string(),
                    "value": value,
                    "coeffs": coeffs,
                    "cancelled_order": lim.cancelled_order,
                }),
            );
            EXIT_OK
        }
        Err(ee) => io.eval_error(&ee),
    }
}

fn ket_op(name: &str) -> Option<KetOp> {
    match name {
        "D" => Some(KetOp::D),
        "theta" => Some(KetOp::Theta),
        "qN" => Some(KetOp::QN),
        _ => None,
    }
}

fn usage(io: &mut Io, text: &str) -> i32 {
    io.fail(
        EXIT_USAGE,
        text,
        json!({ "error": "usage", "message": text }),
    )
}

fn rep(io: &mut Io, n: Option<u32>, op: &str, cutoff: Option<u32>, numeric: bool) -> i32 {
    let result = if numeric {
        let Some(n) = n else {
            return usage(io, "--numeric needs -n");
        };
        let matrix = match op {
            "a" => oscillator_a(n),
            "adag" => oscillator_adag(n),
            "N" => qcalc_core::CyclotomicField::new(n).map(|_| number_operator(n)),
            _ => {
                return usage(
                    io,
                    &format!("no numeric matrix for `{op}`; use a, adag or N"),
                )
            }
        };
        matrix.map(|m| MatrixExport::numeric(n, op, &m))
    } else {
        let size = cutoff.or(n).unwrap_or(10);
        if size == 0 {
            return usage(io, "--cutoff must be positive");
        }
        match (n, op) {
            (Some(n), "a" | "adag") => oscillator_exact_matrix(n, op == "adag", size)
                .map(|rows| MatrixExport::exact(Some(n), size, op, rows)),
            (None, "a" | "adag") => {
                return usage(
                    io,
                    "exact oscillator matrices need a root of unity; pass -n N",
                );
            }
            (n, name) => {
                let Some(k) = ket_op(name) else {
                    return usage(
                        io,
                        &format!("unknown operator `{name}`; use D, theta, qN, a, adag or N"),
                    );
                };
                match n {
                    None => ket_matrix(k, &GenericQ, size, |c| c.to_string()),
                    Some(n) => AtRoot::new(n).and_then(|at| ket_matrix(k, &at, size, render_value)),
                }
                .map(|rows| MatrixExport::exact(n, size, name, rows))
            }
        }
    };
    match result {
        Ok(m) => {
            let _ = writeln!(
                io.out,
                "{}",
                serde_json::to_string(&m).expect("matrices serialize")
            );
            EXIT_OK
        }
        Err(e) => io.eval_error(&EvalError::Core(e)),
    }
}

fn suite_members(name: &str) -> Option<Vec<Criterion>> {
    match name {
        "all" => Some(CRITERIA.to_vec()),
        "fsusy" => Some(vec![criterion("structure")?, criterion("transform")?]),
        other => criterion(other).map(|c| vec![c]),
    }
}

fn verify_suite(io: &mut Io, suite: &str, rmax: Option<u32>, seed: u64) -> i32 {
    let Some(members) = suite_members(suite) else {
        let names: Vec<&str> = CRITERIA.iter().map(|c| c.name).collect();
        return usage(
            io,
            &format!(
                "unknown suite `{suite}`; use all, fsusy or one of {}",
                names.join(", ")
            ),
        );
    };
    let mut all_pass = true;
    for c in members {
        let outcome = verify::run_with(c, seed, rmax);
        all_pass &= outcome.pass && outcome.within_budget();
        let record = serde_json::to_value(&outcome).expect("outcomes serialize");
        io.emit(&outcome.line(), record);
    }
    if all_pass {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
