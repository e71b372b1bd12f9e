//! Expression language and command-line front end for `qcalc-core`.
//!
//! Expressions use `theta`, `eps`, `D` at generic `q`, plus `z`, `zeps`,
//! `dtheta`, `dz` at a root of unity, with `+ - * / ^`, graded brackets
//! `[A, B]` and the calls `qnum(m)`, `qfact(m)`, `be(g, m)` and
//! `qexp(C, order)`.

pub mod app;
pub mod ast;
pub mod eval;
pub mod parse;

pub use ast::{BinOp, Expr, Symbol};
pub use parse::{parse, ParseError};
