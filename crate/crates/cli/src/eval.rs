//! Evaluation of expressions at generic `q` and at `q = zeta_n`.
//!
//! Generator-free subexpressions are kept as unreduced ratios of
//! polynomials so that a limit can cancel `Phi_n` factors as written. At a
//! root of unity, subexpressions built only from `theta` and `eps` are
//! evaluated at generic `q` first and then pushed through the limit, which
//! is how `be(theta, n)` becomes `z`.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use qcalc_core::fsusy::{fs_d, fs_graded_bracket, transfer_from_generic, FsElem, FsGen};
use qcalc_core::gencalc::{graded_bracket, qexp, GradedElem};
use qcalc_core::limits::{limit_in, LimitResult, UnreducedRatio};
use qcalc_core::scalar::{qfact_poly, qnum_poly};
use qcalc_core::{CyclotomicField, QPoly, RatQ};

use crate::ast::{BinOp, Expr, Symbol};

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    Core(qcalc_core::Error),
    /// A generator that only exists at a root of unity, used at generic `q`.
    NeedsRoot(Symbol),
    NotScalar(&'static str),
    DivisionByNonScalar,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Core(e) => write!(f, "{e}"),
            EvalError::NeedsRoot(s) => write!(
                f,
                "`{}` exists only at a root of unity; pass -n N",
                s.name()
            ),
            EvalError::NotScalar(what) => write!(f, "{what} must be a scalar expression"),
            EvalError::DivisionByNonScalar => f.write_str("only division by a scalar is supported"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<qcalc_core::Error> for EvalError {
    fn from(e: qcalc_core::Error) -> Self {
        EvalError::Core(e)
    }
}

pub type EvalResult<T> = Result<T, EvalError>;

/// Value at generic `q`: scalars stay unreduced until they meet a generator.
#[derive(Clone, Debug)]
enum Generic {
    Scalar(UnreducedRatio),
    Elem(GradedElem),
}

impl Generic {
    fn into_elem(self) -> GradedElem {
        match self {
            Generic::Scalar(r) => GradedElem::scalar(r.to_ratq()),
            Generic::Elem(e) => e,
        }
    }
}

fn ratio_of(p: QPoly) -> UnreducedRatio {
    UnreducedRatio::from_poly(p)
}

fn nonnegative(what: &'static str, m: i64) -> EvalResult<u32> {
    u32::try_from(m).map_err(|_| qcalc_core::Error::Negative { what, value: m }.into())
}

fn eval_generic_value(e: &Expr) -> EvalResult<Generic> {
    use Generic::*;
    Ok(match e {
        Expr::Int(n) => Scalar(ratio_of(QPoly::constant(BigRational::from_integer(
            n.clone(),
        )))),
        Expr::Q => Scalar(ratio_of(QPoly::q())),
        Expr::Sym(s) => {
            if s.root_only() {
                return Err(EvalError::NeedsRoot(*s));
            }
            Elem(match s {
                Symbol::Theta => GradedElem::theta(),
                Symbol::Eps => GradedElem::eps(),
                _ => GradedElem::d(),
            })
        }
        Expr::Neg(a) => match eval_generic_value(a)? {
            Scalar(r) => Scalar(r.neg()),
            Elem(x) => Elem(-&x),
        },
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval_generic_value(a)?, eval_generic_value(b)?);
            match (op, x, y) {
                (BinOp::Add, Scalar(r), Scalar(s)) => Scalar(r.add(&s)),
                (BinOp::Sub, Scalar(r), Scalar(s)) => Scalar(r.sub(&s)),
                (BinOp::Mul, Scalar(r), Scalar(s)) => Scalar(r.mul(&s)),
                (BinOp::Div, Scalar(r), Scalar(s)) => Scalar(r.div(&s)?),
                (BinOp::Div, x, Scalar(s)) => {
                    let inv = s.to_ratq().inv().ok_or(qcalc_core::Error::DivisionByZero)?;
                    Elem(x.into_elem().scale(&inv))
                }
                (BinOp::Div, _, Elem(_)) => return Err(EvalError::DivisionByNonScalar),
                (BinOp::Add, x, y) => Elem(&x.into_elem() + &y.into_elem()),
                (BinOp::Sub, x, y) => Elem(&x.into_elem() - &y.into_elem()),
                (BinOp::Mul, x, y) => Elem(&x.into_elem() * &y.into_elem()),
            }
        }
        Expr::Pow(a, k) => match eval_generic_value(a)? {
            Scalar(r) => Scalar(r.pow(*k)),
            Elem(x) => Elem(x.pow(*k)),
        },
        Expr::Bracket(a, b) => {
            let (x, y) = (
                eval_generic_value(a)?.into_elem(),
                eval_generic_value(b)?.into_elem(),
            );
            Elem(graded_bracket(&x, &y))
        }
        Expr::QNum(m) => Scalar(ratio_of(qnum_poly(nonnegative("q-number argument", *m)?))),
        Expr::QFact(m) => Scalar(ratio_of(qfact_poly(nonnegative(
            "q-factorial argument",
            *m,
        )?))),
        Expr::Be(g, m) => {
            let fact = ratio_of(qfact_poly(*m));
            match eval_generic_value(g)? {
                Scalar(r) => Scalar(r.pow(*m).div(&fact)?),
                Elem(x) => Elem(x.bracketed_power(*m)),
            }
        }
        Expr::QExp(c, order) => match eval_generic_value(c)? {
            Scalar(r) => Elem(qexp(&r.to_ratq(), *order)),
            Elem(_) => return Err(EvalError::NotScalar("the argument of qexp")),
        },
    })
}

/// Evaluates at generic `q`. `z`, `zeps`, `dtheta` and `dz` are rejected.
pub fn eval_generic(e: &Expr) -> EvalResult<GradedElem> {
    Ok(eval_generic_value(e)?.into_elem())
}

/// Evaluates a generator-free expression as a ratio of polynomials, without
/// cancelling common factors.
pub fn eval_scalar_ratio(e: &Expr) -> EvalResult<UnreducedRatio> {
    match eval_generic_value(e)? {
        Generic::Scalar(r) => Ok(r),
        Generic::Elem(x) => x
            .as_scalar()
            .map(|s| UnreducedRatio::from(&s))
            .ok_or(EvalError::NotScalar("a limit argument")),
    }
}

pub fn eval_limit(e: &Expr, n: u32) -> EvalResult<LimitResult> {
    let field = CyclotomicField::new(n)?;
    Ok(limit_in(&field, &eval_scalar_ratio(e)?)?)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    /// No generators at all.
    Scalar,
    /// Only `theta` and `eps`.
    Function,
    /// Anything involving `D` or the root-only generators.
    Operator,
}

fn kind(e: &Expr) -> Kind {
    let mut k = Kind::Scalar;
    e.visit(&mut |node| {
        let here = match node {
            Expr::Sym(Symbol::Theta | Symbol::Eps) | Expr::QExp(..) => Kind::Function,
            Expr::Sym(_) => Kind::Operator,
            _ => Kind::Scalar,
        };
        k = k.max(here);
    });
    k
}

fn fs_generator(field: &Arc<CyclotomicField>, s: Symbol) -> FsElem {
    let g = match s {
        Symbol::Theta => FsGen::Theta,
        Symbol::Eps => FsGen::Eps,
        Symbol::Z => FsGen::Z,
        Symbol::Zeps => FsGen::Zeps,
        Symbol::DTheta => FsGen::DTheta,
        Symbol::Dz => FsGen::Dz,
        Symbol::D => return fs_d(field),
    };
    FsElem::generator(field, g)
}

fn eval_root_in(e: &Expr, field: &Arc<CyclotomicField>) -> EvalResult<FsElem> {
    match kind(e) {
        Kind::Scalar => {
            let value = limit_in(field, &eval_scalar_ratio(e)?)?.value;
            return Ok(FsElem::scalar(value));
        }
        Kind::Function => return Ok(transfer_from_generic(&eval_generic(e)?, field)?),
        Kind::Operator => {}
    }
    Ok(match e {
        Expr::Sym(s) => fs_generator(field, *s),
        Expr::Neg(a) => -&eval_root_in(a, field)?,
        Expr::Bin(op, a, b) => {
            let x = eval_root_in(a, field)?;
            let y = eval_root_in(b, field)?;
            match op {
                BinOp::Add => &x + &y,
                BinOp::Sub => &x - &y,
                BinOp::Mul => &x * &y,
                BinOp::Div => {
                    let s = y.as_scalar().ok_or(EvalError::DivisionByNonScalar)?;
                    x.scale(&s.inv().ok_or(qcalc_core::Error::DivisionByZero)?)
                }
            }
        }
        Expr::Pow(a, k) => eval_root_in(a, field)?.pow(*k),
        Expr::Bracket(a, b) => {
            fs_graded_bracket(&eval_root_in(a, field)?, &eval_root_in(b, field)?)
        }
        Expr::Be(g, m) => {
            let fact = field.qfact(*m);
            let inv = fact
                .inv()
                .ok_or(qcalc_core::Error::PoleAtRoot { n: field.order() })?;
            eval_root_in(g, field)?.pow(*m).scale(&inv)
        }
        // an operator inside the argument of qexp
        Expr::QExp(..) => return Err(EvalError::NotScalar("the argument of qexp")),
        Expr::Int(_) | Expr::Q | Expr::QNum(_) | Expr::QFact(_) => {
            unreachable!("scalar nodes are handled above")
        }
    })
}

/// Evaluates at `q = zeta_n`.
pub fn eval_root(e: &Expr, n: u32) -> EvalResult<FsElem> {
    eval_root_in(e, &CyclotomicField::new(n)?)
}

/// Evaluates a scalar expression to a reduced element of `Q(q)`.
pub fn eval_ratq(e: &Expr) -> EvalResult<RatQ> {
    Ok(eval_scalar_ratio(e)?.to_ratq())
}
