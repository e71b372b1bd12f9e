//! Limits `q -> exp(2 pi i / n)` of rational functions, for odd `n >= 3`.
//!
//! Limits are taken by exact cancellation of `Phi_n` factors between the
//! numerator and denominator, never by series expansion. Since a canonical
//! [`RatQ`] is already coprime, the interesting inputs are ratios that have
//! not been reduced yet, such as `[6]_q! / ([3]_q!)^2` as written; these are
//! carried by [`UnreducedRatio`] so the number of cancelled factors can be
//! reported.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gencalc::qexp;
use crate::scalar::{qfact_poly, qnum_poly, CycloNum, CyclotomicField, Field, QPoly, RatQ};

/// A quotient of polynomials kept exactly as built, without cancelling
/// common factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnreducedRatio {
    num: QPoly,
    den: QPoly,
}

impl UnreducedRatio {
    pub fn new(num: QPoly, den: QPoly) -> Option<Self> {
        (!den.is_zero()).then_some(Self { num, den })
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn to_ratq(&self) -> RatQ {
        RatQ::new(self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        Self {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            num: &self.num * &rhs.den,
            den: &self.den * &rhs.num,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl From<&RatQ> for UnreducedRatio {
    fn from(x: &RatQ) -> Self {
        Self {
            num: x.num().clone(),
            den: x.den().clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitResult {
    pub value: CycloNum,
    /// Number of `Phi_n` factors removed from both numerator and denominator.
    pub cancelled_order: u32,
}

/// Limit of a canonical rational function. Because the input is coprime,
/// `cancelled_order` is always 0 here; a vanishing denominator is a pole.
pub fn limit_at_root(x: &RatQ, n: u32) -> Result<LimitResult> {
    limit_in(&CyclotomicField::new(n)?, &UnreducedRatio::from(x))
}

/// Limit of a ratio as written, cancelling common `Phi_n` powers first.
pub fn limit_ratio_at_root(x: &UnreducedRatio, n: u32) -> Result<LimitResult> {
    limit_in(&CyclotomicField::new(n)?, x)
}

pub fn limit_in(field: &Arc<CyclotomicField>, x: &UnreducedRatio) -> Result<LimitResult> {
    let phi = field.modulus();
    let (num_order, num_rest) = x.num.multiplicity(phi);
    let (den_order, den_rest) = x.den.multiplicity(phi);
    if x.num.is_zero() {
        return Ok(LimitResult {
            value: field.zero(),
            cancelled_order: 0,
        });
    }
    let cancelled = num_order.min(den_order);
    if den_order > num_order {
        return Err(Error::PoleAtRoot { n: field.order() });
    }
    let value = if num_order > den_order {
        field.zero()
    } else {
        let den = field.reduce(&den_rest);
        &field.reduce(&num_rest) * &den.inv().expect("Phi_n-free denominator")
    };
    Ok(LimitResult {
        value,
        cancelled_order: cancelled,
    })
}

/// Coefficient ring used when acting at generic `q` or at a root of unity.
pub trait Specialization {
    type Scalar: Field;

    fn specialize(&self, x: &RatQ) -> Result<Self::Scalar>;

    fn specialize_ratio(&self, x: &UnreducedRatio) -> Result<Self::Scalar>;

    fn one(&self) -> Self::Scalar;

    fn zero(&self) -> Self::Scalar;

    /// `None` at generic `q`, `Some(n)` at a root of unity.
    fn root_order(&self) -> Option<u32>;
}

/// Scalars stay in `Q(q)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GenericQ;

impl Specialization for GenericQ {
    type Scalar = RatQ;

    fn specialize(&self, x: &RatQ) -> Result<RatQ> {
        Ok(x.clone())
    }

    fn specialize_ratio(&self, x: &UnreducedRatio) -> Result<RatQ> {
        Ok(x.to_ratq())
    }

    fn one(&self) -> RatQ {
        RatQ::one()
    }

    fn zero(&self) -> RatQ {
        RatQ::zero()
    }

    fn root_order(&self) -> Option<u32> {
        None
    }
}

/// Scalars pass through the limit into `Q(zeta_n)`.
#[derive(Clone, Debug)]
pub struct AtRoot {
    field: Arc<CyclotomicField>,
}

impl AtRoot {
    pub fn new(n: u32) -> Result<Self> {
        Ok(Self {
            field: CyclotomicField::new(n)?,
        })
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }
}

impl Specialization for AtRoot {
    type Scalar = CycloNum;

    fn specialize(&self, x: &RatQ) -> Result<CycloNum> {
        Ok(limit_in(&self.field, &UnreducedRatio::from(x))?.value)
    }

    fn specialize_ratio(&self, x: &UnreducedRatio) -> Result<CycloNum> {
        Ok(limit_in(&self.field, x)?.value)
    }

    fn one(&self) -> CycloNum {
        self.field.one()
    }

    fn zero(&self) -> CycloNum {
        self.field.zero()
    }

    fn root_order(&self) -> Option<u32> {
        Some(self.field.order())
    }
}

/// One line of the lemma report.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaRecord {
    pub name: &'static str,
    pub n: u32,
    pub r: u32,
    /// Only set for the periodicity family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub expected: String,
    pub got: String,
    pub pass: bool,
    pub cancelled_order: u32,
    /// The same quantity as a rational function of `q`, for numeric checks.
    #[serde(skip)]
    pub as_function: RatQ,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub records: Vec<LemmaRecord>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn family(&self, name: &str) -> impl Iterator<Item = &LemmaRecord> {
        let name = name.to_string();
        self.records.iter().filter(move |r| r.name == name)
    }
}

pub const LEMMA_QNUM_RATIO: &str = "qnum_ratio";
pub const LEMMA_FACTORIAL_RATIO: &str = "factorial_ratio";
pub const LEMMA_FACTORIAL_POWER: &str = "factorial_power";
pub const LEMMA_PERIODICITY: &str = "periodicity";

fn factorial(r: u32) -> BigInt {
    (1..=r).fold(BigInt::one(), |acc, k| acc * k)
}

/// Checks the four root-of-unity lemma families for `1 <= r <= r_max`:
///
/// * `L [rn] / [n] = r`
/// * `L [rn]! / ([n]! [(r-1)n]!) = r`
/// * `L [rn]! / ([n]!)^r = r!`
/// * `[rn + p] = [p]` at `zeta_n`, for `1 <= p < n`
pub fn lemma_suite(n: u32, r_max: u32) -> Result<LemmaReport> {
    let field = CyclotomicField::new(n)?;
    let mut records = Vec::new();
    let mut push_limit =
        |name: &'static str, r: u32, ratio: UnreducedRatio, expected: BigInt| -> Result<()> {
            let lim = limit_in(&field, &ratio)?;
            let expected_val = field.rational(BigRational::from_integer(expected.clone()));
            records.push(LemmaRecord {
                name,
                n,
                r,
                p: None,
                expected: expected.to_string(),
                got: render_value(&lim.value),
                pass: lim.value == expected_val,
                cancelled_order: lim.cancelled_order,
                as_function: ratio.to_ratq(),
            });
            Ok(())
        };
    for r in 1..=r_max {
        push_limit(
            LEMMA_QNUM_RATIO,
            r,
            UnreducedRatio::new(qnum_poly(r * n), qnum_poly(n)).unwrap(),
            BigInt::from(r),
        )?;
        push_limit(
            LEMMA_FACTORIAL_RATIO,
            r,
            UnreducedRatio::new(qfact_poly(r * n), &qfact_poly(n) * &qfact_poly((r - 1) * n))
                .unwrap(),
            BigInt::from(r),
        )?;
        push_limit(
            LEMMA_FACTORIAL_POWER,
            r,
            UnreducedRatio::new(qfact_poly(r * n), qfact_poly(n).pow(r)).unwrap(),
            factorial(r),
        )?;
    }
    for r in 1..=r_max {
        for p in 1..n {
            let lhs = field.reduce(&qnum_poly(r * n + p));
            let rhs = field.reduce(&qnum_poly(p));
            records.push(LemmaRecord {
                name: LEMMA_PERIODICITY,
                n,
                r,
                p: Some(p),
                expected: render_value(&rhs),
                got: render_value(&lhs),
                pass: lhs == rhs,
                cancelled_order: 0,
                as_function: RatQ::from_poly(qnum_poly(r * n + p)),
            });
        }
    }
    Ok(LemmaReport { records })
}

/// Rational values print as plain rationals, everything else as a
/// coefficient list.
pub fn render_value(x: &CycloNum) -> String {
    match x.as_rational() {
        Some(c) => c.to_string(),
        None => x.to_string(),
    }
}

/// `theta^(m)` at the root: `m = r n + p` and `L theta^(m) = (z^r / r!) theta^(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReduction {
    pub r: u32,
    pub p: u32,
    /// `1 / r!`
    pub coefficient: BigRational,
}

pub fn reduce_theta_power(m: u32, n: u32) -> Result<ThetaReduction> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidRootOrder(n as i64));
    }
    let (r, p) = (m / n, m % n);
    Ok(ThetaReduction {
        r,
        p,
        coefficient: BigRational::new(BigInt::one(), factorial(r)),
    })
}

/// One coefficient in the root-of-unity expansion of `exp_q(C theta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QexpTerm {
    /// Power of `z`.
    pub r: u32,
    /// Power of `theta`.
    pub p: u32,
    pub got: CycloNum,
    pub expected: CycloNum,
    pub cancelled_order: u32,
}

/// Expands `exp_q(C theta)` through `theta^(r_max n + n - 1)`, pushes each
/// coefficient through the limit, and pairs it with the coefficient of
/// `z^r theta^p` in `exp(z C^n) * sum_{p<n} C^p theta^(p)`.
///
/// The expansion side never sees the factorized form: a term
/// `c_m theta^m` with `m = r n + p` becomes `L(c_m ([n]!)^r) z^r theta^p`,
/// since `z^r = L (theta^n / [n]!)^r`.
pub fn qexp_factorization_terms(c: &BigRational, n: u32, r_max: u32) -> Result<Vec<QexpTerm>> {
    let field = CyclotomicField::new(n)?;
    let order = r_max * n + n - 1;
    let series = qexp(&RatQ::from_rational(c.clone()), order);
    let nfact = qfact_poly(n);
    let mut out = Vec::new();
    for m in 0..=order {
        let red = reduce_theta_power(m, n)?;
        let coeff = series.coeff(&crate::gencalc::Monomial::new(m, 0, 0));
        let ratio = UnreducedRatio::from(&coeff).mul(&UnreducedRatio::from_poly(nfact.pow(red.r)));
        let lim = limit_in(&field, &ratio)?;
        // (C^n)^r / r! * C^p / [p]!
        let scalar = c.pow((n * red.r + red.p) as i32) * &red.coefficient;
        let expected =
            &field.rational(scalar) * &field.qfact(red.p).inv().expect("[p]! nonzero for p < n");
        out.push(QexpTerm {
            r: red.r,
            p: red.p,
            got: lim.value,
            expected,
            cancelled_order: lim.cancelled_order,
        });
    }
    Ok(out)
}

pub fn qexp_factorization_check(c: &BigRational, n: u32, r_max: u32) -> Result<bool> {
    Ok(qexp_factorization_terms(c, n, r_max)?
        .iter()
        .all(|t| t.got == t.expected))
}

/// Double-precision value of `x` at `(1 - delta) exp(2 pi i / n)`, approaching
/// the root from inside the unit disc.
pub fn approach_numerically(x: &RatQ, n: u32, delta: f64) -> num_complex::Complex64 {
    let point =
        num_complex::Complex64::from_polar(1.0 - delta, 2.0 * std::f64::consts::PI / n as f64);
    x.eval_complex(point)
}
