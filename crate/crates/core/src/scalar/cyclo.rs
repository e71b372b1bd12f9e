//! The cyclotomic field `Q(zeta_n)` for odd `n`, represented as `Q[q] / Phi_n`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::QPoly;
use super::qcomb::{cyclotomic, qbinomial_poly, qfact_poly, qnum_poly};
use super::ratq::RatQ;
use super::Field;
use crate::error::{Error, Result};

/// `Q(zeta_n)` for an odd order `n >= 3`, together with a few tables of
/// q-combinatorial values at `q = zeta_n` that the root-of-unity algebra
/// looks up constantly.
#[derive(Debug)]
pub struct CyclotomicField {
    n: u32,
    phi: QPoly,
    // [m]_zeta for 0 <= m <= n, [m]_zeta! for 0 <= m < n,
    // [a choose b]_zeta for 0 <= b <= a < n
    qnum: Vec<QPoly>,
    qfact: Vec<QPoly>,
    qbinom: Vec<Vec<QPoly>>,
}

impl CyclotomicField {
    pub fn new(n: u32) -> Result<Arc<Self>> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidRootOrder(n as i64));
        }
        let phi = cyclotomic(n);
        let reduce = |p: QPoly| reduce_mod(&p, n, &phi);
        let qnum = (0..=n).map(|m| reduce(qnum_poly(m))).collect();
        let qfact = (0..n).map(|m| reduce(qfact_poly(m))).collect();
        let qbinom = (0..n)
            .map(|a| (0..=a).map(|b| reduce(qbinomial_poly(a, b))).collect())
            .collect();
        Ok(Arc::new(Self {
            n,
            phi,
            qnum,
            qfact,
            qbinom,
        }))
    }

    /// Checked constructor from a signed order, as read from user input.
    pub fn from_order(n: i64) -> Result<Arc<Self>> {
        let n32 = u32::try_from(n).map_err(|_| Error::InvalidRootOrder(n))?;
        Self::new(n32)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &QPoly {
        &self.phi
    }

    /// Degree of `Phi_n`, i.e. Euler's totient of `n`.
    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap()
    }

    fn wrap(self: &Arc<Self>, value: QPoly) -> CycloNum {
        CycloNum {
            field: Arc::clone(self),
            value,
        }
    }

    pub fn zero(self: &Arc<Self>) -> CycloNum {
        self.wrap(QPoly::zero())
    }

    pub fn one(self: &Arc<Self>) -> CycloNum {
        self.wrap(QPoly::one())
    }

    /// The generator `zeta_n = exp(2 pi i / n)`.
    pub fn zeta(self: &Arc<Self>) -> CycloNum {
        self.zeta_pow(1)
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycloNum {
        let e = k.rem_euclid(self.n as i64) as usize;
        self.reduce(&QPoly::monomial(BigRational::one(), e))
    }

    pub fn rational(self: &Arc<Self>, c: BigRational) -> CycloNum {
        self.wrap(QPoly::constant(c))
    }

    pub fn int(self: &Arc<Self>, c: i64) -> CycloNum {
        self.wrap(QPoly::from_int(c))
    }

    /// Reduces an arbitrary polynomial in `q` to its class mod `Phi_n`.
    pub fn reduce(self: &Arc<Self>, p: &QPoly) -> CycloNum {
        self.wrap(reduce_mod(p, self.n, &self.phi))
    }

    /// `[m]_q` at `q = zeta_n`. Periodic in `m` with period `n`.
    pub fn qnum(self: &Arc<Self>, m: u32) -> CycloNum {
        self.wrap(self.qnum[(m % self.n) as usize].clone())
    }

    /// `[m]_q!` at `q = zeta_n` for `m < n` (zero for `m >= n`).
    pub fn qfact(self: &Arc<Self>, m: u32) -> CycloNum {
        match self.qfact.get(m as usize) {
            Some(v) => self.wrap(v.clone()),
            None => self.zero(),
        }
    }

    /// `[a choose b]_q` at `q = zeta_n` for `a < n`.
    pub fn qbinomial(self: &Arc<Self>, a: u32, b: u32) -> CycloNum {
        if b > a {
            return self.zero();
        }
        match self.qbinom.get(a as usize) {
            Some(row) => self.wrap(row[b as usize].clone()),
            None => self.reduce(&qbinomial_poly(a, b)),
        }
    }

    /// Evaluates a rational function at `q = zeta_n` when its denominator
    /// does not vanish there.
    pub fn eval(self: &Arc<Self>, x: &RatQ) -> Result<CycloNum> {
        let den = self.reduce(x.den());
        let den_inv = den.inv().ok_or(Error::PoleAtRoot { n: self.n })?;
        Ok(&self.reduce(x.num()) * &den_inv)
    }
}

fn reduce_mod(p: &QPoly, n: u32, phi: &QPoly) -> QPoly {
    // fold exponents mod n first (q^n = 1), then divide by Phi_n
    let n = n as usize;
    if p.coeffs().len() > n {
        let mut folded = vec![BigRational::zero(); n];
        for (i, c) in p.coeffs().iter().enumerate() {
            folded[i % n] += c;
        }
        QPoly::from_coeffs(folded).rem(phi)
    } else {
        p.rem(phi)
    }
}

/// An element of `Q(zeta_n)`: a polynomial in `zeta` of degree below
/// `deg Phi_n`, fully reduced.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CyclotomicField>,
    value: QPoly,
}

impl CycloNum {
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.n
    }

    /// Representative polynomial in `zeta`.
    pub fn value(&self) -> &QPoly {
        &self.value
    }

    /// Coefficients `c_0 .. c_{deg Phi_n - 1}`, zero-padded.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.field.degree())
            .map(|i| self.value.coeff(i))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        let (g, s, _) = self.value.ext_gcd(&self.field.phi);
        debug_assert!(g.is_one(), "Phi_n is irreducible");
        Some(self.field.reduce(&s))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field.one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.value.is_constant().then(|| self.value.coeff(0))
    }

    /// Numeric value with `zeta = exp(2 pi i / n)`.
    pub fn to_complex(&self) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.field.n as f64);
        self.value
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| zeta.powu(i as u32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.field.n, other.field.n,
            "mixing elements of different cyclotomic fields"
        );
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.value == other.value
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.value.hash(state);
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(ToString::to_string).collect();
        write!(f, "[{}] mod Phi_{}", parts.join(", "), self.field.n)
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.same_field(rhs);
        self.field.wrap(&self.value + &rhs.value)
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.same_field(rhs);
        self.field.wrap(&self.value - &rhs.value)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.field.wrap(-&self.value)
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.same_field(rhs);
        if self.value.is_zero() || rhs.value.is_zero() {
            return self.field.zero();
        }
        if let Some(c) = self.as_rational() {
            return self.field.wrap(rhs.value.scale(&c));
        }
        if let Some(c) = rhs.as_rational() {
            return self.field.wrap(self.value.scale(&c));
        }
        self.field.reduce(&(&self.value * &rhs.value))
    }
}

impl Div for &CycloNum {
    type Output = CycloNum;
    /// Panics on division by zero; use [`CycloNum::inv`] to handle it.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &CycloNum) -> CycloNum {
        self * &rhs.inv().expect("CycloNum division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl Field for CycloNum {
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn is_one(&self) -> bool {
        self.value.is_one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn rational_like(&self, c: &BigRational) -> Self {
        self.field.rational(c.clone())
    }
}

/// Evaluates `x` at `q = exp(2 pi i / n)`.
///
/// Fails with [`Error::PoleAtRoot`] when the denominator is divisible by
/// `Phi_n`; such expressions need [`crate::limits::limit_at_root`].
pub fn eval_at_root(x: &RatQ, n: u32) -> Result<CycloNum> {
    CyclotomicField::new(n)?.eval(x)
}

/// The square root `zeta_n^((n+1)/2)` of `zeta_n`, available because `n` is
/// odd.
pub fn q_half(n: i64) -> Result<CycloNum> {
    let field = CyclotomicField::from_order(n)?;
    Ok(field.zeta_pow((n + 1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qnum;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn q_evaluates_to_zeta() {
        let z = eval_at_root(&RatQ::q(), 3).unwrap();
        assert_eq!(z.coeffs(), vec![rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn inverse_of_one_minus_q_at_cube_root() {
        let x = RatQ::new(QPoly::one(), QPoly::from_int_coeffs(&[1, -1])).unwrap();
        let v = eval_at_root(&x, 3).unwrap();
        assert_eq!(v.coeffs(), vec![rat(2, 3), rat(1, 3)]);
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let numeric = 1.0 / (1.0 - zeta);
        assert!((v.to_complex() - numeric).norm() < 1e-12);
    }

    #[test]
    fn qnum_n_vanishes_at_root() {
        assert!(eval_at_root(&qnum(3).unwrap(), 3).unwrap().is_zero());
        let pole = RatQ::new(QPoly::one(), QPoly::from_int_coeffs(&[1, 1, 1])).unwrap();
        assert_eq!(eval_at_root(&pole, 3), Err(Error::PoleAtRoot { n: 3 }));
    }

    #[test]
    fn even_orders_rejected() {
        assert_eq!(q_half(4).unwrap_err(), Error::InvalidRootOrder(4));
        assert!(CyclotomicField::new(1).is_err());
        assert!(eval_at_root(&RatQ::q(), 6).is_err());
    }

    #[test]
    fn q_half_examples() {
        let f3 = CyclotomicField::new(3).unwrap();
        assert_eq!(q_half(3).unwrap(), f3.zeta_pow(2));
        let f5 = CyclotomicField::new(5).unwrap();
        assert_eq!(q_half(5).unwrap(), f5.zeta_pow(3));
        let h = q_half(3).unwrap();
        assert_eq!(&h * &h, f3.zeta());
    }

    #[test]
    fn qnum_vanishing_pattern() {
        for n in (3..=15u32).step_by(2) {
            assert!(eval_at_root(&qnum(n as i64).unwrap(), n).unwrap().is_zero());
            for p in 1..n {
                assert!(!eval_at_root(&qnum(p as i64).unwrap(), n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn q_half_squares_to_q() {
        for n in (3..=15i64).step_by(2) {
            let h = q_half(n).unwrap();
            let q = eval_at_root(&RatQ::q(), n as u32).unwrap();
            assert!((&(&h * &h) - &q).is_zero());
        }
    }

    #[test]
    fn display_lists_all_coefficients() {
        let f = CyclotomicField::new(5).unwrap();
        assert_eq!(f.zeta().to_string(), "[0, 1, 0, 0] mod Phi_5");
        assert_eq!(
            f.rational(rat(-1, 2)).to_string(),
            "[-1/2, 0, 0, 0] mod Phi_5"
        );
    }

    #[test]
    fn field_inverse_round_trip() {
        let f = CyclotomicField::new(9).unwrap();
        let x = f.reduce(&QPoly::from_int_coeffs(&[2, -1, 0, 3, 1]));
        assert!((&x * &x.inv().unwrap()).is_one());
    }
}
