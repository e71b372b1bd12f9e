//! The field `Q(q)` of rational functions, kept in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use super::poly::QPoly;
use super::Field;

/// A rational function `num / den` in the indeterminate `q`.
///
/// Invariants: `den` is monic and nonzero, `gcd(num, den) = 1`, and zero is
/// stored as `0 / 1`. Every constructor and arithmetic operation restores the
/// canonical form, so derived equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatQ {
    num: QPoly,
    den: QPoly,
}

impl RatQ {
    /// Builds `num / den` and canonicalizes. Returns `None` for a zero
    /// denominator.
    pub fn new(num: QPoly, den: QPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::canonical(num, den))
    }

    fn canonical(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(QPoly::q())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let mono = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(mono)
        } else {
            Self {
                num: QPoly::one(),
                den: mono,
            }
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(QPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational constant, if this is one.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::canonical(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Some(Self {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Substitutes `q -> q^k` (k ≥ 1). Used to move into the square-root
    /// variable `s` with `q = s^2`.
    pub fn compose_power(&self, k: usize) -> Self {
        Self::canonical(self.num.compose_power(k), self.den.compose_power(k))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }

    /// Renders with a caller-chosen variable name.
    pub fn display_in(&self, var: &str) -> String {
        let num = self.num.display_in(var);
        if self.den.is_one() {
            return num;
        }
        let wrap = |p: &QPoly, s: String| {
            if p.term_count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!(
            "{} / {}",
            wrap(&self.num, num),
            wrap(&self.den, self.den.display_in(var))
        )
    }
}

impl Default for RatQ {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("q"))
    }
}

impl From<i64> for RatQ {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigInt> for RatQ {
    fn from(c: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(c))
    }
}

impl From<QPoly> for RatQ {
    fn from(p: QPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RatQ {
    type Output = RatQ;
    fn add(self, rhs: &RatQ) -> RatQ {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatQ::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RatQ::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatQ {
    type Output = RatQ;
    fn sub(self, rhs: &RatQ) -> RatQ {
        self + &(-rhs)
    }
}

impl Neg for &RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        RatQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatQ {
    type Output = RatQ;
    fn mul(self, rhs: &RatQ) -> RatQ {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatQ::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so the products are already coprime
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatQ::canonical(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatQ {
    type Output = RatQ;
    /// Panics on division by zero; use [`RatQ::inv`] to handle it.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatQ) -> RatQ {
        self * &rhs.inv().expect("RatQ division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatQ {
            type Output = RatQ;
            fn $m(self, rhs: RatQ) -> RatQ { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatQ {
    type Output = RatQ;
    fn neg(self) -> RatQ {
        -&self
    }
}

impl Field for RatQ {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
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
        RatQ::zero()
    }
    fn one_like(&self) -> Self {
        RatQ::one()
    }
    fn rational_like(&self, c: &BigRational) -> Self {
        RatQ::from_rational(c.clone())
    }
}
