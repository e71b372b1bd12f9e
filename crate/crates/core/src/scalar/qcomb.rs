//! q-numbers, q-factorials, Gaussian binomials and cyclotomic polynomials.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::poly::QPoly;
use super::ratq::RatQ;
use crate::error::{Error, Result};

/// `[m]_q = 1 + q + ... + q^(m-1)`.
pub fn qnum_poly(m: u32) -> QPoly {
    QPoly::from_coeffs(vec![BigRational::one(); m as usize])
}

/// `[m]_q! = [1]_q [2]_q ... [m]_q`.
pub fn qfact_poly(m: u32) -> QPoly {
    (1..=m).fold(QPoly::one(), |acc, k| &acc * &qnum_poly(k))
}

/// Gaussian binomial `[n choose k]_q` by the q-Pascal recurrence
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`. Zero when `k > n`.
pub fn qbinomial_poly(n: u32, k: u32) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    let k = k as usize;
    let mut row = vec![QPoly::one()];
    for i in 1..=n as usize {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=i.min(k) {
            let left = if j == 0 {
                QPoly::zero()
            } else {
                row[j - 1].clone()
            };
            let right = if j < row.len() {
                let shift = QPoly::monomial(BigRational::one(), j);
                &shift * &row[j]
            } else {
                QPoly::zero()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

pub fn qnum(m: i64) -> Result<RatQ> {
    let m = u32::try_from(m).map_err(|_| Error::Negative {
        what: "q-number argument",
        value: m,
    })?;
    Ok(RatQ::from_poly(qnum_poly(m)))
}

pub fn qfact(m: i64) -> Result<RatQ> {
    let m = u32::try_from(m).map_err(|_| Error::Negative {
        what: "q-factorial argument",
        value: m,
    })?;
    Ok(RatQ::from_poly(qfact_poly(m)))
}

/// The cyclotomic polynomial `Phi_n`, from `q^n - 1 = prod_{d | n} Phi_d`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic(n: u32) -> QPoly {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let mut memo = BTreeMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut BTreeMap<u32, QPoly>) -> QPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut x = &QPoly::monomial(BigRational::one(), n as usize) - &QPoly::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d = cyclotomic_memo(d, memo);
        x = x.exact_div(&phi_d).expect("Phi_d divides q^n - 1");
    }
    memo.insert(n, x.clone());
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_traits::ToPrimitive;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_int_coeffs(c)
    }

    #[test]
    fn qnum_examples() {
        assert_eq!(qnum(0).unwrap(), RatQ::zero());
        assert_eq!(qnum(1).unwrap(), RatQ::one());
        assert_eq!(qnum(3).unwrap(), RatQ::from_poly(p(&[1, 1, 1])));
        assert!(matches!(qnum(-1), Err(Error::Negative { value: -1, .. })));
    }

    #[test]
    fn qfact_examples() {
        assert_eq!(qfact(0).unwrap(), RatQ::one());
        assert_eq!(qfact(2).unwrap(), RatQ::from_poly(p(&[1, 1])));
        assert!(qfact(-3).is_err());
    }

    #[test]
    fn qfact_3_matches_schoolbook_product() {
        // (1+q)(1+q+q^2) multiplied out by hand-rolled integer convolution
        let a = [1i64, 1];
        let b = [1i64, 1, 1];
        let mut prod = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        assert_eq!(prod, vec![1, 2, 2, 1]);
        assert_eq!(qfact(3).unwrap(), RatQ::from_poly(p(&prod)));
    }

    #[test]
    fn qnum_times_one_minus_q() {
        let one_minus_q = p(&[1, -1]);
        for m in 0..=30u32 {
            let lhs = &qnum_poly(m) * &one_minus_q;
            let rhs = &QPoly::one() - &QPoly::monomial(BigRational::one(), m as usize);
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn qfact_recurrence() {
        for m in 1..=20u32 {
            assert_eq!(qfact_poly(m), &qfact_poly(m - 1) * &qnum_poly(m));
        }
    }

    #[test]
    fn qbinomial_is_factorial_ratio() {
        for n in 0..=9u32 {
            for k in 0..=n {
                let lhs = &qbinomial_poly(n, k) * &(&qfact_poly(k) * &qfact_poly(n - k));
                assert_eq!(lhs, qfact_poly(n), "n = {n}, k = {k}");
            }
        }
        assert!(qbinomial_poly(2, 3).is_zero());
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(5), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(9), p(&[1, 0, 0, 1, 0, 0, 1]));
    }

    /// Independent oracle: expand prod (x - e^{2 pi i k / n}) over primitive k
    /// numerically and round the coefficients.
    fn cyclotomic_by_roots(n: u32) -> Vec<i64> {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for k in 1..=n {
            if num_integer::gcd(k, n) != 1 {
                continue;
            }
            let root = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            coeffs = next;
        }
        coeffs.iter().map(|c| c.re.round() as i64).collect()
    }

    #[test]
    fn cyclotomic_matches_root_product() {
        for n in 1..=30u32 {
            let expected = cyclotomic_by_roots(n);
            let got: Vec<i64> = cyclotomic(n)
                .coeffs()
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect();
            assert_eq!(got, expected, "n = {n}");
        }
    }
}
