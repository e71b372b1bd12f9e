//! Exact scalars: rational functions of `q`, q-combinatorics, cyclotomic
//! polynomials and the cyclotomic fields `Q(zeta_n)`.
//!
//! Nothing in here touches floating point except the `eval_complex` helpers
//! used by numeric cross-checks.

mod cyclo;
mod poly;
mod qcomb;
mod ratq;

use std::fmt;

use num_rational::BigRational;

pub use cyclo::{eval_at_root, q_half, CycloNum, CyclotomicField};
pub use poly::QPoly;
pub use qcomb::{cyclotomic, qbinomial_poly, qfact, qfact_poly, qnum, qnum_poly};
pub use ratq::RatQ;

/// Coefficient arithmetic shared by the generic-q and root-of-unity algebras.
///
/// Constants are produced relative to an existing value (`zero_like`,
/// `one_like`) because a cyclotomic number needs to know which field it
/// lives in.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn rational_like(&self, c: &BigRational) -> Self;

    fn int_like(&self, c: i64) -> Self {
        self.rational_like(&BigRational::from_integer(c.into()))
    }
}
