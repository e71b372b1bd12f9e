//! The algebra at `q = zeta_n`, odd `n`.
//!
//! Generators, in normal order: `z`, `zeps` (grade 0, commuting with
//! everything except `dz z = z dz + 1`), then the graded sector `theta`,
//! `eps`, `dtheta` with
//!
//! ```text
//! dtheta theta = q theta dtheta + 1
//! eps theta    = q^-1 theta eps
//! dtheta eps   = q^-1 eps dtheta
//! theta^n = eps^n = dtheta^n = 0
//! ```
//!
//! and finally `dz`. The total derivative `D = dtheta + theta^(n-1) dz` is a
//! derived element; words containing `D` are expanded before ordering.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gencalc::{render_term, GradedElem};
use crate::limits::{limit_in, render_value, UnreducedRatio};
use crate::rewrite::{rewrite_to_normal, RewriteSystem, Strategy};
use crate::scalar::{qfact_poly, CycloNum, CyclotomicField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FsGen {
    Z,
    Zeps,
    Theta,
    Eps,
    DTheta,
    Dz,
}

impl FsGen {
    pub const ALL: [FsGen; 6] = [
        FsGen::Z,
        FsGen::Zeps,
        FsGen::Theta,
        FsGen::Eps,
        FsGen::DTheta,
        FsGen::Dz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FsGen::Z => "z",
            FsGen::Zeps => "zeps",
            FsGen::Theta => "theta",
            FsGen::Eps => "eps",
            FsGen::DTheta => "dtheta",
            FsGen::Dz => "dz",
        }
    }

    pub fn grade(self) -> i64 {
        match self {
            FsGen::Theta | FsGen::Eps => 1,
            FsGen::DTheta => -1,
            FsGen::Z | FsGen::Zeps | FsGen::Dz => 0,
        }
    }
}

/// `z^z zeps^zeps theta^theta eps^eps dtheta^dtheta dz^dz`, ordered
/// lexicographically in that field order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FsMonomial {
    pub z: u32,
    pub zeps: u32,
    pub theta: u32,
    pub eps: u32,
    pub dtheta: u32,
    pub dz: u32,
}

impl FsMonomial {
    pub const ONE: FsMonomial = FsMonomial {
        z: 0,
        zeps: 0,
        theta: 0,
        eps: 0,
        dtheta: 0,
        dz: 0,
    };

    pub fn of(g: FsGen, power: u32) -> Self {
        let mut m = Self::ONE;
        *m.exponent_mut(g) = power;
        m
    }

    pub fn exponent(&self, g: FsGen) -> u32 {
        match g {
            FsGen::Z => self.z,
            FsGen::Zeps => self.zeps,
            FsGen::Theta => self.theta,
            FsGen::Eps => self.eps,
            FsGen::DTheta => self.dtheta,
            FsGen::Dz => self.dz,
        }
    }

    fn exponent_mut(&mut self, g: FsGen) -> &mut u32 {
        match g {
            FsGen::Z => &mut self.z,
            FsGen::Zeps => &mut self.zeps,
            FsGen::Theta => &mut self.theta,
            FsGen::Eps => &mut self.eps,
            FsGen::DTheta => &mut self.dtheta,
            FsGen::Dz => &mut self.dz,
        }
    }

    /// Integer grade `theta + eps - dtheta`; only its class mod `n` matters.
    pub fn grade(&self) -> i64 {
        self.theta as i64 + self.eps as i64 - self.dtheta as i64
    }

    pub fn within(&self, n: u32) -> bool {
        self.theta < n && self.eps < n && self.dtheta < n
    }
}

impl fmt::Display for FsMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = FsGen::ALL
            .iter()
            .filter_map(|g| match self.exponent(*g) {
                0 => None,
                1 => Some(g.name().to_string()),
                e => Some(format!("{}^{}", g.name(), e)),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i))
}

/// Product of two ordered monomials at `q = zeta_n`, truncated by
/// nilpotency.
fn mono_mul(
    field: &Arc<CyclotomicField>,
    a: &FsMonomial,
    b: &FsMonomial,
) -> Vec<(CycloNum, FsMonomial)> {
    let n = field.order();
    let mut out = Vec::new();
    // dz^t z^k' = sum_i C(t,i) k'!/(k'-i)! z^(k'-i) dz^(t-i)
    for i in 0..=a.dz.min(b.z) {
        let weyl = binomial(a.dz, i) * falling(b.z, i);
        // dtheta^s theta^p' as at generic q, then the eps letters pick up
        // powers of zeta
        let (s, p2) = (a.dtheta, b.theta);
        for l in 0..=s.min(p2) {
            let m = FsMonomial {
                z: a.z + b.z - i,
                zeps: a.zeps + b.zeps,
                theta: a.theta + p2 - l,
                eps: a.eps + b.eps,
                dtheta: s - l + b.dtheta,
                dz: a.dz - i + b.dz,
            };
            if !m.within(n) {
                continue;
            }
            let zexp = (s - l) as i64 * (p2 - l) as i64
                - a.eps as i64 * (p2 - l) as i64
                - (s - l) as i64 * b.eps as i64;
            let c = &(&(&field.qbinomial(s, l) * &field.qbinomial(p2, l)) * &field.qfact(l))
                * &field.zeta_pow(zexp);
            if c.is_zero() {
                continue;
            }
            let c = &c * &field.rational(BigRational::from_integer(weyl.clone()));
            out.push((c, m));
        }
    }
    out
}

/// A finite combination of ordered monomials with `Q(zeta_n)` coefficients.
#[derive(Clone)]
pub struct FsElem {
    field: Arc<CyclotomicField>,
    terms: BTreeMap<FsMonomial, CycloNum>,
}

impl FsElem {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self {
            field: Arc::clone(field),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::scalar(field.one())
    }

    pub fn scalar(c: CycloNum) -> Self {
        let field = Arc::clone(c.field());
        Self::term(&field, c, FsMonomial::ONE)
    }

    pub fn term(field: &Arc<CyclotomicField>, c: CycloNum, m: FsMonomial) -> Self {
        let mut out = Self::zero(field);
        out.add_term(m, c);
        out
    }

    pub fn generator(field: &Arc<CyclotomicField>, g: FsGen) -> Self {
        Self::term(field, field.one(), FsMonomial::of(g, 1))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// Adds `c * m`; monomials outside the nilpotent range are dropped.
    pub fn add_term(&mut self, m: FsMonomial, c: CycloNum) {
        if c.is_zero() || !m.within(self.field.order()) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FsMonomial, &CycloNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &FsMonomial) -> CycloNum {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_scalar(&self) -> Option<CycloNum> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&FsMonomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(&self.field), |acc, _| &acc * self)
    }

    pub fn filter(&self, keep: impl Fn(&FsMonomial) -> bool) -> Self {
        Self {
            field: Arc::clone(&self.field),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn grade_components(&self) -> BTreeMap<i64, FsElem> {
        let mut out: BTreeMap<i64, FsElem> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.grade())
                .or_insert_with(|| FsElem::zero(&self.field))
                .terms
                .insert(*m, c.clone());
        }
        out
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "mixing algebras at different roots of unity"
        );
    }
}

impl PartialEq for FsElem {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.terms == other.terms
    }
}

impl Eq for FsElem {}

impl fmt::Debug for FsElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FsElem[n={}]({self})", self.order())
    }
}

impl fmt::Display for FsElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let text = render_value(c);
                let alone = self.terms.len() == 1 && *m == FsMonomial::ONE;
                render_term(&text, c.as_rational().is_none() && !alone, m)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &FsElem {
    type Output = FsElem;
    fn add(self, rhs: &FsElem) -> FsElem {
        self.check_field(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &FsElem {
    type Output = FsElem;
    fn sub(self, rhs: &FsElem) -> FsElem {
        self + &(-rhs)
    }
}

impl Neg for &FsElem {
    type Output = FsElem;
    fn neg(self) -> FsElem {
        FsElem {
            field: Arc::clone(&self.field),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &FsElem {
    type Output = FsElem;
    fn mul(self, rhs: &FsElem) -> FsElem {
        self.check_field(rhs);
        let mut out = FsElem::zero(&self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let c = c1 * c2;
                for (k, m) in mono_mul(&self.field, m1, m2) {
                    out.add_term(m, &c * &k);
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FsElem {
            type Output = FsElem;
            fn $m(self, rhs: FsElem) -> FsElem { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for FsElem {
    type Output = FsElem;
    fn neg(self) -> FsElem {
        -&self
    }
}

/// A factor of a word in the root-of-unity algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum FsLetter {
    Gen(FsGen),
    /// The total derivative, expanded as `dtheta + theta^(n-1) dz / [n-1]!`.
    D,
    Scalar(CycloNum),
}

pub fn fs_normal_order(field: &Arc<CyclotomicField>, word: &[FsLetter]) -> FsElem {
    let d = fs_d(field);
    word.iter()
        .fold(FsElem::one(field), |acc, letter| match letter {
            FsLetter::Gen(g) => &acc * &FsElem::generator(field, *g),
            FsLetter::D => &acc * &d,
            FsLetter::Scalar(c) => acc.scale(c),
        })
}

/// The relations at `q = zeta_n` as a rewrite system.
pub struct RootRules {
    field: Arc<CyclotomicField>,
}

impl RootRules {
    pub fn new(field: &Arc<CyclotomicField>) -> Self {
        Self {
            field: Arc::clone(field),
        }
    }
}

impl RewriteSystem for RootRules {
    type Letter = FsGen;
    type Coeff = CycloNum;

    fn rewrite(&self, left: FsGen, right: FsGen) -> Option<Vec<(CycloNum, Vec<FsGen>)>> {
        use FsGen::*;
        if left <= right {
            return None;
        }
        let f = &self.field;
        Some(match (left, right) {
            (DTheta, Theta) => vec![(f.zeta(), vec![Theta, DTheta]), (f.one(), vec![])],
            (Dz, Z) => vec![(f.one(), vec![Z, Dz]), (f.one(), vec![])],
            (Eps, Theta) => vec![(f.zeta_pow(-1), vec![Theta, Eps])],
            (DTheta, Eps) => vec![(f.zeta_pow(-1), vec![Eps, DTheta])],
            // every other pair commutes
            _ => vec![(f.one(), vec![right, left])],
        })
    }

    fn vanishes(&self, ordered: &[FsGen]) -> bool {
        let n = self.field.order() as usize;
        [FsGen::Theta, FsGen::Eps, FsGen::DTheta]
            .iter()
            .any(|g| ordered.iter().filter(|x| *x == g).count() >= n)
    }
}

/// Normal form by explicit rule application; `D` letters are expanded into
/// their two summands first.
pub fn fs_normal_order_by_rewriting(
    field: &Arc<CyclotomicField>,
    word: &[FsLetter],
    strategy: Strategy,
) -> FsElem {
    let n = field.order();
    let top = field
        .qfact(n - 1)
        .inv()
        .expect("[n-1]! is nonzero at zeta_n");
    let mut expansions: Vec<(CycloNum, Vec<FsGen>)> = vec![(field.one(), Vec::new())];
    for letter in word {
        match letter {
            FsLetter::Gen(g) => expansions.iter_mut().for_each(|(_, w)| w.push(*g)),
            FsLetter::Scalar(c) => expansions.iter_mut().for_each(|(k, _)| *k = &*k * c),
            FsLetter::D => {
                let mut next = Vec::with_capacity(expansions.len() * 2);
                for (k, w) in expansions {
                    let mut a = w.clone();
                    a.push(FsGen::DTheta);
                    next.push((k.clone(), a));
                    let mut b = w;
                    b.extend(std::iter::repeat_n(FsGen::Theta, n as usize - 1));
                    b.push(FsGen::Dz);
                    next.push((&k * &top, b));
                }
                expansions = next;
            }
        }
    }
    let rules = RootRules::new(field);
    let mut out = FsElem::zero(field);
    for (k, w) in expansions {
        for (c, ordered) in rewrite_to_normal(&rules, k, w, strategy) {
            let mut m = FsMonomial::ONE;
            for g in ordered {
                *m.exponent_mut(g) += 1;
            }
            out.add_term(m, c);
        }
    }
    out
}

/// `[A, B] = A B - zeta^(-g(A) g(B)) B A`, bilinear over grade components.
pub fn fs_graded_bracket(a: &FsElem, b: &FsElem) -> FsElem {
    let field = a.field();
    let mut out = FsElem::zero(field);
    let bs = b.grade_components();
    for (ga, pa) in a.grade_components() {
        for (gb, pb) in &bs {
            let ab = &pa * pb;
            let ba = (pb * &pa).scale(&field.zeta_pow(-ga * gb));
            out = &out + &(&ab - &ba);
        }
    }
    out
}

pub fn fs_commutator(a: &FsElem, b: &FsElem) -> FsElem {
    &(a * b) - &(b * a)
}

/// `theta^(p) = theta^p / [p]!` for `p < n`; zero for `p >= n`.
pub fn fs_theta_bracket(field: &Arc<CyclotomicField>, p: u32) -> FsElem {
    divided_power(field, FsGen::Theta, p)
}

pub fn fs_eps_bracket(field: &Arc<CyclotomicField>, p: u32) -> FsElem {
    divided_power(field, FsGen::Eps, p)
}

fn divided_power(field: &Arc<CyclotomicField>, g: FsGen, p: u32) -> FsElem {
    if p >= field.order() {
        return FsElem::zero(field);
    }
    let inv = field.qfact(p).inv().expect("[p]! is nonzero for p < n");
    FsElem::term(field, inv, FsMonomial::of(g, p))
}

/// `D = dtheta + theta^(n-1) dz / [n-1]!`.
pub fn fs_d(field: &Arc<CyclotomicField>) -> FsElem {
    let n = field.order();
    let dtheta = FsElem::generator(field, FsGen::DTheta);
    let mut tail = fs_theta_bracket(field, n - 1);
    tail = &tail * &FsElem::generator(field, FsGen::Dz);
    &dtheta + &tail
}

pub fn fs_d_for(n: u32) -> Result<FsElem> {
    Ok(fs_d(&CyclotomicField::new(n)?))
}

/// `D^k` for `0 <= k <= 2n`, normal ordered.
pub fn fs_d_power(field: &Arc<CyclotomicField>, k: u32) -> Result<FsElem> {
    let n = field.order();
    if k > 2 * n {
        return Err(Error::OutOfRange(format!(
            "power of D must be at most 2n = {}, got {k}",
            2 * n
        )));
    }
    Ok(fs_d(field).pow(k))
}

/// Truncated translation generator
/// `sum_{r <= r_max} (zeps dz)^r / r! * sum_{p < n} eps^(p) D^p`.
pub fn g_l(field: &Arc<CyclotomicField>, r_max: u32) -> FsElem {
    let n = field.order();
    let d = fs_d(field);
    let mut inner = FsElem::zero(field);
    let mut d_power = FsElem::one(field);
    for p in 0..n {
        inner = &inner + &(&fs_eps_bracket(field, p) * &d_power);
        d_power = &d_power * &d;
    }
    let mut outer = FsElem::zero(field);
    let mut fact = BigInt::one();
    for r in 0..=r_max {
        if r > 0 {
            fact *= r;
        }
        let coeff = field.rational(BigRational::new(BigInt::one(), fact.clone()));
        let m = FsMonomial {
            zeps: r,
            dz: r,
            ..FsMonomial::ONE
        };
        outer.add_term(m, coeff);
    }
    &outer * &inner
}

/// `z + zeps + sum_{p=1}^{n-1} eps^(p) theta^(n-p)`.
pub fn transformed_z(field: &Arc<CyclotomicField>) -> FsElem {
    let n = field.order();
    let mut out = &FsElem::generator(field, FsGen::Z) + &FsElem::generator(field, FsGen::Zeps);
    for p in 1..n {
        out = &out + &(&fs_eps_bracket(field, p) * &fs_theta_bracket(field, n - p));
    }
    out
}

/// `G_L z - (z + zeps + sum eps^(p) theta^(n-p)) G_L` with `G_L` truncated
/// at `zeps^r_max`.
pub fn fsusy_transform_residual(field: &Arc<CyclotomicField>, r_max: u32) -> FsElem {
    let g = g_l(field, r_max);
    let z = FsElem::generator(field, FsGen::Z);
    &(&g * &z) - &(&transformed_z(field) * &g)
}

/// True when every term of the residual lies beyond the truncation order.
pub fn fsusy_transform_check(field: &Arc<CyclotomicField>, r_max: u32) -> bool {
    fsusy_transform_residual(field, r_max)
        .terms()
        .all(|(m, _)| m.zeps > r_max)
}

/// Pushes a function of `theta` and `eps` through the limit: `theta^a` with
/// `a = r n + p` becomes `([n]!)^r z^r theta^p` (since
/// `z = L theta^n / [n]!`), likewise `eps` with `zeps`, and the accumulated
/// coefficient is evaluated by [`limit_in`].
pub fn transfer_from_generic(x: &GradedElem, field: &Arc<CyclotomicField>) -> Result<FsElem> {
    if x.contains_d() {
        return Err(Error::ContainsDerivative);
    }
    let n = field.order();
    let nfact = qfact_poly(n);
    let mut out = FsElem::zero(field);
    for (m, c) in x.terms() {
        let (r, p) = (m.theta / n, m.theta % n);
        let (r2, p2) = (m.eps / n, m.eps % n);
        let ratio = UnreducedRatio::from(c).mul(&UnreducedRatio::from_poly(nfact.pow(r + r2)));
        let value = limit_in(field, &ratio)?.value;
        let mono = FsMonomial {
            z: r,
            zeps: r2,
            theta: p,
            eps: p2,
            ..FsMonomial::ONE
        };
        out.add_term(mono, value);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gencalc::{theta_bracket, Monomial};
    use crate::scalar::RatQ;
    use FsGen::*;

    fn field(n: u32) -> Arc<CyclotomicField> {
        CyclotomicField::new(n).unwrap()
    }

    fn word(gens: &[FsGen]) -> Vec<FsLetter> {
        gens.iter().map(|g| FsLetter::Gen(*g)).collect()
    }

    #[test]
    fn dtheta_theta_rule() {
        let f = field(3);
        let nf = fs_normal_order(&f, &word(&[DTheta, Theta]));
        let mut expected = FsElem::one(&f);
        expected.add_term(
            FsMonomial {
                theta: 1,
                dtheta: 1,
                ..FsMonomial::ONE
            },
            f.zeta(),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn theta_is_nilpotent() {
        for n in [3u32, 5] {
            let f = field(n);
            let th = FsElem::generator(&f, Theta);
            assert!((&th * &th.pow(n - 1)).is_zero());
            let w = vec![Theta; n as usize];
            assert!(fs_normal_order_by_rewriting(&f, &word(&w), Strategy::Leftmost).is_zero());
        }
    }

    #[test]
    fn dz_z_rule() {
        let f = field(5);
        let nf = fs_normal_order(&f, &word(&[Dz, Z]));
        let mut expected = FsElem::one(&f);
        expected.add_term(
            FsMonomial {
                z: 1,
                dz: 1,
                ..FsMonomial::ONE
            },
            f.one(),
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn d_commutator_with_z() {
        for n in [3u32, 5, 7] {
            let f = field(n);
            let lhs = fs_commutator(&fs_d(&f), &FsElem::generator(&f, Z));
            assert_eq!(lhs, fs_theta_bracket(&f, n - 1), "n = {n}");
            // z has grade zero so the graded bracket agrees
            assert_eq!(fs_graded_bracket(&fs_d(&f), &FsElem::generator(&f, Z)), lhs);
        }
    }

    #[test]
    fn d_for_n3_has_expected_coefficient() {
        let f = field(3);
        let d = fs_d(&f);
        let top = FsMonomial {
            theta: 2,
            dz: 1,
            ..FsMonomial::ONE
        };
        // 1 / [2]! with [2]! = 1 + zeta
        let two_fact = &f.one() + &f.zeta();
        assert_eq!(&d.coeff(&top) * &two_fact, f.one());
        assert_eq!(d.coeff(&FsMonomial::of(DTheta, 1)), f.one());
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn d_to_the_n_is_dz() {
        for n in [3u32, 5] {
            let f = field(n);
            assert_eq!(
                fs_d_power(&f, n).unwrap(),
                FsElem::generator(&f, Dz),
                "n = {n}"
            );
            assert_eq!(fs_d_power(&f, 1).unwrap(), fs_d(&f));
        }
        assert!(fs_d_power(&field(3), 7).is_err());
    }

    #[test]
    fn d_power_agrees_with_rewriting() {
        let f = field(3);
        let w = vec![FsLetter::D; 3];
        assert_eq!(
            fs_normal_order_by_rewriting(&f, &w, Strategy::Rightmost),
            FsElem::generator(&f, Dz)
        );
    }

    #[test]
    fn g_l_low_order_terms() {
        let f = field(3);
        let g = g_l(&f, 0);
        assert_eq!(g.coeff(&FsMonomial::ONE), f.one());
        // eps^(1) D contributes eps*dtheta with coefficient 1
        assert_eq!(
            g.coeff(&FsMonomial {
                eps: 1,
                dtheta: 1,
                ..FsMonomial::ONE
            }),
            f.one()
        );
    }

    #[test]
    fn g_l_zeps_squared_part() {
        let f = field(3);
        let g2 = g_l(&f, 2);
        let g0 = g_l(&f, 0);
        let half = f.rational(BigRational::new(1.into(), 2.into()));
        let mono = FsMonomial {
            zeps: 2,
            dz: 2,
            ..FsMonomial::ONE
        };
        let expected = &FsElem::term(&f, half, mono) * &g0;
        assert_eq!(g2.filter(|m| m.zeps == 2), expected);
    }

    #[test]
    fn transformation_of_z() {
        assert!(fsusy_transform_check(&field(3), 2));
        assert!(fsusy_transform_check(&field(5), 1));
    }

    #[test]
    fn transform_without_parameters_is_trivial() {
        // dropping every term carrying eps or zeps leaves z -> z
        let f = field(3);
        let z = transformed_z(&f).filter(|m| m.eps == 0 && m.zeps == 0);
        assert_eq!(z, FsElem::generator(&f, Z));
    }

    #[test]
    fn transfer_examples() {
        let f = field(3);
        assert_eq!(
            transfer_from_generic(&theta_bracket(3), &f).unwrap(),
            FsElem::generator(&f, Z)
        );
        let got = transfer_from_generic(&theta_bracket(7), &f).unwrap();
        let half = f.rational(BigRational::new(1.into(), 2.into()));
        let expected = FsElem::term(
            &f,
            half,
            FsMonomial {
                z: 2,
                theta: 1,
                ..FsMonomial::ONE
            },
        );
        assert_eq!(got, expected);
        assert_eq!(
            transfer_from_generic(&GradedElem::one(), &f).unwrap(),
            FsElem::one(&f)
        );
        assert_eq!(
            transfer_from_generic(&GradedElem::d(), &f),
            Err(Error::ContainsDerivative)
        );
    }

    #[test]
    fn transfer_of_eps_power() {
        let f = field(3);
        let e3 = crate::gencalc::eps_bracket(3);
        assert_eq!(
            transfer_from_generic(&e3, &f).unwrap(),
            FsElem::generator(&f, Zeps)
        );
    }

    #[test]
    fn transfer_propagates_poles() {
        let f = field(3);
        let x = GradedElem::term(
            RatQ::new(crate::scalar::QPoly::one(), crate::scalar::qnum_poly(3)).unwrap(),
            Monomial::ONE,
        );
        assert_eq!(
            transfer_from_generic(&x, &f),
            Err(Error::PoleAtRoot { n: 3 })
        );
    }

    #[test]
    fn renders_in_monomial_order() {
        let f = field(3);
        let x = &FsElem::generator(&f, Dz) + &FsElem::generator(&f, Z);
        assert_eq!(x.to_string(), "dz + z");
    }
}
