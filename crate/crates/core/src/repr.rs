//! Ket representations.
//!
//! At generic `q` the basis `|m>` carries `D|m> = |m-1>` and
//! `theta|m> = [m+1]_q |m+1>`. Passing to `q = zeta_n` the same space splits
//! as `|rn+p> = |r, p>`, an oscillator for `z`, `dz` times an
//! `n`-dimensional graded factor. The `q^(1/2)`-deformed oscillator
//! `a = q^(-N/2) D`, `a^+ = theta` is checked exactly, and its hermitian
//! form (square roots of symmetric q-numbers) numerically.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gencalc::GradedElem;
use crate::limits::{render_value, AtRoot, Specialization};
use crate::scalar::{q_half, qbinomial_poly, qnum_poly, CycloNum, CyclotomicField, Field, RatQ};

/// A finitely supported combination of basis kets `|m>`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket<S> {
    amps: BTreeMap<u32, S>,
}

impl<S: Field> Ket<S> {
    pub fn zero() -> Self {
        Self {
            amps: BTreeMap::new(),
        }
    }

    pub fn basis(m: u32, one: S) -> Self {
        let mut k = Self::zero();
        k.add_term(m, one);
        k
    }

    pub fn add_term(&mut self, m: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.amps.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.is_zero() {
                    self.amps.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.amps.insert(m, c);
            }
        }
    }

    pub fn get(&self, m: u32) -> Option<&S> {
        self.amps.get(&m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &S)> {
        self.amps.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.amps {
            out.add_term(*m, v.mul_ref(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.amps {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.amps {
            out.add_term(*m, c.neg_ref());
        }
        out
    }

    /// Relabels every amplitude by `f(m, c)`; `None` drops the term.
    fn map_basis(&self, f: impl Fn(u32, &S) -> Result<Option<(u32, S)>>) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.amps {
            if let Some((m2, c2)) = f(*m, c)? {
                out.add_term(m2, c2);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KetOp {
    D,
    Theta,
    /// `q^N`, diagonal.
    QN,
    /// The divided power `theta^(k)`.
    ThetaBracket(u32),
}

pub fn act<Sp: Specialization>(
    op: KetOp,
    ket: &Ket<Sp::Scalar>,
    sp: &Sp,
) -> Result<Ket<Sp::Scalar>> {
    match op {
        KetOp::D => ket.map_basis(|m, c| Ok((m > 0).then(|| (m - 1, c.clone())))),
        KetOp::Theta => ket.map_basis(|m, c| {
            let k = sp.specialize(&RatQ::from(qnum_poly(m + 1)))?;
            Ok(Some((m + 1, c.mul_ref(&k))))
        }),
        KetOp::QN => ket.map_basis(|m, c| {
            let k = sp.specialize(&RatQ::q_pow(m as i64))?;
            Ok(Some((m, c.mul_ref(&k))))
        }),
        KetOp::ThetaBracket(k) => ket.map_basis(|m, c| {
            let coeff = sp.specialize(&RatQ::from(qbinomial_poly(m + k, k)))?;
            Ok(Some((m + k, c.mul_ref(&coeff))))
        }),
    }
}

pub fn act_power<Sp: Specialization>(
    op: KetOp,
    times: u32,
    ket: &Ket<Sp::Scalar>,
    sp: &Sp,
) -> Result<Ket<Sp::Scalar>> {
    (0..times).try_fold(ket.clone(), |k, _| act(op, &k, sp))
}

/// `dtheta = D - theta^(n-1) D^n` at `q = zeta_n`, where `D^n` plays `dz`.
pub fn act_dtheta(ket: &Ket<CycloNum>, at: &AtRoot) -> Result<Ket<CycloNum>> {
    let n = at.field().order();
    let d = act(KetOp::D, ket, at)?;
    let dn = act_power(KetOp::D, n, ket, at)?;
    let tail = act(KetOp::ThetaBracket(n - 1), &dn, at)?;
    Ok(d.sub(&tail))
}

/// Action of `theta^a D^b` combinations on kets at generic `q`.
pub fn act_elem(x: &GradedElem, ket: &Ket<RatQ>) -> Result<Ket<RatQ>> {
    if x.contains_eps() {
        return Err(Error::ContainsEps);
    }
    let sp = crate::limits::GenericQ;
    let mut out = Ket::zero();
    for (mono, c) in x.terms() {
        let lowered = act_power(KetOp::D, mono.d, ket, &sp)?;
        let raised = act_power(KetOp::Theta, mono.theta, &lowered, &sp)?;
        out = out.add(&raised.scale(c));
    }
    Ok(out)
}

/// Kets of `V_HO (x) V^n`, labelled by `(r, p)` with `p < n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductKet {
    n: u32,
    amps: BTreeMap<(u32, u32), CycloNum>,
}

impl ProductKet {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            amps: BTreeMap::new(),
        }
    }

    pub fn basis(field: &Arc<CyclotomicField>, r: u32, p: u32) -> Result<Self> {
        let n = field.order();
        if p >= n {
            return Err(Error::OutOfRange(format!(
                "graded label {p} must be below n = {n}"
            )));
        }
        let mut k = Self::zero(n);
        k.add_term(r, p, field.one());
        Ok(k)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn add_term(&mut self, r: u32, p: u32, c: CycloNum) {
        assert!(p < self.n, "graded label out of range");
        if c.is_zero() {
            return;
        }
        match self.amps.get_mut(&(r, p)) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.amps.remove(&(r, p));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.amps.insert((r, p), c);
            }
        }
    }

    pub fn get(&self, r: u32, p: u32) -> Option<&CycloNum> {
        self.amps.get(&(r, p))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &CycloNum)> {
        self.amps.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }
}

/// `|m> -> |m div n, m mod n>`.
pub fn reduce_ket(ket: &Ket<CycloNum>, n: u32) -> Result<ProductKet> {
    CyclotomicField::new(n)?;
    let mut out = ProductKet::zero(n);
    for (m, c) in ket.iter() {
        if c.order() != n {
            return Err(Error::OutOfRange(format!(
                "amplitude lives in Q(zeta_{}), expected Q(zeta_{n})",
                c.order()
            )));
        }
        out.add_term(m / n, m % n, c.clone());
    }
    Ok(out)
}

pub fn expand_ket(ket: &ProductKet) -> Ket<CycloNum> {
    let mut out = Ket::zero();
    for ((r, p), c) in ket.iter() {
        out.add_term(r * ket.n + p, c.clone());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOp {
    Z,
    Dz,
    Theta,
    DTheta,
    D,
}

/// `z|r> = (r+1)|r+1>`, `dz|r> = |r-1>` on the first factor; `theta`,
/// `dtheta` on the graded factor; `D = 1 (x) dtheta + dz (x) theta^(n-1)`.
pub fn act_product(op: ProductOp, ket: &ProductKet, field: &Arc<CyclotomicField>) -> ProductKet {
    let n = ket.n;
    assert_eq!(n, field.order(), "ket and field disagree on n");
    let mut out = ProductKet::zero(n);
    for ((r, p), c) in ket.iter() {
        match op {
            ProductOp::Z => out.add_term(r + 1, p, c * &field.int(r as i64 + 1)),
            ProductOp::Dz => {
                if r > 0 {
                    out.add_term(r - 1, p, c.clone());
                }
            }
            ProductOp::Theta => {
                if p + 1 < n {
                    out.add_term(r, p + 1, c * &field.qnum(p + 1));
                }
            }
            ProductOp::DTheta => {
                if p > 0 {
                    out.add_term(r, p - 1, c.clone());
                }
            }
            ProductOp::D => {
                if p > 0 {
                    out.add_term(r, p - 1, c.clone());
                }
                // theta^(n-1)|p> survives only for p = 0, with coefficient 1
                if r > 0 && p == 0 {
                    out.add_term(r - 1, n - 1, c * &field.qbinomial(n - 1, n - 1));
                }
            }
        }
    }
    out
}

/// `sin(p pi / n) / sin(pi / n)`, the symmetric q-number at `q = e^(2 pi i/n)`.
pub fn symmetric_qnum(p: u32, n: u32) -> f64 {
    let x = (p as f64 * PI / n as f64).sin() / (PI / n as f64).sin();
    // exact zeros at multiples of n instead of 1e-16 noise
    if p.is_multiple_of(n) {
        0.0
    } else {
        x
    }
}

fn check_odd(n: u32) -> Result<()> {
    CyclotomicField::new(n).map(|_| ())
}

/// Hermitian annihilator: `a|p> = sqrt([p]) |p-1>` on `n` states.
pub fn oscillator_a(n: u32) -> Result<DMatrix<Complex64>> {
    check_odd(n)?;
    let size = n as usize;
    let mut a = DMatrix::zeros(size, size);
    for p in 1..size {
        a[(p - 1, p)] = Complex64::new(symmetric_qnum(p as u32, n).sqrt(), 0.0);
    }
    Ok(a)
}

/// Creator built directly: `a^+|p> = sqrt([p+1]) |p+1>`.
pub fn oscillator_adag(n: u32) -> Result<DMatrix<Complex64>> {
    check_odd(n)?;
    let size = n as usize;
    let mut a = DMatrix::zeros(size, size);
    for p in 0..size - 1 {
        a[(p + 1, p)] = Complex64::new(symmetric_qnum(p as u32 + 1, n).sqrt(), 0.0);
    }
    Ok(a)
}

pub fn number_operator(n: u32) -> DMatrix<Complex64> {
    let size = n as usize;
    DMatrix::from_fn(size, size, |i, j| {
        if i == j {
            Complex64::new(i as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Which of the two relations `a a^+ - q^(-+1/2) a^+ a = q^(+-N/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefcrSign {
    /// `a a^+ - q^(-1/2) a^+ a = q^(N/2)`
    Upper,
    /// `a a^+ - q^(1/2) a^+ a = q^(-N/2)`
    Lower,
}

impl DefcrSign {
    pub const BOTH: [DefcrSign; 2] = [DefcrSign::Upper, DefcrSign::Lower];

    /// `+1` for the upper relation.
    fn sigma(self) -> i64 {
        match self {
            DefcrSign::Upper => 1,
            DefcrSign::Lower => -1,
        }
    }
}

/// Frobenius norm of `a a^+ - Q^(-+1) a^+ a - Q^(+-N)` with
/// `Q = e^(i pi / n)`.
pub fn defcr_numeric_residual(n: u32, sign: DefcrSign) -> Result<f64> {
    let a = oscillator_a(n)?;
    let adag = oscillator_adag(n)?;
    let s = sign.sigma() as f64;
    let half = Complex64::from_polar(1.0, PI / n as f64);
    let qn = DMatrix::from_fn(n as usize, n as usize, |i, j| {
        if i == j {
            half.powf(s * i as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let lhs = &a * &adag - (&adag * &a) * half.powf(-s);
    Ok((lhs - qn).norm())
}

/// Distance between `a^+` and the conjugate transpose of `a`.
pub fn adjoint_residual(n: u32) -> Result<f64> {
    Ok((oscillator_a(n)?.adjoint() - oscillator_adag(n)?).norm())
}

/// The graded factor at `q = zeta_n` in oscillator variables:
/// `a_B = q^(-N/2) dtheta` and `a_B^+ = theta`, with `q^(1/2) = e^(i pi/n)`.
pub fn bargmann_oscillator(n: u32) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    check_odd(n)?;
    let size = n as usize;
    let half = Complex64::from_polar(1.0, PI / n as f64);
    let mut a = DMatrix::zeros(size, size);
    let mut adag = DMatrix::zeros(size, size);
    for p in 1..size {
        a[(p - 1, p)] = half.powf(-(p as f64 - 1.0));
    }
    for p in 0..size - 1 {
        // [p+1]_q = Q^p [p+1]_sym
        adag[(p + 1, p)] = half.powf(p as f64) * symmetric_qnum(p as u32 + 1, n);
    }
    Ok((a, adag))
}

/// Diagonal `S` with `S a_B S^-1 = a` and `S a_B^+ S^-1 = a^+`. Its entries
/// carry phases, so it is not a positive matrix.
pub fn similarity_intertwiner(n: u32) -> Result<DVector<Complex64>> {
    check_odd(n)?;
    let half = Complex64::from_polar(1.0, PI / n as f64);
    let mut s = Vec::with_capacity(n as usize);
    s.push(Complex64::new(1.0, 0.0));
    for p in 1..n {
        let prev = s[p as usize - 1];
        s.push(prev / (half.powf(p as f64 - 1.0) * symmetric_qnum(p, n).sqrt()));
    }
    Ok(DVector::from_vec(s))
}

/// Larger of the two conjugation residuals.
pub fn intertwiner_residual(n: u32) -> Result<f64> {
    let s = similarity_intertwiner(n)?;
    let sm = DMatrix::from_diagonal(&s);
    let sinv = DMatrix::from_diagonal(&s.map(|x| x.inv()));
    let (ab, abdag) = bargmann_oscillator(n)?;
    let r1 = (&sm * ab * &sinv - oscillator_a(n)?).norm();
    let r2 = (&sm * abdag * &sinv - oscillator_adag(n)?).norm();
    Ok(r1.max(r2))
}

/// One exact check of the deformed relation on `|m>`.
#[derive(Clone, Debug, Serialize)]
pub struct DefcrRecord {
    pub sign: DefcrSign,
    pub m: u32,
    pub pass: bool,
}

/// Exact check on kets `|m>`, `m < cutoff`, given a square root `s` of `q`
/// and the q-numbers `[m]_q` in the same field.
fn defcr_on_kets<S: Field>(
    s: &S,
    qnum: impl Fn(u32) -> S,
    cutoff: u32,
) -> Result<Vec<DefcrRecord>> {
    let sinv = s.try_inv().ok_or(Error::DivisionByZero)?;
    let spow = |e: i64| -> S {
        let base = if e >= 0 { s } else { &sinv };
        (0..e.unsigned_abs()).fold(s.one_like(), |acc, _| acc.mul_ref(base))
    };
    // a|m> = s^(1-m) |m-1>, a^+|m> = [m+1]|m+1>
    let a = |k: &Ket<S>| -> Ket<S> {
        let mut out = Ket::zero();
        for (m, c) in k.iter() {
            if m > 0 {
                out.add_term(m - 1, c.mul_ref(&spow(1 - m as i64)));
            }
        }
        out
    };
    let adag = |k: &Ket<S>| -> Ket<S> {
        let mut out = Ket::zero();
        for (m, c) in k.iter() {
            out.add_term(m + 1, c.mul_ref(&qnum(m + 1)));
        }
        out
    };
    let mut records = Vec::new();
    for m in 0..cutoff {
        let ket = Ket::basis(m, s.one_like());
        let aad = a(&adag(&ket));
        let ada = adag(&a(&ket));
        for sign in DefcrSign::BOTH {
            let sg = sign.sigma();
            let lhs = aad.sub(&ada.scale(&spow(-sg)));
            let rhs = ket.scale(&spow(sg * m as i64));
            records.push(DefcrRecord {
                sign,
                m,
                pass: lhs == rhs,
            });
        }
    }
    Ok(records)
}

/// Exact check at generic `q`, in the variable `s = q^(1/2)`.
pub fn defcr_exact_generic(cutoff: u32) -> Result<Vec<DefcrRecord>> {
    defcr_on_kets(
        &RatQ::q(),
        |m| RatQ::from(qnum_poly(m).compose_power(2)),
        cutoff,
    )
}

/// Exact check at `q = zeta_n` with `q^(1/2) = zeta_n^((n+1)/2)`.
pub fn defcr_exact_at_root(n: u32, cutoff: u32) -> Result<Vec<DefcrRecord>> {
    let field = CyclotomicField::new(n)?;
    let s = q_half(n as i64)?;
    defcr_on_kets(&s, |m| field.qnum(m), cutoff)
}

/// Matrix entries for export.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum MatrixEntries {
    Numeric(Vec<Vec<[f64; 2]>>),
    Exact(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixExport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    pub operator: String,
    pub entries: MatrixEntries,
}

impl MatrixExport {
    pub fn numeric(n: u32, operator: &str, m: &DMatrix<Complex64>) -> Self {
        let entries = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| [m[(i, j)].re, m[(i, j)].im])
                    .collect()
            })
            .collect();
        Self {
            n: Some(n),
            cutoff: None,
            operator: operator.to_string(),
            entries: MatrixEntries::Numeric(entries),
        }
    }

    pub fn exact(n: Option<u32>, cutoff: u32, operator: &str, rows: Vec<Vec<String>>) -> Self {
        Self {
            n,
            cutoff: Some(cutoff),
            operator: operator.to_string(),
            entries: MatrixEntries::Exact(rows),
        }
    }
}

/// `<i| op |j>` for `i, j < cutoff`, rendered with `render`.
pub fn ket_matrix<Sp: Specialization>(
    op: KetOp,
    sp: &Sp,
    cutoff: u32,
    render: impl Fn(&Sp::Scalar) -> String,
) -> Result<Vec<Vec<String>>> {
    let mut rows = vec![vec!["0".to_string(); cutoff as usize]; cutoff as usize];
    for j in 0..cutoff {
        let image = act(op, &Ket::basis(j, sp.one()), sp)?;
        for (i, c) in image.iter() {
            if i < cutoff {
                rows[i as usize][j as usize] = render(c);
            }
        }
    }
    Ok(rows)
}

/// Exact matrix of the deformed-oscillator operators at `q = zeta_n` on the
/// first `cutoff` kets.
pub fn oscillator_exact_matrix(n: u32, adjoint: bool, cutoff: u32) -> Result<Vec<Vec<String>>> {
    let field = CyclotomicField::new(n)?;
    let s = q_half(n as i64)?;
    let mut rows = vec![vec!["0".to_string(); cutoff as usize]; cutoff as usize];
    for j in 0..cutoff {
        if adjoint {
            if j + 1 < cutoff {
                rows[j as usize + 1][j as usize] = render_value(&field.qnum(j + 1));
            }
        } else if j > 0 {
            let c = s.pow(1 - j as i64).expect("q^(1/2) is a unit");
            rows[j as usize - 1][j as usize] = render_value(&c);
        }
    }
    Ok(rows)
}

/// Representation identities on `|m>`, `m <= m_max`, at generic `q`.
pub mod identities {
    use super::*;
    use crate::limits::GenericQ;
    use crate::scalar::qfact;

    fn basis(m: u32) -> Ket<RatQ> {
        Ket::basis(m, RatQ::one())
    }

    /// `D theta - q theta D = 1`.
    pub fn commutation(m_max: u32) -> Result<bool> {
        let sp = GenericQ;
        for m in 0..=m_max {
            let k = basis(m);
            let dt = act(KetOp::D, &act(KetOp::Theta, &k, &sp)?, &sp)?;
            let td = act(KetOp::Theta, &act(KetOp::D, &k, &sp)?, &sp)?;
            if dt.sub(&td.scale(&RatQ::q())) != k {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `D theta - theta D = q^N`.
    pub fn number_operator(m_max: u32) -> Result<bool> {
        let sp = GenericQ;
        for m in 0..=m_max {
            let k = basis(m);
            let dt = act(KetOp::D, &act(KetOp::Theta, &k, &sp)?, &sp)?;
            let td = act(KetOp::Theta, &act(KetOp::D, &k, &sp)?, &sp)?;
            if dt.sub(&td) != act(KetOp::QN, &k, &sp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `theta D = [N]` and `theta^k D^k |r> = [r]!/[r-k]! |r>`.
    pub fn falling_factorials(r_max: u32) -> Result<bool> {
        let sp = GenericQ;
        for r in 0..=r_max {
            let k = basis(r);
            for m in 0..=r {
                let lowered = act_power(KetOp::D, m, &k, &sp)?;
                let got = act_power(KetOp::Theta, m, &lowered, &sp)?;
                let ratio = &qfact(r as i64)? / &qfact((r - m) as i64)?;
                if got != k.scale(&ratio) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `theta^(k)|m> = [m+k]!/([m]! [k]!) |m+k>` against `k` single steps
    /// divided by `[k]!`.
    pub fn divided_powers(m_max: u32, k_max: u32) -> Result<bool> {
        let sp = GenericQ;
        for m in 0..=m_max {
            for k in 0..=k_max {
                let got = act(KetOp::ThetaBracket(k), &basis(m), &sp)?;
                let stepped = act_power(KetOp::Theta, k, &basis(m), &sp)?;
                let inv = qfact(k as i64)?.inv().expect("[k]! is nonzero");
                let closed = &qfact((m + k) as i64)? / &(&qfact(m as i64)? * &qfact(k as i64)?);
                if got != stepped.scale(&inv) || got != Ket::basis(m + k, closed) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gencalc::{normal_order, Generator, Letter};
    use crate::limits::GenericQ;
    use crate::scalar::{qfact, qnum};

    fn basis(m: u32) -> Ket<RatQ> {
        Ket::basis(m, RatQ::one())
    }

    #[test]
    fn basic_actions() {
        let sp = GenericQ;
        assert!(act(KetOp::D, &basis(0), &sp).unwrap().is_zero());
        let t = act(KetOp::Theta, &basis(2), &sp).unwrap();
        assert_eq!(t, Ket::basis(3, qnum(3).unwrap()));
        let qn = act(KetOp::QN, &basis(4), &sp).unwrap();
        assert_eq!(qn, Ket::basis(4, RatQ::q_pow(4)));
    }

    #[test]
    fn divided_power_coefficient() {
        let got = act(KetOp::ThetaBracket(3), &basis(2), &GenericQ).unwrap();
        let expected = &qfact(5).unwrap() / &(&qfact(2).unwrap() * &qfact(3).unwrap());
        assert_eq!(got, Ket::basis(5, expected));
    }

    #[test]
    fn identities_hold() {
        assert!(identities::commutation(30).unwrap());
        assert!(identities::number_operator(30).unwrap());
        assert!(identities::falling_factorials(12).unwrap());
        assert!(identities::divided_powers(10, 7).unwrap());
    }

    #[test]
    fn ket_action_of_normal_form_matches_word() {
        // D D theta applied letter by letter against its normal form
        let nf = normal_order(&[
            Letter::Gen(Generator::D),
            Letter::Gen(Generator::D),
            Letter::Gen(Generator::Theta),
        ]);
        let sp = GenericQ;
        for m in 0..10 {
            let k = basis(m);
            let direct = act(
                KetOp::D,
                &act(KetOp::D, &act(KetOp::Theta, &k, &sp).unwrap(), &sp).unwrap(),
                &sp,
            )
            .unwrap();
            assert_eq!(act_elem(&nf, &k).unwrap(), direct, "m = {m}");
        }
    }

    #[test]
    fn eps_has_no_ket_action() {
        assert_eq!(
            act_elem(&GradedElem::eps(), &basis(0)),
            Err(Error::ContainsEps)
        );
    }

    #[test]
    fn reduce_examples() {
        let f = CyclotomicField::new(3).unwrap();
        let k = Ket::basis(7, f.one());
        let pk = reduce_ket(&k, 3).unwrap();
        assert_eq!(pk, ProductKet::basis(&f, 2, 1).unwrap());
        assert_eq!(
            reduce_ket(&Ket::basis(0, f.one()), 3).unwrap(),
            ProductKet::basis(&f, 0, 0).unwrap()
        );
        for r in 0..=5 {
            for p in 0..3 {
                let b = ProductKet::basis(&f, r, p).unwrap();
                assert_eq!(reduce_ket(&expand_ket(&b), 3).unwrap(), b);
            }
        }
    }

    #[test]
    fn product_actions() {
        let f = CyclotomicField::new(3).unwrap();
        let z = act_product(ProductOp::Z, &ProductKet::basis(&f, 2, 1).unwrap(), &f);
        let mut expected = ProductKet::zero(3);
        expected.add_term(3, 1, f.int(3));
        assert_eq!(z, expected);
        assert!(act_product(ProductOp::Dz, &ProductKet::basis(&f, 0, 2).unwrap(), &f).is_zero());
        assert!(act_product(ProductOp::Theta, &ProductKet::basis(&f, 1, 2).unwrap(), &f).is_zero());
        let d = act_product(ProductOp::D, &ProductKet::basis(&f, 2, 0).unwrap(), &f);
        assert_eq!(d, ProductKet::basis(&f, 1, 2).unwrap());
    }

    #[test]
    fn intertwining_at_roots() {
        for n in [3u32, 5] {
            let at = AtRoot::new(n).unwrap();
            let f = at.field().clone();
            for m in 0..=3 * n {
                let k = Ket::basis(m, f.one());
                let pk = reduce_ket(&k, n).unwrap();
                let pairs = [
                    (act(KetOp::Theta, &k, &at).unwrap(), ProductOp::Theta),
                    (act(KetOp::D, &k, &at).unwrap(), ProductOp::D),
                    (act_dtheta(&k, &at).unwrap(), ProductOp::DTheta),
                ];
                for (image, op) in pairs {
                    assert_eq!(
                        reduce_ket(&image, n).unwrap(),
                        act_product(op, &pk, &f),
                        "n={n} m={m} {op:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn numeric_oscillator_entries() {
        let a3 = oscillator_a(3).unwrap();
        assert!((a3[(0, 1)].re - 1.0).abs() < 1e-14);
        assert!((a3[(1, 2)].re - 1.0).abs() < 1e-14);
        let a5 = oscillator_a(5).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((a5[(1, 2)].re.powi(2) - golden).abs() < 1e-12);
        assert!(oscillator_a(4).is_err());
    }

    #[test]
    fn numeric_relations() {
        for n in (3..=13).step_by(2) {
            for sign in DefcrSign::BOTH {
                assert!(defcr_numeric_residual(n, sign).unwrap() < 1e-12, "n = {n}");
            }
            assert!(adjoint_residual(n).unwrap() < 1e-12);
            assert!(intertwiner_residual(n).unwrap() < 1e-10, "n = {n}");
            for p in 1..n {
                assert!(symmetric_qnum(p, n) > 0.0);
            }
        }
    }

    #[test]
    fn exact_relations() {
        assert!(defcr_exact_generic(10).unwrap().iter().all(|r| r.pass));
        for n in [3u32, 5, 7] {
            assert!(defcr_exact_at_root(n, 2 * n + 1)
                .unwrap()
                .iter()
                .all(|r| r.pass));
        }
    }

    #[test]
    fn wrong_square_root_fails() {
        // q itself in place of q^(1/2) must break the relation
        let records = defcr_on_kets(&RatQ::q(), |m| qnum(m as i64).unwrap(), 4).unwrap();
        assert!(records.iter().any(|r| !r.pass));
    }

    #[test]
    fn export_shapes() {
        let m = MatrixExport::numeric(3, "a", &oscillator_a(3).unwrap());
        let json = serde_json::to_value(&m).unwrap();
        assert_eq!(json["entries"].as_array().unwrap().len(), 3);
        assert_eq!(json["n"], 3);
        let exact = ket_matrix(KetOp::Theta, &GenericQ, 3, |c| c.to_string()).unwrap();
        assert_eq!(exact[1][0], "1");
        assert_eq!(exact[2][1], "q + 1");
        let osc = oscillator_exact_matrix(3, true, 3).unwrap();
        assert_eq!(
            osc[2][1],
            render_value(&CyclotomicField::new(3).unwrap().qnum(2))
        );
    }
}
