//! The acceptance checks, one function per criterion.
//!
//! Every check is deterministic given its seed and reports an
//! [`Outcome`]. The same functions back the `acceptance` test target and the
//! command-line `verify` suites.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fsusy::{
    fs_commutator, fs_d, fs_d_power, fs_normal_order, fs_normal_order_by_rewriting,
    fs_theta_bracket, fsusy_transform_check, FsElem, FsGen, FsLetter, FsMonomial,
};
use crate::gencalc::{
    bracket_with, gamma, identity_eq15, normal_order, normal_order_by_rewriting, translate_check,
    Generator, GradedElem, Letter, Monomial,
};
use crate::limits::{lemma_suite, qexp_factorization_check, AtRoot};
use crate::repr::{
    act, act_dtheta, act_product, adjoint_residual, defcr_exact_at_root, defcr_exact_generic,
    defcr_numeric_residual, identities, intertwiner_residual, reduce_ket, DefcrSign, Ket, KetOp,
    ProductOp,
};
use crate::rewrite::Strategy;
use crate::scalar::{CyclotomicField, Field, RatQ};
use crate::Result;

pub const DEFAULT_SEED: u64 = 0x5ee_d0f9_ca1c;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: f64,
    pub budget_ms: u64,
}

impl Outcome {
    pub fn within_budget(&self) -> bool {
        self.elapsed_ms <= self.budget_ms as f64
    }

    /// `PASS [ 4] confluence  (812.3 ms / 30000 ms)  detail`
    pub fn line(&self) -> String {
        let status = if self.pass && self.within_budget() {
            "PASS"
        } else {
            "FAIL"
        };
        format!(
            "{status} [{:>2}] {:<12} ({:.1} ms / {} ms)  {}",
            self.id, self.name, self.elapsed_ms, self.budget_ms, self.detail
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub budget: Duration,
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion {
        id: 1,
        name: "eq15",
        budget: Duration::from_secs(5),
    },
    Criterion {
        id: 2,
        name: "lemmas",
        budget: Duration::from_secs(5),
    },
    Criterion {
        id: 3,
        name: "qexp",
        budget: Duration::from_secs(10),
    },
    Criterion {
        id: 4,
        name: "confluence",
        budget: Duration::from_secs(30),
    },
    Criterion {
        id: 5,
        name: "leibniz",
        budget: Duration::from_secs(30),
    },
    Criterion {
        id: 6,
        name: "structure",
        budget: Duration::from_secs(10),
    },
    Criterion {
        id: 7,
        name: "transform",
        budget: Duration::from_secs(30),
    },
    Criterion {
        id: 8,
        name: "repr",
        budget: Duration::from_secs(10),
    },
    Criterion {
        id: 9,
        name: "product",
        budget: Duration::from_secs(10),
    },
    Criterion {
        id: 10,
        name: "defcr",
        budget: Duration::from_secs(5),
    },
    Criterion {
        id: 11,
        name: "translate",
        budget: Duration::from_secs(10),
    },
];

pub fn criterion(name: &str) -> Option<Criterion> {
    CRITERIA.iter().copied().find(|c| c.name == name)
}

/// Runs one criterion at its stated parameters and times it. Errors count
/// as failures.
pub fn run(c: Criterion, seed: u64) -> Outcome {
    run_with(c, seed, None)
}

/// Like [`run`], with the truncation order overridden where one applies:
/// the largest `r` for `eq15` and `lemmas`, the `zeps` order for
/// `transform` and the `eps` order for `translate`.
pub fn run_with(c: Criterion, seed: u64, rmax: Option<u32>) -> Outcome {
    let start = Instant::now();
    let result = match c.id {
        1 => eq15(rmax.unwrap_or(12)),
        2 => lemmas(rmax.unwrap_or(4)),
        3 => qexp(),
        4 => confluence(seed),
        5 => leibniz(seed),
        6 => structure(),
        7 => transform(rmax.unwrap_or(2)),
        8 => representations(),
        9 => product(),
        10 => defcr(),
        11 => translate(rmax.unwrap_or(3)),
        _ => unreachable!("criterion ids are 1..=11"),
    };
    let elapsed = start.elapsed();
    let (pass, detail) = match result {
        Ok(check) => (check.pass, check.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    Outcome {
        id: c.id,
        name: c.name,
        pass,
        detail,
        elapsed_ms: elapsed.as_secs_f64() * 1e3,
        budget_ms: c.budget.as_millis() as u64,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run(*c, seed)).collect()
}

struct Check {
    pass: bool,
    detail: String,
}

impl Check {
    fn new(failures: Vec<String>, total: usize, what: &str) -> Self {
        if failures.is_empty() {
            Check {
                pass: true,
                detail: format!("{total} {what} ok"),
            }
        } else {
            let shown: Vec<_> = failures.iter().take(3).cloned().collect();
            Check {
                pass: false,
                detail: format!(
                    "{}/{total} {what} failed: {}",
                    failures.len(),
                    shown.join("; ")
                ),
            }
        }
    }
}

fn eq15(r_max: u32) -> Result<Check> {
    let failures = (1..=r_max)
        .filter(|r| !identity_eq15(*r))
        .map(|r| format!("r={r}"))
        .collect();
    Ok(Check::new(failures, r_max as usize, "values of r"))
}

fn lemmas(r_max: u32) -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in [3u32, 5, 7] {
        let report = lemma_suite(n, r_max)?;
        total += report.records.len();
        for rec in report.records.iter().filter(|r| !r.pass) {
            failures.push(format!(
                "{} n={} r={}: got {} want {}",
                rec.name, rec.n, rec.r, rec.got, rec.expected
            ));
        }
    }
    Ok(Check::new(failures, total, "lemma records"))
}

fn qexp() -> Result<Check> {
    let cases = [(1i64, 3u32, 2u32), (2, 3, 2), (1, 5, 1), (3, 5, 1)];
    let mut failures = Vec::new();
    for (c, n, r) in cases {
        if !qexp_factorization_check(&BigRational::from_integer(c.into()), n, r)? {
            failures.push(format!("C={c} n={n} r_max={r}"));
        }
    }
    Ok(Check::new(failures, cases.len(), "factorizations"))
}

/// A small random element of `Q(q)`: `a q^k + b` with small integers.
pub fn random_scalar(rng: &mut impl Rng) -> RatQ {
    let a = rng.random_range(-3i64..=3);
    let b = rng.random_range(-3i64..=3);
    let k = rng.random_range(-2i64..=2);
    let x = &(&RatQ::from_int(a) * &RatQ::q_pow(k)) + &RatQ::from_int(b);
    if x.is_zero() {
        RatQ::one()
    } else {
        x
    }
}

pub fn random_generic_word(rng: &mut impl Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| match rng.random_range(0..7) {
            0 | 1 => Letter::Gen(Generator::Theta),
            2 => Letter::Gen(Generator::Eps),
            3..=5 => Letter::Gen(Generator::D),
            _ => Letter::Scalar(random_scalar(rng)),
        })
        .collect()
}

pub fn random_fs_word(
    rng: &mut impl Rng,
    field: &std::sync::Arc<CyclotomicField>,
    max_len: usize,
) -> Vec<FsLetter> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| match rng.random_range(0..9) {
            0 => FsLetter::Gen(FsGen::Z),
            1 => FsLetter::Gen(FsGen::Zeps),
            2 | 3 => FsLetter::Gen(FsGen::Theta),
            4 => FsLetter::Gen(FsGen::Eps),
            5 => FsLetter::Gen(FsGen::DTheta),
            6 => FsLetter::Gen(FsGen::Dz),
            7 => FsLetter::D,
            _ => FsLetter::Scalar(field.zeta_pow(rng.random_range(0..field.order() as i64))),
        })
        .collect()
}

fn generic_product_split(word: &[Letter], at: usize) -> GradedElem {
    &normal_order(&word[..at]) * &normal_order(&word[at..])
}

fn confluence(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..500 {
        let w = random_generic_word(&mut rng, 8);
        let fast = normal_order(&w);
        let left = normal_order_by_rewriting(&w, Strategy::Leftmost);
        let right = normal_order_by_rewriting(&w, Strategy::Rightmost);
        let split = generic_product_split(&w, rng.random_range(0..=w.len()));
        if fast != left || fast != right || fast != split {
            failures.push(format!("generic word #{i}"));
        }
    }
    let fields = [CyclotomicField::new(3)?, CyclotomicField::new(5)?];
    for i in 0..300 {
        let field = &fields[i % 2];
        let w = random_fs_word(&mut rng, field, 8);
        let fast = fs_normal_order(field, &w);
        let left = fs_normal_order_by_rewriting(field, &w, Strategy::Leftmost);
        let right = fs_normal_order_by_rewriting(field, &w, Strategy::Rightmost);
        let at = rng.random_range(0..=w.len());
        let split = &fs_normal_order(field, &w[..at]) * &fs_normal_order(field, &w[at..]);
        if fast != left || fast != right || fast != split {
            failures.push(format!("root word #{i} (n={})", field.order()));
        }
    }
    Ok(Check::new(failures, 800, "words"))
}

/// A random element of a single grade `g` with up to three terms.
pub fn random_pure_grade(rng: &mut impl Rng, g: i64) -> GradedElem {
    let mut out = GradedElem::zero();
    for _ in 0..rng.random_range(1..=3) {
        let eps = rng.random_range(0u32..=1);
        let d = rng.random_range(0u32..=2);
        let theta = g - eps as i64 + d as i64;
        if theta < 0 {
            continue;
        }
        out.add_term(Monomial::new(theta as u32, eps, d), random_scalar(rng));
    }
    if out.is_zero() {
        // a grade-g element always exists: theta^g or D^-g
        let m = if g >= 0 {
            Monomial::new(g as u32, 0, 0)
        } else {
            Monomial::new(0, 0, (-g) as u32)
        };
        out.add_term(m, RatQ::one());
    }
    out
}

fn leibniz(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1e1b);
    let mut failures = Vec::new();
    for i in 0..100 {
        let (ga, gb, gc) = (
            rng.random_range(-2i64..=2),
            rng.random_range(-2i64..=2),
            rng.random_range(-2i64..=2),
        );
        let a = random_pure_grade(&mut rng, ga);
        let b = random_pure_grade(&mut rng, gb);
        let c = random_pure_grade(&mut rng, gc);
        let br =
            |x: &GradedElem, y: &GradedElem, gx: i64, gy: i64| bracket_with(x, y, &gamma(gx, gy));
        let ab = &a * &b;
        let bc = &b * &c;
        let left_lhs = br(&ab, &c, ga + gb, gc);
        let left_rhs =
            &(&a * &br(&b, &c, gb, gc)) + &(&br(&a, &c, ga, gc) * &b).scale(&gamma(gb, gc));
        let right_lhs = br(&a, &bc, ga, gb + gc);
        let right_rhs =
            &(&br(&a, &b, ga, gb) * &c) + &(&b * &br(&a, &c, ga, gc)).scale(&gamma(ga, gb));
        if left_lhs != left_rhs {
            failures.push(format!("left rule, triple #{i}"));
        }
        if right_lhs != right_rhs {
            failures.push(format!("right rule, triple #{i}"));
        }
    }
    Ok(Check::new(failures, 200, "identities"))
}

fn structure() -> Result<Check> {
    let mut failures = Vec::new();
    for n in [3u32, 5] {
        let field = CyclotomicField::new(n)?;
        let z = FsElem::generator(&field, FsGen::Z);
        let lhs = fs_commutator(&fs_d(&field), &z);
        if lhs != fs_theta_bracket(&field, n - 1) {
            failures.push(format!("n={n}: [D, z] = {lhs}"));
        }
        let dz = FsElem::generator(&field, FsGen::Dz);
        let residue = &fs_d_power(&field, n)? - &dz;
        if !residue.is_zero() {
            failures.push(format!("n={n}: D^n - dz = {residue}"));
        }
    }
    Ok(Check::new(failures, 4, "identities"))
}

fn transform(order: u32) -> Result<Check> {
    let mut failures = Vec::new();
    for n in [3u32, 5] {
        if !fsusy_transform_check(&CyclotomicField::new(n)?, order) {
            failures.push(format!("n={n}"));
        }
    }
    Ok(Check::new(
        failures,
        2,
        &format!("transformations at zeps order {order}"),
    ))
}

fn representations() -> Result<Check> {
    let checks = [
        ("D theta - q theta D = 1", identities::commutation(30)?),
        ("D theta - theta D = q^N", identities::number_operator(30)?),
        (
            "theta^k D^k = [N]!/[N-k]!",
            identities::falling_factorials(12)?,
        ),
        ("divided powers", identities::divided_powers(10, 7)?),
    ];
    let failures = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.to_string())
        .collect();
    Ok(Check::new(failures, checks.len(), "identities"))
}

fn product() -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in [3u32, 5] {
        let at = AtRoot::new(n)?;
        let field = at.field().clone();
        for m in 0..=3 * n {
            let k = Ket::basis(m, field.one());
            let pk = reduce_ket(&k, n)?;
            let images = [
                (ProductOp::Theta, act(KetOp::Theta, &k, &at)?),
                (ProductOp::DTheta, act_dtheta(&k, &at)?),
                (ProductOp::D, act(KetOp::D, &k, &at)?),
            ];
            for (op, image) in images {
                total += 1;
                if reduce_ket(&image, n)? != act_product(op, &pk, &field) {
                    failures.push(format!("n={n} m={m} {op:?}"));
                }
            }
        }
    }
    Ok(Check::new(failures, total, "intertwinings"))
}

fn defcr() -> Result<Check> {
    let mut failures = Vec::new();
    let mut total = 0;
    for rec in defcr_exact_generic(10)? {
        total += 1;
        if !rec.pass {
            failures.push(format!("generic m={} {:?}", rec.m, rec.sign));
        }
    }
    for n in [3u32, 5, 7] {
        for rec in defcr_exact_at_root(n, 10)? {
            total += 1;
            if !rec.pass {
                failures.push(format!("n={n} m={} {:?}", rec.m, rec.sign));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for n in (3..=13).step_by(2) {
        for sign in DefcrSign::BOTH {
            total += 1;
            let r = defcr_numeric_residual(n, sign)?;
            worst = worst.max(r);
            if r >= 1e-12 {
                failures.push(format!("numeric n={n} {sign:?}: {r:e}"));
            }
        }
        total += 2;
        let adj = adjoint_residual(n)?;
        if adj >= 1e-12 {
            failures.push(format!("adjoint n={n}: {adj:e}"));
        }
        let sim = intertwiner_residual(n)?;
        if sim >= 1e-10 {
            failures.push(format!("intertwiner n={n}: {sim:e}"));
        }
    }
    let mut check = Check::new(failures, total, "checks");
    check
        .detail
        .push_str(&format!(", worst numeric residual {worst:.2e}"));
    Ok(check)
}

fn translate(order: u32) -> Result<Check> {
    let failures = (0..=order)
        .filter(|o| !translate_check(*o))
        .map(|o| format!("order {o}"))
        .collect();
    Ok(Check::new(failures, order as usize + 1, "eps orders"))
}

/// Confirms that a random fs product never produces a monomial with a
/// nilpotent exponent at or above `n`.
pub fn nilpotency_preserved(seed: u64, samples: usize) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0b17);
    for i in 0..samples {
        let field = CyclotomicField::new(if i % 2 == 0 { 3 } else { 5 })?;
        let a = fs_normal_order(&field, &random_fs_word(&mut rng, &field, 6));
        let b = fs_normal_order(&field, &random_fs_word(&mut rng, &field, 6));
        let n = field.order();
        if !(&a * &b)
            .terms()
            .all(|(m, _): (&FsMonomial, _)| m.within(n))
        {
            return Ok(false);
        }
    }
    Ok(true)
}
