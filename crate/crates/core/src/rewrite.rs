//! A small string-rewriting engine for ordering words in noncommuting
//! generators.
//!
//! A system is described by one rule per out-of-order adjacent pair. The
//! engine rewrites a linear combination of words until every word is ordered,
//! picking the leftmost or rightmost redex. Both algebras in this crate also
//! have closed-form product formulas; the engine is the slow, obviously
//! correct route that those formulas are tested against.

use std::fmt;

use crate::scalar::Field;

pub trait RewriteSystem {
    type Letter: Copy + Eq + fmt::Debug;
    type Coeff: Field;

    /// Replacement for the adjacent pair `left right`, or `None` if the pair
    /// is already in normal order.
    fn rewrite(&self, left: Self::Letter, right: Self::Letter) -> Option<Replacement<Self>>;

    /// Words that are identically zero once ordered (nilpotency); checked
    /// only on fully ordered words.
    fn vanishes(&self, _ordered: &[Self::Letter]) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Rewrites `coeff * word` to a list of ordered words with coefficients.
/// Identical words are not merged; zero coefficients are dropped.
pub fn rewrite_to_normal<R: RewriteSystem>(
    system: &R,
    coeff: R::Coeff,
    word: Vec<R::Letter>,
    strategy: Strategy,
) -> Vec<(R::Coeff, Vec<R::Letter>)> {
    let mut pending = vec![(coeff, word)];
    let mut done = Vec::new();
    while let Some((c, w)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        let redex = find_redex(system, &w, strategy);
        match redex {
            None => {
                if !system.vanishes(&w) {
                    done.push((c, w));
                }
            }
            Some((i, replacement)) => {
                for (rc, rw) in replacement {
                    let mut next = Vec::with_capacity(w.len() + rw.len());
                    next.extend_from_slice(&w[..i]);
                    next.extend_from_slice(&rw);
                    next.extend_from_slice(&w[i + 2..]);
                    pending.push((c.mul_ref(&rc), next));
                }
            }
        }
    }
    done
}

pub type Replacement<R> = Vec<(
    <R as RewriteSystem>::Coeff,
    Vec<<R as RewriteSystem>::Letter>,
)>;

fn find_redex<R: RewriteSystem>(
    system: &R,
    w: &[R::Letter],
    strategy: Strategy,
) -> Option<(usize, Replacement<R>)> {
    if w.len() < 2 {
        return None;
    }
    let positions: Box<dyn Iterator<Item = usize>> = match strategy {
        Strategy::Leftmost => Box::new(0..w.len() - 1),
        Strategy::Rightmost => Box::new((0..w.len() - 1).rev()),
    };
    for i in positions {
        if let Some(r) = system.rewrite(w[i], w[i + 1]) {
            return Some((i, r));
        }
    }
    None
}
