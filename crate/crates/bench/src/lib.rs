//! Shared inputs for the benchmarks, generated from fixed seeds so runs are
//! comparable.

use std::sync::Arc;

use qcalc_core::fsusy::FsLetter;
use qcalc_core::gencalc::Letter;
use qcalc_core::verify::{random_fs_word, random_generic_word};
use qcalc_core::CyclotomicField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 2024;

pub fn generic_words(count: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| random_generic_word(&mut rng, max_len))
        .collect()
}

pub fn root_words(
    field: &Arc<CyclotomicField>,
    count: usize,
    max_len: usize,
) -> Vec<Vec<FsLetter>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| random_fs_word(&mut rng, field, max_len))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_reproducible() {
        assert_eq!(generic_words(5, 6), generic_words(5, 6));
        let field = CyclotomicField::new(3).unwrap();
        assert_eq!(root_words(&field, 5, 6), root_words(&field, 5, 6));
    }
}
