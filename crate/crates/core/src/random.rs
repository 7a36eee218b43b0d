//! Seeded random words.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::presentation::PcPresentation;
use crate::word::Word;

/// Shape of random words: `syllables` syllables, each with a uniform
/// generator and a uniform nonzero exponent in `[-exponent_bound, exponent_bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordParams {
    pub syllables: usize,
    pub exponent_bound: u64,
}

impl WordParams {
    pub fn new(syllables: usize, exponent_bound: u64) -> Self {
        WordParams { syllables, exponent_bound: exponent_bound.max(1) }
    }
}

/// The deterministic generator used everywhere a seed is accepted.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws one word from `rng`.
pub fn sample_word<R: Rng + ?Sized>(rng: &mut R, n: usize, params: WordParams) -> Word {
    let b = params.exponent_bound.max(1);
    let mut w = Word::identity();
    for _ in 0..params.syllables {
        let g = rng.gen_range(0..n);
        let k = rng.gen_range(1..=2 * b);
        let e = if k <= b { k as i128 } else { -((k - b) as i128) };
        w.push(g, e);
    }
    w
}

pub fn random_word(p: &PcPresentation, syllable_count: usize, exponent_bound: u64, seed: u64) -> Word {
    sample_word(&mut rng_from_seed(seed), p.n(), WordParams::new(syllable_count, exponent_bound))
}
