//! Fixed inputs shared by the benchmarks, so runs compare like with like.

use raag_core::sample::{random_syllables, random_word};
use raag_core::{Element, Graph, Letter, Raag};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn pentagon() -> Raag {
    Raag::new(Graph::cycle(5))
}

/// `count` unreduced words of length `len` over the pentagon.
pub fn words(count: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut rng = ChaCha8Rng::seed_from_u64(len as u64);
    (0..count).map(|_| random_word(&mut rng, 5, len)).collect()
}

/// `count` pentagon elements with `syllables` syllables of exponent up to 3.
pub fn elements(raag: &Raag, count: usize, syllables: usize) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + syllables as u64);
    (0..count)
        .map(|_| random_syllables(&mut rng, raag, syllables, 3))
        .collect()
}
