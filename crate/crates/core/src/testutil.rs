//! Shared helpers for the randomized unit tests.

use crate::picard::DivisorClass;

/// Deterministic 64-bit generator (SplitMix64) for the randomized checks.
pub(crate) struct SplitMix(u64);

impl SplitMix {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub(crate) fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// A class with degree in `-5..=15` and multiplicities in `-3..=7`.
pub(crate) fn random_class(rng: &mut SplitMix, r: usize) -> DivisorClass {
    let degree = (rng.next() % 21) as i64 - 5;
    let mults = (0..r).map(|_| (rng.next() % 11) as i64 - 3).collect();
    DivisorClass::new(degree, mults).expect("r <= 8")
}
