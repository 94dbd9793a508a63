//! Seeded random parameters for the randomized verification sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groupkit::{AlphaSeq, BetaSeq, BetaTower, SemidirectElt};
use crate::qscalar::Scalar;

/// Deterministic generator of small exact parameters.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A nonzero `p/r` with `|p| <= 4`, `1 <= r <= 3`.
    pub fn unit(&mut self) -> Scalar {
        let p = loop {
            let p: i64 = self.rng.gen_range(-4..=4);
            if p != 0 {
                break p;
            }
        };
        Scalar::from_ratio(p, self.rng.gen_range(1..=3))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Each index of `[lo, hi]` is populated with probability 1/2.
    pub fn beta(&mut self, lo: i64, hi: i64) -> BetaSeq {
        let mut pairs = Vec::new();
        for n in lo..=hi {
            if self.rng.gen_bool(0.5) {
                pairs.push((n, self.unit()));
            }
        }
        BetaSeq::from_pairs(pairs)
    }

    pub fn alpha(&mut self, lo: i64, hi: i64) -> AlphaSeq {
        let mut pairs = Vec::new();
        for n in lo..=hi {
            if self.rng.gen_bool(0.5) {
                pairs.push((n, self.unit()));
            }
        }
        AlphaSeq::from_pairs(pairs).expect("units are nonzero")
    }

    pub fn tower(&mut self, depth: usize, lo: i64, hi: i64) -> BetaTower {
        BetaTower::new((0..depth).map(|_| self.beta(lo, hi)).collect()).expect("depth >= 1")
    }

    pub fn semidirect(&mut self, lo: i64, hi: i64, r_max: i64) -> SemidirectElt {
        let alpha = self.alpha(lo, hi);
        SemidirectElt::new(alpha, self.int(-r_max, r_max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_output_is_reproducible() {
        let (mut a, mut b) = (Sampler::new(7), Sampler::new(7));
        assert_eq!(a.tower(3, -2, 2), b.tower(3, -2, 2));
        assert_eq!(a.semidirect(-2, 2, 2), b.semidirect(-2, 2, 2));
        let t = a.tower(2, -1, 1);
        assert!(t.support_range().is_none_or(|(lo, hi)| lo >= -1 && hi <= 1));
    }
}
