//! Deterministic rational samples for sampled verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratlp::{rat, Rat, RatVec};

/// Seeded generator of small rationals. Same seed, same stream on every platform.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    /// numerators are drawn from `-magnitude..=magnitude`
    pub magnitude: i64,
    /// denominators are drawn from `1..=max_denominator`
    pub max_denominator: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            magnitude: 12,
            max_denominator: 6,
        }
    }

    pub fn with_range(seed: u64, magnitude: i64, max_denominator: i64) -> Self {
        assert!(magnitude > 0 && max_denominator > 0);
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            magnitude,
            max_denominator,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn rational(&mut self) -> Rat {
        let n = self.rng.gen_range(-self.magnitude..=self.magnitude);
        let d = self.rng.gen_range(1..=self.max_denominator);
        rat(n, d)
    }

    pub fn nonnegative(&mut self) -> Rat {
        let n = self.rng.gen_range(0..=self.magnitude);
        let d = self.rng.gen_range(1..=self.max_denominator);
        rat(n, d)
    }

    pub fn positive(&mut self) -> Rat {
        let n = self.rng.gen_range(1..=self.magnitude);
        let d = self.rng.gen_range(1..=self.max_denominator);
        rat(n, d)
    }

    pub fn vector(&mut self, dim: usize) -> RatVec {
        (0..dim).map(|_| self.rational()).collect()
    }

    pub fn nonzero_vector(&mut self, dim: usize) -> RatVec {
        loop {
            let v = self.vector(dim);
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn integer_vector(&mut self, dim: usize, bound: i64) -> RatVec {
        (0..dim).map(|_| Rat::from_integer(self.integer(-bound, bound).into())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_streams() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..50 {
            assert_eq!(a.vector(3), b.vector(3));
        }
        let mut s = Sampler::new(1);
        for _ in 0..100 {
            assert!(s.positive() > Rat::from_integer(0.into()));
        }
    }
}
