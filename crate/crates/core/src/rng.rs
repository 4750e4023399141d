//! Seeded random data for reproducible runs.
//!
//! The generator is PCG32 (XSH-RR, 64-bit state, 32-bit output) from
//! `rand_pcg`, created as `Pcg32::new(seed, 0xa02bdbf7bb3c0a7)`:
//!
//! ```text
//! increment = (0xa02bdbf7bb3c0a7 << 1) | 1
//! state     = (seed + increment) * 6364136223846793005 + increment   (mod 2^64)
//! step:       state ← state * 6364136223846793005 + increment
//! output:     rotr32(((old >> 18) ^ old) >> 27, old >> 59)
//! ```
//!
//! A 64-bit word is two consecutive outputs, low half first. A uniform value
//! in `[−1, 1)` is `2·((w >> 11)·2⁻⁵³) − 1`.

use rand_core::Rng;
use rand_pcg::Pcg32;

use crate::groups::CayleyBall;
use crate::orlicz::FiniteFunction;

pub const STREAM: u64 = 0x0a02_bdbf_7bb3_c0a7;

pub struct SeededRng(Pcg32);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Pcg32::new(seed, STREAM))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[−1, 1)`.
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.unit() - 1.0
    }
}

/// Zero on the interior, independent uniform `[−1, 1)` values on the sphere
/// of radius `R`, drawn in vertex-index order.
pub fn random_boundary(ball: &CayleyBall, seed: u64) -> FiniteFunction {
    let mut rng = SeededRng::new(seed);
    let mut f = ball.zeros();
    for x in ball.boundary() {
        f.values[x] = rng.symmetric();
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference PCG32 written out from the recurrence above.
    struct Reference {
        state: u64,
        inc: u64,
    }

    impl Reference {
        const MUL: u64 = 6364136223846793005;

        fn new(seed: u64) -> Self {
            let inc = (STREAM << 1) | 1;
            let state = seed.wrapping_add(inc).wrapping_mul(Self::MUL).wrapping_add(inc);
            Reference { state, inc }
        }

        fn next_u32(&mut self) -> u32 {
            let old = self.state;
            self.state = old.wrapping_mul(Self::MUL).wrapping_add(self.inc);
            ((((old >> 18) ^ old) >> 27) as u32).rotate_right((old >> 59) as u32)
        }
    }

    #[test]
    fn matches_documented_recurrence() {
        for seed in [0u64, 42, u64::MAX] {
            let mut a = SeededRng::new(seed);
            let mut b = Reference::new(seed);
            for _ in 0..100 {
                let lo = b.next_u32() as u64;
                let hi = b.next_u32() as u64;
                assert_eq!(a.next_u64(), lo | (hi << 32));
            }
        }
    }

    #[test]
    fn symmetric_range_and_determinism() {
        let mut a = SeededRng::new(7);
        let xs: Vec<f64> = (0..1000).map(|_| a.symmetric()).collect();
        assert!(xs.iter().all(|x| (-1.0..1.0).contains(x)));
        let mut b = SeededRng::new(7);
        assert!(xs.iter().all(|x| *x == b.symmetric()));
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.1);
    }
}
