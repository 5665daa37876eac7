//! Seeded 64-bit linear congruential generator.
//!
//! `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//! starting from `state = seed`. A draw below `n <= 2^32` takes the high 32
//! bits of the new state modulo `n`; larger bounds concatenate the high halves
//! of two consecutive steps (first step most significant). Any implementation
//! following these rules reproduces the same sample stream.

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(LCG_MULTIPLIER)
            .wrapping_add(LCG_INCREMENT);
        self.state
    }

    fn next_hi(&mut self) -> u64 {
        self.next_u64() >> 32
    }

    /// Uniform-ish draw in `[0, n)`; `n` must be nonzero.
    pub fn below(&mut self, n: u128) -> u128 {
        assert!(n > 0, "empty range");
        if n <= 1 << 32 {
            (self.next_hi() as u128) % n
        } else {
            let hi = self.next_hi() as u128;
            let lo = self.next_hi() as u128;
            ((hi << 32) | lo) % n
        }
    }
}
