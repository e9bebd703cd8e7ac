//! The sampler behind seeded verification.
//!
//! `x ← 6364136223846793005·x + 1442695040888963407 (mod 2^64)`, starting
//! from `x = seed`; each draw returns the high 32 bits of the new state.
//! `below(n)` maps a draw `u` to `⌊u·n / 2^32⌋`. Words are sampled as: a
//! length `below(max_len + 1)`, then per letter a weight `1 + below(max_weight)`
//! followed by a root `below(r)`.

use euler_core::{Letter, Word};

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw from `0..n`. `n` must be positive.
    pub fn below(&mut self, n: u32) -> u32 {
        ((u64::from(self.next_u32()) * u64::from(n)) >> 32) as u32
    }

    pub fn word(&mut self, r: u32, max_len: usize, max_weight: u32) -> Word {
        let len = self.below(max_len as u32 + 1) as usize;
        let letters = (0..len)
            .map(|_| {
                let i = 1 + self.below(max_weight);
                let j = self.below(r);
                Letter::new(i, j, r).expect("sampled subscripts are in range")
            })
            .collect();
        Word::from_letters(letters)
    }
}
