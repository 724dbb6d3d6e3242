//! Deterministic random streams.
//!
//! Every randomized component draws from ChaCha8 keyed by the user-supplied
//! seed, with one independent stream per unit of work (oracle start,
//! certification trial). The derivation is part of the output contract and
//! must stay stable: `ChaCha8Rng::seed_from_u64(seed)`, then
//! `set_stream(index)`; uniforms take the top 53 bits of `next_u64`.

#[allow(unused_imports)] // no_std float math; shadowed when tests link std
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub(crate) struct Stream(ChaCha8Rng);

pub(crate) fn stream(seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    Stream(rng)
}

impl Stream {
    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Log-uniform over `[lo, hi]`, `0 < lo < hi`.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }
}
