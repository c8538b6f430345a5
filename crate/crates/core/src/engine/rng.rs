use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Seeded pseudo-random stream.
///
/// Backed by ChaCha8, whose output is specified independently of platform, so
/// a seed reproduces the same sequence everywhere. Every draw is counted; the
/// deterministic games use the counter as a tripwire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    draws: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            draws: 0,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of values drawn since construction.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Child stream keyed by `label`. Depends only on this stream's seed, never
    /// on how much of it has been consumed.
    pub fn derive(&self, label: &str) -> RngStream {
        RngStream::new(derive_seed(self.seed, label))
    }

    /// Child stream seeded from the next value of this stream. Successive
    /// splits give distinct children.
    pub fn split(&mut self) -> RngStream {
        let seed = self.next_u64();
        RngStream::new(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.inner.next_u64()
    }

    /// Uniform integer in `0..n`. `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0) has no valid output");
        self.draws += 1;
        self.inner.random_range(0..n)
    }

    /// Uniform real in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        self.draws += 1;
        self.inner.random::<f64>()
    }

    /// Bernoulli trial with success probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }
}

/// Mixes a seed with a label through SHA-256 and keeps the first 8 bytes.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}
