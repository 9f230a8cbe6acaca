//! Deterministic pseudo-randomness.
//!
//! Everything random in this crate (weight init, synthetic inputs, shuffles,
//! dataset splits) flows through [`SplitMix64`], seeded by [`hash64`] over the
//! relevant identifiers. This keeps generated model files byte-identical
//! across runs and platforms, which the manifests rely on.

/// SplitMix64 generator (Steele, Lea & Flood). Tiny state, full 64-bit
/// output, good enough statistical quality for initialization and shuffles.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 24 bits of mantissa, exact in f32.
    pub fn next_f32(&mut self) -> f32 {
        ((self.next_u64() >> 40) as f32) * (1.0 / 16_777_216.0)
    }

    /// Uniform in [0, 1) with 53 bits of mantissa.
    pub fn next_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64) * (1.0 / 9_007_199_254_740_992.0)
    }

    pub fn uniform_f32(&mut self, lo: f32, hi: f32) -> f32 {
        lo + self.next_f32() * (hi - lo)
    }

    /// Uniform integer in [0, n). Rejection-free modulo is fine here; these
    /// draws feed shuffles, not cryptography.
    pub fn next_below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i + 1);
            items.swap(i, j);
        }
    }
}

/// FNV-1a over the concatenation of the components, with a length prefix per
/// component so (`"ab"`, `"c"`) and (`"a"`, `"bc"`) hash differently.
pub fn hash64(components: &[&[u8]]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |byte: u8| {
        h ^= byte as u64;
        h = h.wrapping_mul(0x100000001b3);
    };
    for comp in components {
        for b in (comp.len() as u64).to_le_bytes() {
            eat(b);
        }
        for &b in *comp {
            eat(b);
        }
    }
    h
}

/// Convenience: hash of a numeric seed plus a string key (model id, path...).
pub fn seed_for(seed: u64, key: &str) -> u64 {
    hash64(&[&seed.to_le_bytes(), key.as_bytes()])
}

/// Seed for one layer's weight initialization.
pub fn layer_seed(seed: u64, model_id: &str, layer_index: usize) -> u64 {
    hash64(&[
        &seed.to_le_bytes(),
        model_id.as_bytes(),
        &(layer_index as u64).to_le_bytes(),
    ])
}
