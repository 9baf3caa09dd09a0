//! Deterministic derivation of independent RNG streams.
//!
//! Every randomized routine in this workspace takes a `u64` seed and mixes it
//! (together with structural labels such as trial indices) into a ChaCha
//! stream. ChaCha output is bit-exact across platforms, and the mixing is a
//! pure function of the inputs, so a master seed pins every trace: adding a
//! new algorithm or reordering work never perturbs existing streams.

use rand::SeedableRng;

/// The stream cipher behind all randomness in this workspace.
pub type StreamRng = rand_chacha::ChaCha12Rng;

/// SplitMix64 finalizer: a fast, well-distributed 64-bit mixer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a master seed and a label path.
///
/// Order-sensitive: `derive(s, &[a, b]) != derive(s, &[b, a])` in general.
pub fn derive(master: u64, parts: &[u64]) -> u64 {
    let mut h = mix(master);
    for &p in parts {
        h = mix(h ^ mix(p));
    }
    h
}

/// A ChaCha stream keyed by `derive(master, parts)`.
pub fn stream(master: u64, parts: &[u64]) -> StreamRng {
    StreamRng::seed_from_u64(derive(master, parts))
}

/// FNV-1a hash of a string, for labeling streams by instance or algorithm
/// name.
pub fn hash_str(s: &str) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100_0000_01B3);
    }
    h
}
