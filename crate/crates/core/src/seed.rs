//! Deterministic seed derivation.
//!
//! Every stochastic component derives its RNG seed from the global seed and a
//! stable string path (e.g. `"dataset/scene/42"`). Hashing goes through
//! SHA-256 so streams stay stable across compiler and std versions, and
//! adding a new component never perturbs existing ones.

use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derives a child seed from `(global_seed, path)`.
pub fn derive_seed(global_seed: u64, path: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(global_seed.to_le_bytes());
    hasher.update([0x1f]); // separator
    hasher.update(path.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

/// RNG seeded from a derived path seed.
pub fn rng_for(global_seed: u64, path: &str) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(derive_seed(global_seed, path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_and_path_sensitive() {
        assert_eq!(derive_seed(42, "a/b"), derive_seed(42, "a/b"));
        assert_ne!(derive_seed(42, "a/b"), derive_seed(42, "a/c"));
        assert_ne!(derive_seed(42, "a/b"), derive_seed(43, "a/b"));
    }

    #[test]
    fn known_value_does_not_drift() {
        // Frozen so accidental changes to the derivation are caught.
        assert_eq!(derive_seed(0, ""), 0x18db_89f3_53e1_c7f5);
    }
}
