//! Deterministic random number generation.
//!
//! All randomness in this crate flows through [`ChaCha8Rng`] seeded with a
//! `u64`. Substreams (per tree, per node) use [`derive_seed`] so that no two
//! consumers share a generator state; results are therefore independent of
//! evaluation order and of how work is scheduled across threads.

pub use rand_chacha::ChaCha8Rng;

/// Derives an independent child seed from a parent seed and a stream index.
///
/// Uses the splitmix64 finalizer, which maps distinct inputs to well-mixed
/// outputs. The constant is the golden-ratio increment from the reference
/// implementation.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distinct_streams_give_distinct_seeds() {
        let seeds: Vec<u64> = (0..1000).map(|i| derive_seed(42, i)).collect();
        let mut dedup = seeds.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), seeds.len());
    }

    #[test]
    fn derivation_is_stable() {
        // Pinned so that model reproducibility regressions show up in tests.
        assert_eq!(derive_seed(0, 0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(derive_seed(42, 7), derive_seed(42, 7));
        assert_ne!(derive_seed(42, 7), derive_seed(42, 8));
        assert_ne!(derive_seed(42, 7), derive_seed(43, 7));
    }
}
