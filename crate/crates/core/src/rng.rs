//! Deterministic random streams.
//!
//! Every draw in the toolkit comes from a ChaCha8 stream keyed by
//! (master seed, colour index, purpose tag). Streams for distinct keys are
//! independent, so per-colour sampling can run in parallel and still produce
//! bit-identical artifacts regardless of platform or thread count.

use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::Rational;

/// Domain separator baked into every stream key.
const DOMAIN: u64 = 0x5241_4d53_4559_0001; // "RAMSEY" + key schema version

/// Independent purposes a colour's randomness is split into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamPurpose {
    /// Edges of the colour's seed graph.
    SeedGraph = 1,
    /// The colour's vertex partition map.
    Partition = 2,
    /// Per-edge colour subsets (uniform reference colourings).
    EdgeColours = 3,
    /// Post-hoc sampling (subgraphs, vertex sets) on a finished artifact.
    Sampling = 4,
}

/// The stream keyed by (master seed, colour, purpose).
pub fn stream(master_seed: u64, colour: u32, purpose: StreamPurpose) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..12].copy_from_slice(&colour.to_le_bytes());
    key[12..16].copy_from_slice(&(purpose as u32).to_le_bytes());
    key[16..24].copy_from_slice(&DOMAIN.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Unbiased uniform draw from {0, ..., m-1} by rejection.
pub fn uniform_below(rng: &mut impl Rng, m: u64) -> u64 {
    assert!(m >= 1, "empty range");
    // 2^64 mod m values at the top of the range would bias x % m; redraw them.
    let rem = ((u64::MAX % m) + 1) % m;
    let limit = u64::MAX - rem;
    loop {
        let x = rng.next_u64();
        if x <= limit {
            return x % m;
        }
    }
}

/// floor(p * 2^64) computed exactly from the rational p in [0, 1].
///
/// A Bernoulli(p) event fires when a uniform 64-bit draw is strictly below
/// this threshold; u128 lets p = 1 map to 2^64 (always fires).
pub fn bernoulli_threshold(p: &Rational) -> u128 {
    assert!(!p.is_negative() && *p <= Rational::one(), "p outside [0, 1]");
    let scaled: BigInt = (p.numer() << 64u32) / p.denom();
    scaled.to_u128().expect("p in [0, 1] scales into u128")
}

/// One Bernoulli draw against a precomputed threshold.
pub fn bernoulli(rng: &mut impl Rng, threshold: u128) -> bool {
    (rng.next_u64() as u128) < threshold
}

/// `k` distinct values from {0, ..., n-1}, ascending (Floyd's sampling).
pub fn sample_distinct_sorted(rng: &mut impl Rng, n: u64, k: u64) -> Vec<u64> {
    assert!(k <= n, "cannot pick {k} distinct values from {n}");
    let mut chosen = std::collections::BTreeSet::new();
    for j in (n - k)..n {
        let t = uniform_below(rng, j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{FromPrimitive, Zero};

    #[test]
    fn streams_are_reproducible_and_keyed_apart() {
        let a: Vec<u64> = (0..8).map({
            let mut r = stream(42, 0, StreamPurpose::SeedGraph);
            move |_| r.next_u64()
        }).collect();
        let b: Vec<u64> = (0..8).map({
            let mut r = stream(42, 0, StreamPurpose::SeedGraph);
            move |_| r.next_u64()
        }).collect();
        let c: Vec<u64> = (0..8).map({
            let mut r = stream(42, 0, StreamPurpose::Partition);
            move |_| r.next_u64()
        }).collect();
        let d: Vec<u64> = (0..8).map({
            let mut r = stream(42, 1, StreamPurpose::SeedGraph);
            move |_| r.next_u64()
        }).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn uniform_below_stays_in_range_and_hits_everything() {
        let mut rng = stream(7, 0, StreamPurpose::Sampling);
        let mut seen = [false; 5];
        for _ in 0..200 {
            let x = uniform_below(&mut rng, 5);
            assert!(x < 5);
            seen[x as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(uniform_below(&mut rng, 1), 0);
    }

    #[test]
    fn bernoulli_threshold_edges() {
        assert_eq!(bernoulli_threshold(&Rational::zero()), 0);
        assert_eq!(bernoulli_threshold(&Rational::one()), 1u128 << 64);
        let half = Rational::from_f64(0.5).unwrap();
        assert_eq!(bernoulli_threshold(&half), 1u128 << 63);
        // p = 1 always fires, p = 0 never does
        let mut rng = stream(1, 0, StreamPurpose::SeedGraph);
        assert!(bernoulli(&mut rng, 1u128 << 64));
        assert!(!bernoulli(&mut rng, 0));
    }

    #[test]
    fn distinct_sample_is_sorted_and_exact_size() {
        let mut rng = stream(9, 3, StreamPurpose::Sampling);
        for _ in 0..50 {
            let s = sample_distinct_sorted(&mut rng, 40, 13);
            assert_eq!(s.len(), 13);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(*s.last().unwrap() < 40);
        }
        let all = sample_distinct_sorted(&mut rng, 6, 6);
        assert_eq!(all, vec![0, 1, 2, 3, 4, 5]);
    }
}
