//! Keyed hashing used as the source of all oracle-side randomness.
//!
//! Every random choice an oracle makes is a pure function of
//! `(seed, purpose, index...)`, so answers never depend on query order.

/// Purpose tags keep independent random streams apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Center = 0x63656e74,
    Sample = 0x73616d70,
    Coin = 0x636f696e,
    Permutation = 0x7065726d,
    EdgeSample = 0x65646765,
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit hash of `(seed, purpose, a, b)`.
pub fn keyed_hash(seed: u64, purpose: Purpose, a: u64, b: u64) -> u64 {
    let mut h = splitmix64(seed ^ (purpose as u64).rotate_left(32));
    h = splitmix64(h ^ a);
    splitmix64(h ^ b.rotate_left(17))
}

/// Uniform value in `0..bound` derived from a keyed hash (multiply-shift).
pub fn keyed_below(seed: u64, purpose: Purpose, a: u64, b: u64, bound: usize) -> usize {
    debug_assert!(bound > 0);
    let h = keyed_hash(seed, purpose, a, b);
    ((h as u128 * bound as u128) >> 64) as usize
}

/// Fair coin: `true` is Heads.
pub fn keyed_coin(seed: u64, purpose: Purpose, a: u64, b: u64) -> bool {
    keyed_hash(seed, purpose, a, b) >> 63 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_stays_in_range_and_spreads() {
        let mut counts = [0usize; 7];
        for i in 0..7000 {
            counts[keyed_below(11, Purpose::Sample, i, 0, 7)] += 1;
        }
        for c in counts {
            assert!((800..1200).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn purposes_are_independent_streams() {
        let a: Vec<u64> = (0..8).map(|i| keyed_hash(1, Purpose::Coin, i, 0)).collect();
        let b: Vec<u64> = (0..8).map(|i| keyed_hash(1, Purpose::Center, i, 0)).collect();
        assert_ne!(a, b);
    }

    #[test]
    fn coin_is_roughly_fair() {
        let heads = (0..10_000)
            .filter(|&i| keyed_coin(5, Purpose::Coin, 3, i))
            .count();
        assert!((4700..5300).contains(&heads), "{heads}");
    }
}
