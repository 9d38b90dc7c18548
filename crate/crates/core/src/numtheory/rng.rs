use num_bigint::BigUint;
use num_traits::Zero;

use super::Natural;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Deterministic SplitMix64 stream.
///
/// Every random choice in the crate (key material, nonces, IVs, synthetic
/// workloads) is drawn from one of these so that a run is fully determined
/// by its seed. The generator is **not** cryptographically secure; it exists
/// to make benchmarks and tests reproducible byte-for-byte across platforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededRng {
    state: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Fills `dest` with the stream, each 64-bit output emitted little-endian.
    /// A trailing partial word uses the low bytes of one more output.
    pub fn fill_bytes(&mut self, dest: &mut [u8]) {
        let mut chunks = dest.chunks_exact_mut(8);
        for chunk in &mut chunks {
            chunk.copy_from_slice(&self.next_u64().to_le_bytes());
        }
        let rest = chunks.into_remainder();
        if !rest.is_empty() {
            let word = self.next_u64().to_le_bytes();
            rest.copy_from_slice(&word[..rest.len()]);
        }
    }

    /// Uniform value in `[0, 2^bits)`.
    pub fn gen_bits(&mut self, bits: u64) -> Natural {
        if bits == 0 {
            return Natural::zero();
        }
        let words = bits.div_ceil(64) as usize;
        let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
        let excess = words as u64 * 64 - bits;
        if excess > 0 {
            let top = digits.last_mut().expect("at least one word");
            *top &= u64::MAX >> excess;
        }
        BigUint::from_slice(&to_u32_digits(&digits))
    }

    /// Uniform value in `[0, bound)` by rejection sampling. `bound` must be nonzero.
    pub fn gen_below(&mut self, bound: &Natural) -> Natural {
        assert!(!bound.is_zero(), "gen_below requires a nonzero bound");
        let bits = bound.bits();
        loop {
            let candidate = self.gen_bits(bits);
            if &candidate < bound {
                return candidate;
            }
        }
    }

    /// Uniform value in the inclusive range `[low, high]`.
    pub fn gen_range(&mut self, low: &Natural, high: &Natural) -> Natural {
        assert!(low <= high, "empty range");
        let span = high - low + 1u32;
        low + self.gen_below(&span)
    }
}

fn to_u32_digits(words: &[u64]) -> Vec<u32> {
    words
        .iter()
        .flat_map(|w| [*w as u32, (*w >> 32) as u32])
        .collect()
}
