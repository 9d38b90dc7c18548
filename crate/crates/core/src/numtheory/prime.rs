use std::sync::OnceLock;

use num_traits::{One, ToPrimitive, Zero};

use super::{Natural, SeededRng};

/// Miller-Rabin rounds used for every generated key prime.
pub const KEYGEN_MR_ROUNDS: u32 = 40;

const TRIAL_LIMIT: u32 = 1000;
// Candidates at or below this width may coincide with a trial prime.
const SIEVE_MIN_BITS: u64 = 10;
const WITNESS_SALT: u64 = 0x4D52_5F57_4954_4E53;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut out = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                out.push(i as u32);
                for j in (i * i..=limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        out
    })
}

fn low_word(n: &Natural) -> u64 {
    n.iter_u64_digits().next().unwrap_or(0)
}

/// Trial division by the primes up to 1000 followed by `rounds` Miller-Rabin
/// rounds with pseudorandom bases.
///
/// The bases are drawn from a [`SeededRng`] keyed on the candidate itself, so
/// the answer for a given `(n, rounds)` never changes between runs.
pub fn is_probable_prime(n: &Natural, rounds: u32) -> bool {
    assert!(rounds >= 1, "at least one Miller-Rabin round is required");
    if let Some(small) = n.to_u32() {
        if small < 2 {
            return false;
        }
        if small <= TRIAL_LIMIT {
            return small_primes().binary_search(&small).is_ok();
        }
    }
    if small_primes().iter().any(|&p| (n % p).is_zero()) {
        return false;
    }
    miller_rabin(n, rounds)
}

fn miller_rabin(n: &Natural, rounds: u32) -> bool {
    let one = Natural::one();
    let n_minus_one = n - &one;
    let shift = n_minus_one.trailing_zeros().expect("n is odd and > 2");
    let odd_part = &n_minus_one >> shift;
    let two = Natural::from(2u32);
    let top = n - &two;

    let mut rng = SeededRng::new(low_word(n) ^ WITNESS_SALT ^ n.bits());
    'witness: for _ in 0..rounds {
        let base = rng.gen_range(&two, &top);
        let mut x = base.modpow(&odd_part, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..shift {
            x = &x * &x % n;
            if x == n_minus_one {
                continue 'witness;
            }
            if x == one {
                return false;
            }
        }
        return false;
    }
    true
}

fn residues(n: &Natural) -> Vec<u32> {
    small_primes()
        .iter()
        .map(|&p| (n % p).to_u32().expect("residue below a u32 prime"))
        .collect()
}

fn random_odd_with_top_bit(bits: u64, rng: &mut SeededRng) -> Natural {
    let mut candidate = rng.gen_bits(bits);
    candidate.set_bit(bits - 1, true);
    candidate.set_bit(0, true);
    candidate
}

/// Random prime with exactly `bits` significant bits.
///
/// Draws an odd `bits`-bit candidate with the top bit forced and walks
/// upward in steps of two; if the walk leaves the bit width a fresh
/// candidate is drawn. Deterministic for a given RNG state.
pub fn gen_prime(bits: u64, rng: &mut SeededRng) -> Natural {
    assert!(bits >= 8, "prime width must be at least 8 bits, got {bits}");
    loop {
        let mut candidate = random_odd_with_top_bit(bits, rng);
        let mut res = residues(&candidate);
        let mut offset = 0u32;
        while candidate.bits() == bits {
            let sieved = bits > SIEVE_MIN_BITS && res.contains(&0);
            if !sieved && is_probable_prime(&candidate, KEYGEN_MR_ROUNDS) {
                return candidate;
            }
            candidate += 2u32;
            offset += 2;
            for (r, &p) in res.iter_mut().zip(small_primes()) {
                *r = (*r + 2) % p;
            }
            // keep the sieve honest for very long walks
            if offset > 1 << 24 {
                break;
            }
        }
    }
}

/// Random safe prime `p = 2q + 1` (both prime) with exactly `bits` bits.
/// Returns `(p, q)`.
pub fn gen_safe_prime(bits: u64, rng: &mut SeededRng) -> (Natural, Natural) {
    assert!(bits >= 16, "safe prime width must be at least 16 bits, got {bits}");
    let two = Natural::from(2u32);
    let q_bits = bits - 1;
    loop {
        let mut q = random_odd_with_top_bit(q_bits, rng);
        let mut res = residues(&q);
        while q.bits() == q_bits {
            // p = 2q + 1 is divisible by s exactly when 2*(q mod s) + 1 = s (mod s)
            let sieved = res
                .iter()
                .zip(small_primes())
                .any(|(&r, &s)| r == 0 || (2 * r + 1) % s == 0);
            if !sieved {
                let p = &q * 2u32 + 1u32;
                let fermat = two.modpow(&(&p - 1u32), &p).is_one();
                if fermat
                    && is_probable_prime(&q, KEYGEN_MR_ROUNDS)
                    && is_probable_prime(&p, KEYGEN_MR_ROUNDS)
                {
                    return (p, q);
                }
            }
            q += 2u32;
            for (r, &s) in res.iter_mut().zip(small_primes()) {
                *r = (*r + 2) % s;
            }
        }
    }
}
