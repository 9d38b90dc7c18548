use num_traits::{One, ToPrimitive, Zero};

use super::{HomomorphicError, KeyFingerprint};
use crate::numtheory::{
    discrete_log_bsgs, gcd, gen_prime, is_probable_prime, mod_pow, Natural, NumTheoryError,
    SeededRng, KEYGEN_MR_ROUNDS,
};

/// Default message-space modulus: a prime just above one byte.
pub const DEFAULT_BENALOH_R: u32 = 257;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenalohPublicKey {
    pub r: Natural,
    pub n: Natural,
    pub y: Natural,
    pub bits: u64,
    pub fingerprint: KeyFingerprint,
}

/// Benaloh key for a prime block size `r`.
///
/// `p - 1` is divisible by `r` exactly once, `q - 1` is coprime to `r`, and
/// `x = y^(phi/r) mod n` is a primitive `r`-th root of unity used to read
/// the plaintext back off a ciphertext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenalohKeyPair {
    pub r: Natural,
    pub n: Natural,
    pub y: Natural,
    pub phi: Natural,
    pub x: Natural,
    pub p: Natural,
    pub q: Natural,
    pub bits: u64,
    pub fingerprint: KeyFingerprint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenalohCiphertext {
    pub value: Natural,
    pub fingerprint: KeyFingerprint,
}

fn check_block_size(r: &Natural) -> Result<u64, HomomorphicError> {
    let small = r
        .to_u32()
        .ok_or_else(|| HomomorphicError::UnsupportedParameter(format!("r = {r} exceeds 32 bits")))?;
    if small == 2 || !is_probable_prime(r, KEYGEN_MR_ROUNDS) {
        return Err(HomomorphicError::UnsupportedParameter(format!(
            "r = {r} must be an odd prime"
        )));
    }
    Ok(small as u64)
}

fn random_unit(n: &Natural, rng: &mut SeededRng) -> Natural {
    let one = Natural::one();
    let top = n - 1u32;
    loop {
        let u = rng.gen_range(&one, &top);
        if gcd(&u, n).is_one() {
            return u;
        }
    }
}

impl BenalohKeyPair {
    /// Builds a key from explicit primes, drawing only `y` from `rng`.
    pub fn from_primes(
        r: &Natural,
        p: &Natural,
        q: &Natural,
        rng: &mut SeededRng,
    ) -> Result<Self, HomomorphicError> {
        check_block_size(r)?;
        if p == q {
            return Err(HomomorphicError::InvalidPrimes("p and q must differ"));
        }
        if !is_probable_prime(p, KEYGEN_MR_ROUNDS) || !is_probable_prime(q, KEYGEN_MR_ROUNDS) {
            return Err(HomomorphicError::InvalidPrimes("p and q must be prime"));
        }
        let p1 = p - 1u32;
        let q1 = q - 1u32;
        if !(&p1 % r).is_zero() {
            return Err(HomomorphicError::InvalidPrimes("r must divide p - 1"));
        }
        if !gcd(r, &(&p1 / r)).is_one() {
            return Err(HomomorphicError::InvalidPrimes("r must be coprime to (p - 1) / r"));
        }
        if !gcd(r, &q1).is_one() {
            return Err(HomomorphicError::InvalidPrimes("r must be coprime to q - 1"));
        }
        let n = p * q;
        let exponent = (&p1 * &q1) / r;
        let y = loop {
            let y = random_unit(&n, rng);
            if !mod_pow(&y, &exponent, &n)?.is_one() {
                break y;
            }
        };
        Self::from_parts(r, p, q, &y)
    }

    /// Rebuilds a key from stored primes and public base `y`.
    pub fn from_parts(r: &Natural, p: &Natural, q: &Natural, y: &Natural) -> Result<Self, HomomorphicError> {
        check_block_size(r)?;
        let p1 = p - 1u32;
        let q1 = q - 1u32;
        if p == q || !(&p1 % r).is_zero() || !gcd(r, &(&p1 / r)).is_one() || !gcd(r, &q1).is_one() {
            return Err(HomomorphicError::InvalidPrimes("primes do not fit block size r"));
        }
        let n = p * q;
        if y.is_zero() || y >= &n || !gcd(y, &n).is_one() {
            return Err(HomomorphicError::InvalidPrimes("y must be a unit modulo n"));
        }
        let phi = &p1 * &q1;
        let x = mod_pow(y, &(&phi / r), &n)?;
        if x.is_one() {
            return Err(HomomorphicError::InvalidPrimes("y is an r-th residue"));
        }
        Ok(Self {
            r: r.clone(),
            bits: n.bits(),
            fingerprint: KeyFingerprint::of_modulus(&n),
            n,
            y: y.clone(),
            phi,
            x,
            p: p.clone(),
            q: q.clone(),
        })
    }

    pub fn public(&self) -> BenalohPublicKey {
        BenalohPublicKey {
            r: self.r.clone(),
            n: self.n.clone(),
            y: self.y.clone(),
            bits: self.bits,
            fingerprint: self.fingerprint,
        }
    }
}

impl BenalohPublicKey {
    pub fn new(r: Natural, n: Natural, y: Natural) -> Self {
        Self {
            bits: n.bits(),
            fingerprint: KeyFingerprint::of_modulus(&n),
            r,
            n,
            y,
        }
    }
}

/// Generates a key whose primes each have `bits / 2` bits.
pub fn benaloh_keygen(
    r: &Natural,
    bits: u64,
    rng: &mut SeededRng,
) -> Result<BenalohKeyPair, HomomorphicError> {
    check_block_size(r)?;
    if bits < 16 {
        return Err(HomomorphicError::KeySize { bits, reason: "Benaloh needs at least 16 bits" });
    }
    let half = bits / 2;
    // p = r*k + 1 with k even, k not a multiple of r, and p exactly `half` bits
    if r.bits() + 2 > half {
        return Err(HomomorphicError::KeySize { bits, reason: "key too small for this block size" });
    }
    let k_bits = half - r.bits() + 1;
    let p = loop {
        let mut k = rng.gen_bits(k_bits);
        k.set_bit(k_bits - 1, true);
        k.set_bit(0, false);
        if (&k % r).is_zero() {
            continue;
        }
        let p = r * &k + 1u32;
        if p.bits() == half && is_probable_prime(&p, KEYGEN_MR_ROUNDS) {
            break p;
        }
    };
    let q = loop {
        let q = gen_prime(half, rng);
        if q != p && !((&q - 1u32) % r).is_zero() {
            break q;
        }
    };
    BenalohKeyPair::from_primes(r, &p, &q, rng)
}

pub fn benaloh_encrypt(
    key: &BenalohPublicKey,
    m: &Natural,
    rng: &mut SeededRng,
) -> Result<BenalohCiphertext, HomomorphicError> {
    if m >= &key.r {
        return Err(HomomorphicError::MessageTooLarge { bound: key.r.clone() });
    }
    let u = random_unit(&key.n, rng);
    benaloh_encrypt_with_nonce(key, m, &u)
}

/// `c = y^m * u^r mod n` for a caller-chosen unit `u`.
pub fn benaloh_encrypt_with_nonce(
    key: &BenalohPublicKey,
    m: &Natural,
    u: &Natural,
) -> Result<BenalohCiphertext, HomomorphicError> {
    if m >= &key.r {
        return Err(HomomorphicError::MessageTooLarge { bound: key.r.clone() });
    }
    if u.is_zero() || u >= &key.n || !gcd(u, &key.n).is_one() {
        return Err(HomomorphicError::InvalidNonce);
    }
    let value = mod_pow(&key.y, m, &key.n)? * mod_pow(u, &key.r, &key.n)? % &key.n;
    Ok(BenalohCiphertext {
        value,
        fingerprint: key.fingerprint,
    })
}

/// Recovers `m` as the discrete log of `c^(phi/r)` to base `x`.
pub fn benaloh_decrypt(key: &BenalohKeyPair, c: &BenalohCiphertext) -> Result<Natural, HomomorphicError> {
    if c.fingerprint != key.fingerprint {
        return Err(HomomorphicError::WrongKey);
    }
    if c.value >= key.n {
        return Err(HomomorphicError::CiphertextOutOfRange);
    }
    let order = key.r.to_u64().expect("r checked at key construction");
    let a = mod_pow(&c.value, &(&key.phi / &key.r), &key.n)?;
    match discrete_log_bsgs(&key.x, &a, &key.n, order) {
        Ok(m) => Ok(Natural::from(m)),
        Err(NumTheoryError::LogNotFound { .. }) => Err(HomomorphicError::DecryptionFailure),
        Err(e) => Err(e.into()),
    }
}

/// Ciphertext of `(m1 + m2) mod r`.
pub fn benaloh_add(
    key: &BenalohPublicKey,
    c1: &BenalohCiphertext,
    c2: &BenalohCiphertext,
) -> Result<BenalohCiphertext, HomomorphicError> {
    if c1.fingerprint != key.fingerprint || c2.fingerprint != key.fingerprint {
        return Err(HomomorphicError::KeyMismatch);
    }
    Ok(BenalohCiphertext {
        value: &c1.value * &c2.value % &key.n,
        fingerprint: key.fingerprint,
    })
}
