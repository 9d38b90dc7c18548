use num_traits::{One, Zero};

use super::{HomomorphicError, KeyFingerprint};
use crate::numtheory::{gcd, gen_prime, lcm, mod_inverse, mod_pow, Natural, SeededRng};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierPublicKey {
    pub n: Natural,
    pub n_sq: Natural,
    pub g: Natural,
    pub bits: u64,
    pub fingerprint: KeyFingerprint,
}

/// Paillier key with `g = n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierKeyPair {
    pub n: Natural,
    pub n_sq: Natural,
    pub g: Natural,
    pub lambda: Natural,
    pub mu: Natural,
    pub p: Natural,
    pub q: Natural,
    pub bits: u64,
    pub fingerprint: KeyFingerprint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierCiphertext {
    pub value: Natural,
    pub fingerprint: KeyFingerprint,
}

// L(u) = (u - 1) / n
fn l_function(u: &Natural, n: &Natural) -> Natural {
    (u - 1u32) / n
}

impl PaillierKeyPair {
    /// Builds the key from two distinct primes. Exposed so small textbook
    /// keys (e.g. `p = 3, q = 5`) can be constructed directly.
    pub fn from_primes(p: &Natural, q: &Natural) -> Result<Self, HomomorphicError> {
        if p == q {
            return Err(HomomorphicError::InvalidPrimes("p and q must differ"));
        }
        if p < &Natural::from(2u32) || q < &Natural::from(2u32) {
            return Err(HomomorphicError::InvalidPrimes("primes must be at least 2"));
        }
        let n = p * q;
        let p1 = p - 1u32;
        let q1 = q - 1u32;
        if !gcd(&n, &(&p1 * &q1)).is_one() {
            return Err(HomomorphicError::InvalidPrimes("gcd(n, (p-1)(q-1)) must be 1"));
        }
        let n_sq = &n * &n;
        let g = &n + 1u32;
        let lambda = lcm(&p1, &q1)?;
        let mu = mod_inverse(&l_function(&mod_pow(&g, &lambda, &n_sq)?, &n), &n)?;
        Ok(Self {
            bits: n.bits(),
            fingerprint: KeyFingerprint::of_modulus(&n),
            n,
            n_sq,
            g,
            lambda,
            mu,
            p: p.clone(),
            q: q.clone(),
        })
    }

    pub fn public(&self) -> PaillierPublicKey {
        PaillierPublicKey {
            n: self.n.clone(),
            n_sq: self.n_sq.clone(),
            g: self.g.clone(),
            bits: self.bits,
            fingerprint: self.fingerprint,
        }
    }
}

impl PaillierPublicKey {
    /// Rebuilds the public key from `n` alone.
    pub fn from_modulus(n: Natural) -> Self {
        Self {
            n_sq: &n * &n,
            g: &n + 1u32,
            bits: n.bits(),
            fingerprint: KeyFingerprint::of_modulus(&n),
            n,
        }
    }

    fn check(&self, c: &PaillierCiphertext) -> Result<(), HomomorphicError> {
        if c.fingerprint != self.fingerprint {
            return Err(HomomorphicError::KeyMismatch);
        }
        Ok(())
    }
}

pub fn paillier_keygen(bits: u64, rng: &mut SeededRng) -> Result<PaillierKeyPair, HomomorphicError> {
    if bits < 16 || !bits.is_multiple_of(2) {
        return Err(HomomorphicError::KeySize {
            bits,
            reason: "Paillier needs an even size of at least 16 bits",
        });
    }
    loop {
        let p = gen_prime(bits / 2, rng);
        let q = gen_prime(bits / 2, rng);
        match PaillierKeyPair::from_primes(&p, &q) {
            Ok(key) => return Ok(key),
            Err(HomomorphicError::InvalidPrimes(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Encrypts `m < n` with a fresh random unit `u`.
pub fn paillier_encrypt(
    key: &PaillierPublicKey,
    m: &Natural,
    rng: &mut SeededRng,
) -> Result<PaillierCiphertext, HomomorphicError> {
    if m >= &key.n {
        return Err(HomomorphicError::MessageTooLarge { bound: key.n.clone() });
    }
    let one = Natural::one();
    let top = &key.n - 1u32;
    let u = loop {
        let u = rng.gen_range(&one, &top);
        if gcd(&u, &key.n).is_one() {
            break u;
        }
    };
    paillier_encrypt_with_nonce(key, m, &u)
}

/// `c = g^m * u^n mod n^2` for a caller-chosen `u`.
pub fn paillier_encrypt_with_nonce(
    key: &PaillierPublicKey,
    m: &Natural,
    u: &Natural,
) -> Result<PaillierCiphertext, HomomorphicError> {
    if m >= &key.n {
        return Err(HomomorphicError::MessageTooLarge { bound: key.n.clone() });
    }
    if u.is_zero() || u >= &key.n || !gcd(u, &key.n).is_one() {
        return Err(HomomorphicError::InvalidNonce);
    }
    // g = n + 1, so g^m = 1 + m*n (mod n^2)
    let g_m = (m * &key.n + 1u32) % &key.n_sq;
    let value = g_m * mod_pow(u, &key.n, &key.n_sq)? % &key.n_sq;
    Ok(PaillierCiphertext {
        value,
        fingerprint: key.fingerprint,
    })
}

pub fn paillier_decrypt(key: &PaillierKeyPair, c: &PaillierCiphertext) -> Result<Natural, HomomorphicError> {
    if c.fingerprint != key.fingerprint {
        return Err(HomomorphicError::WrongKey);
    }
    if c.value >= key.n_sq {
        return Err(HomomorphicError::CiphertextOutOfRange);
    }
    let u = mod_pow(&c.value, &key.lambda, &key.n_sq)?;
    Ok(l_function(&u, &key.n) * &key.mu % &key.n)
}

/// Ciphertext of `(m1 + m2) mod n`.
pub fn paillier_add(
    key: &PaillierPublicKey,
    c1: &PaillierCiphertext,
    c2: &PaillierCiphertext,
) -> Result<PaillierCiphertext, HomomorphicError> {
    key.check(c1)?;
    key.check(c2)?;
    Ok(PaillierCiphertext {
        value: &c1.value * &c2.value % &key.n_sq,
        fingerprint: key.fingerprint,
    })
}

/// Ciphertext of `k * m mod n`.
pub fn paillier_scalar_mul(
    key: &PaillierPublicKey,
    c: &PaillierCiphertext,
    k: &Natural,
) -> Result<PaillierCiphertext, HomomorphicError> {
    key.check(c)?;
    Ok(PaillierCiphertext {
        value: mod_pow(&c.value, k, &key.n_sq)?,
        fingerprint: key.fingerprint,
    })
}
