use num_traits::One;

use super::{chunk_len_for_bits, join_chunks, split_chunks, BlockCiphertext, CipherBlocks, PubKeyError, Scheme};
use crate::numtheory::{gcd, gen_prime, mod_inverse, mod_pow, Natural, SeededRng};

pub const DEFAULT_PUBLIC_EXPONENT: u32 = 65537;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaPublicKey {
    pub n: Natural,
    pub e: Natural,
    pub bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaKeyPair {
    pub n: Natural,
    pub e: Natural,
    pub d: Natural,
    pub p: Natural,
    pub q: Natural,
    pub bits: u64,
}

impl RsaKeyPair {
    pub fn public(&self) -> RsaPublicKey {
        RsaPublicKey {
            n: self.n.clone(),
            e: self.e.clone(),
            bits: self.bits,
        }
    }

    pub fn phi(&self) -> Natural {
        (&self.p - 1u32) * (&self.q - 1u32)
    }
}

/// Generates an RSA key with a modulus of exactly `bits` bits.
///
/// `bits` must be even and at least 64. The two primes have `bits / 2` bits
/// each; the pair is redrawn until the product reaches full width.
pub fn rsa_keygen(bits: u64, rng: &mut SeededRng) -> Result<RsaKeyPair, PubKeyError> {
    if bits < 64 {
        return Err(PubKeyError::KeySize { bits, reason: "RSA needs at least 64 bits" });
    }
    if !bits.is_multiple_of(2) {
        return Err(PubKeyError::KeySize { bits, reason: "RSA modulus size must be even" });
    }
    let half = bits / 2;
    // both primes are redrawn together: a p just above 2^(half-1) would
    // leave almost no q that reaches full width
    let (n, p, q) = loop {
        let p = gen_prime(half, rng);
        let q = gen_prime(half, rng);
        let n = &p * &q;
        if p != q && n.bits() == bits {
            break (n, p, q);
        }
    };
    let phi = (&p - 1u32) * (&q - 1u32);
    let mut e = Natural::from(DEFAULT_PUBLIC_EXPONENT);
    while !gcd(&e, &phi).is_one() {
        e += 2u32;
    }
    let d = mod_inverse(&e, &phi)?;
    Ok(RsaKeyPair { n, e, d, p, q, bits })
}

pub fn rsa_encrypt(key: &RsaPublicKey, plaintext: &[u8]) -> Result<BlockCiphertext, PubKeyError> {
    if plaintext.is_empty() {
        return Err(PubKeyError::EmptyPlaintext);
    }
    let chunk_len = chunk_len_for_bits(key.bits);
    let (chunks, last_len) = split_chunks(plaintext, chunk_len);
    let blocks = chunks
        .iter()
        .map(|m| mod_pow(m, &key.e, &key.n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockCiphertext {
        blocks: CipherBlocks::Rsa(blocks),
        chunk_len,
        last_len,
    })
}

pub fn rsa_decrypt(key: &RsaKeyPair, ct: &BlockCiphertext) -> Result<Vec<u8>, PubKeyError> {
    let CipherBlocks::Rsa(blocks) = &ct.blocks else {
        return Err(PubKeyError::WrongScheme {
            expected: Scheme::Rsa,
            found: ct.scheme(),
        });
    };
    if blocks.iter().any(|c| c >= &key.n) {
        return Err(PubKeyError::ComponentOutOfRange);
    }
    let plain = blocks
        .iter()
        .map(|c| mod_pow(c, &key.d, &key.n))
        .collect::<Result<Vec<_>, _>>()?;
    join_chunks(plain, blocks.len(), ct.chunk_len, ct.last_len)
}
