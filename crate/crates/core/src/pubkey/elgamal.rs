use num_traits::{Num, One};

use super::groups::{MODP_1024, MODP_2048, MODP_3072, MODP_4096};
use super::{chunk_len_for_bits, join_chunks, split_chunks, BlockCiphertext, CipherBlocks, PubKeyError, Scheme};
use crate::numtheory::{gen_safe_prime, mod_inverse, mod_pow, Natural, SeededRng};

/// Group parameters: a safe prime `p` and a generator `g` of the subgroup
/// of quadratic residues (order `(p - 1) / 2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalParams {
    pub p: Natural,
    pub g: Natural,
    pub bits: u64,
}

impl ElGamalParams {
    /// Fresh safe prime `p = 2q + 1` of `bits` bits and `g = h^2 mod p` for a
    /// random `h`.
    pub fn generate(bits: u64, rng: &mut SeededRng) -> Result<Self, PubKeyError> {
        check_bits(bits)?;
        let (p, _q) = gen_safe_prime(bits, rng);
        let two = Natural::from(2u32);
        let top = &p - 2u32;
        let g = loop {
            let h = rng.gen_range(&two, &top);
            let g = &h * &h % &p;
            if !g.is_one() {
                break g;
            }
        };
        Ok(Self { p, g, bits })
    }

    /// The standard MODP group of this size, if one exists (1024, 2048,
    /// 3072 or 4096 bits), with `g = 2`.
    pub fn well_known(bits: u64) -> Option<Self> {
        let hex = match bits {
            1024 => MODP_1024,
            2048 => MODP_2048,
            3072 => MODP_3072,
            4096 => MODP_4096,
            _ => return None,
        };
        let p = Natural::from_str_radix(hex, 16).expect("valid group constant");
        Some(Self {
            p,
            g: Natural::from(2u32),
            bits,
        })
    }

    /// Well-known group when available, otherwise a generated one.
    pub fn well_known_or_generate(bits: u64, rng: &mut SeededRng) -> Result<Self, PubKeyError> {
        match Self::well_known(bits) {
            Some(params) => Ok(params),
            None => Self::generate(bits, rng),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalPublicKey {
    pub p: Natural,
    pub g: Natural,
    pub y: Natural,
    pub bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElGamalKeyPair {
    pub p: Natural,
    pub g: Natural,
    pub x: Natural,
    pub y: Natural,
    pub bits: u64,
}

impl ElGamalKeyPair {
    pub fn public(&self) -> ElGamalPublicKey {
        ElGamalPublicKey {
            p: self.p.clone(),
            g: self.g.clone(),
            y: self.y.clone(),
            bits: self.bits,
        }
    }

    pub fn params(&self) -> ElGamalParams {
        ElGamalParams {
            p: self.p.clone(),
            g: self.g.clone(),
            bits: self.bits,
        }
    }
}

fn check_bits(bits: u64) -> Result<(), PubKeyError> {
    if bits < 64 {
        return Err(PubKeyError::KeySize { bits, reason: "ElGamal needs at least 64 bits" });
    }
    Ok(())
}

/// Draws a private exponent in `[2, p - 2]`. Without `params` a new group is
/// generated first, which dominates the cost at large sizes.
pub fn elgamal_keygen(
    bits: u64,
    rng: &mut SeededRng,
    params: Option<&ElGamalParams>,
) -> Result<ElGamalKeyPair, PubKeyError> {
    check_bits(bits)?;
    let params = match params {
        Some(params) if params.bits != bits => {
            return Err(PubKeyError::ParamsMismatch {
                params: params.bits,
                requested: bits,
            })
        }
        Some(params) => params.clone(),
        None => ElGamalParams::generate(bits, rng)?,
    };
    let ElGamalParams { p, g, bits } = params;
    let x = rng.gen_range(&Natural::from(2u32), &(&p - 2u32));
    let y = mod_pow(&g, &x, &p)?;
    Ok(ElGamalKeyPair { p, g, x, y, bits })
}

pub fn elgamal_encrypt(
    key: &ElGamalPublicKey,
    plaintext: &[u8],
    rng: &mut SeededRng,
) -> Result<BlockCiphertext, PubKeyError> {
    if plaintext.is_empty() {
        return Err(PubKeyError::EmptyPlaintext);
    }
    let chunk_len = chunk_len_for_bits(key.bits);
    let (chunks, last_len) = split_chunks(plaintext, chunk_len);
    let low = Natural::from(2u32);
    let high = &key.p - 2u32;
    let mut pairs = Vec::with_capacity(chunks.len());
    for m in chunks {
        let k = rng.gen_range(&low, &high);
        let c1 = mod_pow(&key.g, &k, &key.p)?;
        let c2 = m * mod_pow(&key.y, &k, &key.p)? % &key.p;
        pairs.push((c1, c2));
    }
    Ok(BlockCiphertext {
        blocks: CipherBlocks::ElGamal(pairs),
        chunk_len,
        last_len,
    })
}

pub fn elgamal_decrypt(key: &ElGamalKeyPair, ct: &BlockCiphertext) -> Result<Vec<u8>, PubKeyError> {
    let CipherBlocks::ElGamal(pairs) = &ct.blocks else {
        return Err(PubKeyError::WrongScheme {
            expected: Scheme::ElGamal,
            found: ct.scheme(),
        });
    };
    if pairs.iter().any(|(c1, c2)| c1 >= &key.p || c2 >= &key.p) {
        return Err(PubKeyError::ComponentOutOfRange);
    }
    let plain = pairs
        .iter()
        .map(|(c1, c2)| {
            let shared = mod_pow(c1, &key.x, &key.p)?;
            Ok(c2 * mod_inverse(&shared, &key.p)? % &key.p)
        })
        .collect::<Result<Vec<_>, PubKeyError>>()?;
    join_chunks(plain, pairs.len(), ct.chunk_len, ct.last_len)
}
