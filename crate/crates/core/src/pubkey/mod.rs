//! Textbook RSA and ElGamal over byte streams.
//!
//! Plaintexts are split into fixed-width big-endian chunks of
//! `floor(bits / 8) - 1` bytes so that every chunk value is strictly below
//! the modulus. No padding scheme is applied; these are the raw algorithms.

mod elgamal;
mod groups;
mod rsa;

use num_traits::Zero;
use thiserror::Error;

use crate::numtheory::{Natural, NumTheoryError};

pub use elgamal::{
    elgamal_decrypt, elgamal_encrypt, elgamal_keygen, ElGamalKeyPair, ElGamalParams,
    ElGamalPublicKey,
};
pub use rsa::{rsa_decrypt, rsa_encrypt, rsa_keygen, RsaKeyPair, RsaPublicKey, DEFAULT_PUBLIC_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PubKeyError {
    #[error("unsupported key size {bits}: {reason}")]
    KeySize { bits: u64, reason: &'static str },
    #[error("plaintext must not be empty")]
    EmptyPlaintext,
    #[error("expected a {expected:?} ciphertext, got {found:?}")]
    WrongScheme { expected: Scheme, found: Scheme },
    #[error("ciphertext component is not below the modulus")]
    ComponentOutOfRange,
    #[error("decrypted chunk does not fit in {len} bytes")]
    ChunkOverflow { len: usize },
    #[error("malformed ciphertext: {0}")]
    Malformed(&'static str),
    #[error("group parameters are for {params} bits, requested {requested}")]
    ParamsMismatch { params: u64, requested: u64 },
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Rsa,
    ElGamal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CipherBlocks {
    Rsa(Vec<Natural>),
    ElGamal(Vec<(Natural, Natural)>),
}

/// Chunked asymmetric ciphertext.
///
/// `chunk_len` is the plaintext width of every chunk but the last, which
/// carries `last_len` bytes (1..=chunk_len).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCiphertext {
    pub blocks: CipherBlocks,
    pub chunk_len: usize,
    pub last_len: usize,
}

impl BlockCiphertext {
    pub fn scheme(&self) -> Scheme {
        match self.blocks {
            CipherBlocks::Rsa(_) => Scheme::Rsa,
            CipherBlocks::ElGamal(_) => Scheme::ElGamal,
        }
    }

    pub fn block_count(&self) -> usize {
        match &self.blocks {
            CipherBlocks::Rsa(b) => b.len(),
            CipherBlocks::ElGamal(b) => b.len(),
        }
    }

    /// Length of the plaintext this ciphertext decrypts to.
    pub fn plaintext_len(&self) -> usize {
        match self.block_count() {
            0 => 0,
            count => (count - 1) * self.chunk_len + self.last_len,
        }
    }
}

/// Plaintext chunk width for a modulus of `bits` bits.
pub fn chunk_len_for_bits(bits: u64) -> usize {
    (bits / 8) as usize - 1
}

/// Splits `data` into big-endian chunk values; returns them with the length
/// of the final chunk.
pub(crate) fn split_chunks(data: &[u8], chunk_len: usize) -> (Vec<Natural>, usize) {
    let values = data
        .chunks(chunk_len)
        .map(Natural::from_bytes_be)
        .collect();
    let last_len = match data.len() % chunk_len {
        0 => chunk_len,
        rem => rem,
    };
    (values, last_len)
}

/// Re-serializes chunk values to fixed-width big-endian bytes.
pub(crate) fn join_chunks<I>(
    values: I,
    count: usize,
    chunk_len: usize,
    last_len: usize,
) -> Result<Vec<u8>, PubKeyError>
where
    I: IntoIterator<Item = Natural>,
{
    if count == 0 {
        return Err(PubKeyError::Malformed("no blocks"));
    }
    if last_len == 0 || last_len > chunk_len {
        return Err(PubKeyError::Malformed("last chunk length out of range"));
    }
    let mut out = Vec::with_capacity((count - 1) * chunk_len + last_len);
    for (i, value) in values.into_iter().enumerate() {
        let width = if i + 1 == count { last_len } else { chunk_len };
        let bytes = if value.is_zero() {
            Vec::new()
        } else {
            value.to_bytes_be()
        };
        if bytes.len() > width {
            return Err(PubKeyError::ChunkOverflow { len: width });
        }
        out.resize(out.len() + width - bytes.len(), 0);
        out.extend_from_slice(&bytes);
    }
    Ok(out)
}
