//! AES-128 and DES block ciphers plus CBC mode with PKCS#7 padding.

mod aes;
mod cbc;
mod des;

use thiserror::Error;

pub use aes::AesKey128;
pub use cbc::{cbc_decrypt, cbc_encrypt, pkcs7_pad, pkcs7_unpad, CbcCiphertext};
pub use des::DesKey;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockCipherError {
    #[error("key must be {expected} bytes, got {got}")]
    KeyLength { expected: usize, got: usize },
    #[error("block must be {expected} bytes, got {got}")]
    BlockLength { expected: usize, got: usize },
    #[error("IV must be {expected} bytes, got {got}")]
    IvLength { expected: usize, got: usize },
    #[error("ciphertext body of {len} bytes is not a positive multiple of {block_len}")]
    Misaligned { len: usize, block_len: usize },
    #[error("invalid PKCS#7 padding")]
    Padding,
}

/// Raw single-block transform used by the chaining mode.
///
/// `block` is always exactly [`BlockCipher::block_len`] bytes; the length
/// checked public entry points live on the key types themselves.
pub trait BlockCipher {
    fn block_len(&self) -> usize;
    fn encrypt_block_mut(&self, block: &mut [u8]);
    fn decrypt_block_mut(&self, block: &mut [u8]);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricAlgorithm {
    Aes128,
    Des,
}

impl SymmetricAlgorithm {
    pub fn key_len(self) -> usize {
        match self {
            SymmetricAlgorithm::Aes128 => 16,
            SymmetricAlgorithm::Des => 8,
        }
    }

    pub fn block_len(self) -> usize {
        match self {
            SymmetricAlgorithm::Aes128 => 16,
            SymmetricAlgorithm::Des => 8,
        }
    }
}

/// Either supported cipher behind one type, for callers that pick at runtime.
#[derive(Debug, Clone)]
pub enum SymmetricKey {
    Aes128(AesKey128),
    Des(DesKey),
}

impl SymmetricKey {
    pub fn new(algorithm: SymmetricAlgorithm, key: &[u8]) -> Result<Self, BlockCipherError> {
        Ok(match algorithm {
            SymmetricAlgorithm::Aes128 => SymmetricKey::Aes128(AesKey128::new(key)?),
            SymmetricAlgorithm::Des => SymmetricKey::Des(DesKey::new(key)?),
        })
    }

    pub fn algorithm(&self) -> SymmetricAlgorithm {
        match self {
            SymmetricKey::Aes128(_) => SymmetricAlgorithm::Aes128,
            SymmetricKey::Des(_) => SymmetricAlgorithm::Des,
        }
    }

    pub fn key_bytes(&self) -> &[u8] {
        match self {
            SymmetricKey::Aes128(k) => k.key_bytes(),
            SymmetricKey::Des(k) => k.key_bytes(),
        }
    }
}

impl BlockCipher for SymmetricKey {
    fn block_len(&self) -> usize {
        match self {
            SymmetricKey::Aes128(k) => k.block_len(),
            SymmetricKey::Des(k) => k.block_len(),
        }
    }

    fn encrypt_block_mut(&self, block: &mut [u8]) {
        match self {
            SymmetricKey::Aes128(k) => k.encrypt_block_mut(block),
            SymmetricKey::Des(k) => k.encrypt_block_mut(block),
        }
    }

    fn decrypt_block_mut(&self, block: &mut [u8]) {
        match self {
            SymmetricKey::Aes128(k) => k.decrypt_block_mut(block),
            SymmetricKey::Des(k) => k.decrypt_block_mut(block),
        }
    }
}
