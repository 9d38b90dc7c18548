//! Additively homomorphic encryption: Paillier over `Z_n` and Benaloh over
//! `Z_r` for a small prime `r`.
//!
//! In both schemes multiplying ciphertexts adds the underlying plaintexts.
//! Ciphertexts carry the SHA-1 of their key's modulus so that combining or
//! decrypting under the wrong key is reported instead of producing garbage.

mod benaloh;
mod paillier;

use std::fmt;

use thiserror::Error;

use crate::digest::sha1;
use crate::numtheory::{Natural, NumTheoryError};

pub use benaloh::{
    benaloh_add, benaloh_decrypt, benaloh_encrypt, benaloh_encrypt_with_nonce, benaloh_keygen,
    BenalohCiphertext, BenalohKeyPair, BenalohPublicKey, DEFAULT_BENALOH_R,
};
pub use paillier::{
    paillier_add, paillier_decrypt, paillier_encrypt, paillier_encrypt_with_nonce, paillier_keygen,
    paillier_scalar_mul, PaillierCiphertext, PaillierKeyPair, PaillierPublicKey,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomomorphicError {
    #[error("unsupported key size {bits}: {reason}")]
    KeySize { bits: u64, reason: &'static str },
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("invalid key primes: {0}")]
    InvalidPrimes(&'static str),
    #[error("message must be below {bound}")]
    MessageTooLarge { bound: Natural },
    #[error("nonce must be a unit modulo n")]
    InvalidNonce,
    #[error("ciphertext belongs to a different key")]
    WrongKey,
    #[error("ciphertexts were produced under different keys")]
    KeyMismatch,
    #[error("ciphertext value is out of range for this key")]
    CiphertextOutOfRange,
    #[error("decryption failed: no plaintext matches this ciphertext")]
    DecryptionFailure,
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

/// SHA-1 of the big-endian bytes of a key modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyFingerprint(pub [u8; 20]);

impl KeyFingerprint {
    pub fn of_modulus(n: &Natural) -> Self {
        let digest = sha1(&n.to_bytes_be());
        Self(digest.as_bytes().try_into().expect("SHA-1 is 20 bytes"))
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl fmt::Debug for KeyFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KeyFingerprint({})", self.to_hex())
    }
}
