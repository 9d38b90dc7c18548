//! MD5 and SHA-1, one-shot and streaming.
//!
//! Both are Merkle-Damgard constructions over 64-byte blocks and share the
//! buffering and length-padding logic in [`HashState`]; only the compression
//! function and the byte order of the length trailer differ.

mod md5;
mod sha1;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const BLOCK_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HashAlgorithm {
    #[serde(rename = "MD5")]
    Md5,
    #[serde(rename = "SHA1")]
    Sha1,
}

impl HashAlgorithm {
    pub fn output_len(self) -> usize {
        match self {
            HashAlgorithm::Md5 => 16,
            HashAlgorithm::Sha1 => 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigestError {
    #[error("hash state already finalized")]
    Finalized,
}

/// A finished hash value: 16 bytes for MD5, 20 for SHA-1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digest {
    algorithm: HashAlgorithm,
    bytes: Vec<u8>,
}

impl Digest {
    pub fn algorithm(&self) -> HashAlgorithm {
        self.algorithm
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.algorithm, self.to_hex())
    }
}

#[derive(Debug, Clone)]
enum Chaining {
    Md5([u32; 4]),
    Sha1([u32; 5]),
}

/// Incremental hashing state.
///
/// Holds the chaining value, up to one partial block, and the running
/// message length. After [`HashState::finalize`] further updates are
/// rejected.
#[derive(Debug, Clone)]
pub struct HashState {
    chaining: Chaining,
    buffer: [u8; BLOCK_LEN],
    buffered: usize,
    length_bytes: u64,
    finalized: bool,
}

impl HashState {
    pub fn new(algorithm: HashAlgorithm) -> Self {
        let chaining = match algorithm {
            HashAlgorithm::Md5 => Chaining::Md5(md5::INITIAL_STATE),
            HashAlgorithm::Sha1 => Chaining::Sha1(sha1::INITIAL_STATE),
        };
        Self {
            chaining,
            buffer: [0; BLOCK_LEN],
            buffered: 0,
            length_bytes: 0,
            finalized: false,
        }
    }

    pub fn algorithm(&self) -> HashAlgorithm {
        match self.chaining {
            Chaining::Md5(_) => HashAlgorithm::Md5,
            Chaining::Sha1(_) => HashAlgorithm::Sha1,
        }
    }

    fn compress(&mut self, block: &[u8; BLOCK_LEN]) {
        match &mut self.chaining {
            Chaining::Md5(state) => md5::compress(state, block),
            Chaining::Sha1(state) => sha1::compress(state, block),
        }
    }

    pub fn update(&mut self, mut data: &[u8]) -> Result<(), DigestError> {
        if self.finalized {
            return Err(DigestError::Finalized);
        }
        self.length_bytes = self.length_bytes.wrapping_add(data.len() as u64);

        if self.buffered > 0 {
            let take = (BLOCK_LEN - self.buffered).min(data.len());
            self.buffer[self.buffered..self.buffered + take].copy_from_slice(&data[..take]);
            self.buffered += take;
            data = &data[take..];
            if self.buffered < BLOCK_LEN {
                return Ok(());
            }
            let block = self.buffer;
            self.compress(&block);
            self.buffered = 0;
        }

        let mut blocks = data.chunks_exact(BLOCK_LEN);
        for block in &mut blocks {
            self.compress(block.try_into().expect("exact chunk"));
        }
        let rest = blocks.remainder();
        self.buffer[..rest.len()].copy_from_slice(rest);
        self.buffered = rest.len();
        Ok(())
    }

    /// Applies the padding, emits the digest and locks the state.
    pub fn finalize(&mut self) -> Result<Digest, DigestError> {
        if self.finalized {
            return Err(DigestError::Finalized);
        }
        let bit_len = self.length_bytes.wrapping_mul(8);
        let trailer = match self.chaining {
            Chaining::Md5(_) => bit_len.to_le_bytes(),
            Chaining::Sha1(_) => bit_len.to_be_bytes(),
        };

        let mut tail = [0u8; 2 * BLOCK_LEN];
        tail[..self.buffered].copy_from_slice(&self.buffer[..self.buffered]);
        tail[self.buffered] = 0x80;
        let tail_len = if self.buffered < BLOCK_LEN - 8 {
            BLOCK_LEN
        } else {
            2 * BLOCK_LEN
        };
        tail[tail_len - 8..tail_len].copy_from_slice(&trailer);
        for block in tail[..tail_len].chunks_exact(BLOCK_LEN) {
            self.compress(block.try_into().expect("exact chunk"));
        }
        self.finalized = true;

        let bytes = match &self.chaining {
            Chaining::Md5(state) => state.iter().flat_map(|w| w.to_le_bytes()).collect(),
            Chaining::Sha1(state) => state.iter().flat_map(|w| w.to_be_bytes()).collect(),
        };
        Ok(Digest {
            algorithm: self.algorithm(),
            bytes,
        })
    }
}

pub fn hash(algorithm: HashAlgorithm, message: &[u8]) -> Digest {
    let mut state = HashState::new(algorithm);
    state.update(message).expect("fresh state");
    state.finalize().expect("fresh state")
}

pub fn md5(message: &[u8]) -> Digest {
    hash(HashAlgorithm::Md5, message)
}

pub fn sha1(message: &[u8]) -> Digest {
    hash(HashAlgorithm::Sha1, message)
}
