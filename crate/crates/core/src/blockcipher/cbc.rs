use super::{BlockCipher, BlockCipherError};

/// CBC output: the IV followed by a padded, block-aligned body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbcCiphertext {
    pub iv: Vec<u8>,
    pub body: Vec<u8>,
}

impl CbcCiphertext {
    /// `iv || body`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.iv.len() + self.body.len());
        out.extend_from_slice(&self.iv);
        out.extend_from_slice(&self.body);
        out
    }

    pub fn from_bytes(bytes: &[u8], block_len: usize) -> Result<Self, BlockCipherError> {
        if bytes.len() < 2 * block_len || !bytes.len().is_multiple_of(block_len) {
            return Err(BlockCipherError::Misaligned {
                len: bytes.len().saturating_sub(block_len),
                block_len,
            });
        }
        let (iv, body) = bytes.split_at(block_len);
        Ok(Self {
            iv: iv.to_vec(),
            body: body.to_vec(),
        })
    }
}

pub fn pkcs7_pad(data: &[u8], block_len: usize) -> Vec<u8> {
    let pad = block_len - data.len() % block_len;
    let mut out = Vec::with_capacity(data.len() + pad);
    out.extend_from_slice(data);
    out.resize(data.len() + pad, pad as u8);
    out
}

pub fn pkcs7_unpad(data: &[u8], block_len: usize) -> Result<&[u8], BlockCipherError> {
    let &last = data.last().ok_or(BlockCipherError::Padding)?;
    let pad = last as usize;
    if pad == 0 || pad > block_len || pad > data.len() {
        return Err(BlockCipherError::Padding);
    }
    let (body, tail) = data.split_at(data.len() - pad);
    if tail.iter().any(|&b| b != last) {
        return Err(BlockCipherError::Padding);
    }
    Ok(body)
}

pub fn cbc_encrypt<C: BlockCipher + ?Sized>(
    cipher: &C,
    iv: &[u8],
    plaintext: &[u8],
) -> Result<CbcCiphertext, BlockCipherError> {
    let block_len = cipher.block_len();
    if iv.len() != block_len {
        return Err(BlockCipherError::IvLength {
            expected: block_len,
            got: iv.len(),
        });
    }
    let mut body = pkcs7_pad(plaintext, block_len);
    let mut prev = iv.to_vec();
    for block in body.chunks_exact_mut(block_len) {
        for (b, p) in block.iter_mut().zip(&prev) {
            *b ^= p;
        }
        cipher.encrypt_block_mut(block);
        prev.copy_from_slice(block);
    }
    Ok(CbcCiphertext {
        iv: iv.to_vec(),
        body,
    })
}

pub fn cbc_decrypt<C: BlockCipher + ?Sized>(
    cipher: &C,
    ciphertext: &CbcCiphertext,
) -> Result<Vec<u8>, BlockCipherError> {
    let block_len = cipher.block_len();
    if ciphertext.iv.len() != block_len {
        return Err(BlockCipherError::IvLength {
            expected: block_len,
            got: ciphertext.iv.len(),
        });
    }
    let body = &ciphertext.body;
    if body.is_empty() || !body.len().is_multiple_of(block_len) {
        return Err(BlockCipherError::Misaligned {
            len: body.len(),
            block_len,
        });
    }
    let mut out = body.clone();
    let mut prev = ciphertext.iv.as_slice();
    for (plain, cipher_block) in out.chunks_exact_mut(block_len).zip(body.chunks_exact(block_len)) {
        cipher.decrypt_block_mut(plain);
        for (b, p) in plain.iter_mut().zip(prev) {
            *b ^= p;
        }
        prev = cipher_block;
    }
    let len = pkcs7_unpad(&out, block_len)?.len();
    out.truncate(len);
    Ok(out)
}
