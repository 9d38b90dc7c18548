//! Independent reference implementations used only by tests.

use aes::cipher::{BlockCipherDecrypt, BlockCipherEncrypt, KeyInit};
use md5::Digest as _;

pub fn aes128_encrypt(key: &[u8], block: &[u8; 16]) -> [u8; 16] {
    let cipher = aes::Aes128::new_from_slice(key).unwrap();
    let mut b = aes::Block::from(*block);
    cipher.encrypt_block(&mut b);
    b.into()
}

pub fn aes128_decrypt(key: &[u8], block: &[u8; 16]) -> [u8; 16] {
    let cipher = aes::Aes128::new_from_slice(key).unwrap();
    let mut b = aes::Block::from(*block);
    cipher.decrypt_block(&mut b);
    b.into()
}

pub fn des_encrypt(key: &[u8], block: &[u8; 8]) -> [u8; 8] {
    let cipher = des::Des::new_from_slice(key).unwrap();
    let mut b = des::cipher::Block::<des::Des>::from(*block);
    cipher.encrypt_block(&mut b);
    b.into()
}

pub fn des_decrypt(key: &[u8], block: &[u8; 8]) -> [u8; 8] {
    let cipher = des::Des::new_from_slice(key).unwrap();
    let mut b = des::cipher::Block::<des::Des>::from(*block);
    cipher.decrypt_block(&mut b);
    b.into()
}

pub fn md5(msg: &[u8]) -> Vec<u8> {
    md5::Md5::digest(msg).to_vec()
}

pub fn sha1(msg: &[u8]) -> Vec<u8> {
    sha1::Sha1::digest(msg).to_vec()
}

/// CBC with PKCS#7 built from the reference AES block function.
pub fn aes128_cbc_encrypt(key: &[u8], iv: &[u8; 16], msg: &[u8]) -> Vec<u8> {
    let pad = 16 - msg.len() % 16;
    let mut data = msg.to_vec();
    data.extend(std::iter::repeat_n(pad as u8, pad));
    let mut prev = *iv;
    let mut out = Vec::with_capacity(data.len());
    for chunk in data.chunks(16) {
        let mut block = [0u8; 16];
        for i in 0..16 {
            block[i] = chunk[i] ^ prev[i];
        }
        prev = aes128_encrypt(key, &block);
        out.extend_from_slice(&prev);
    }
    out
}
