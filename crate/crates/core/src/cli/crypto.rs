//! Key files and whole-file encryption for the `crypto` subcommands.
//!
//! Keys are JSON with an `algorithm` tag and hex-encoded `public` and
//! `private` sections. Block-cipher output is the raw `iv || body`; the
//! other schemes write a JSON ciphertext listing hex components per block.

use std::collections::BTreeMap;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::bench::Algorithm;
use crate::blockcipher::{cbc_decrypt, cbc_encrypt, CbcCiphertext, SymmetricAlgorithm, SymmetricKey};
use crate::homomorphic::{
    benaloh_decrypt, benaloh_encrypt, benaloh_keygen, paillier_decrypt, paillier_encrypt, paillier_keygen,
    BenalohCiphertext, BenalohKeyPair, BenalohPublicKey, KeyFingerprint, PaillierCiphertext, PaillierKeyPair,
    PaillierPublicKey, DEFAULT_BENALOH_R,
};
use crate::numtheory::{Natural, SeededRng};
use crate::pubkey::{
    elgamal_decrypt, elgamal_encrypt, elgamal_keygen, join_chunks, rsa_decrypt, rsa_encrypt, rsa_keygen,
    split_chunks, BlockCiphertext, CipherBlocks, ElGamalKeyPair, ElGamalParams, ElGamalPublicKey, RsaKeyPair,
    RsaPublicKey,
};

type Fields = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyFile {
    pub algorithm: Algorithm,
    pub bits: u64,
    pub public: Fields,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub private: Option<Fields>,
}

impl KeyFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("key serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Runtime(format!("malformed key file: {e}")))
    }

    /// Copy without the private section.
    pub fn public_only(&self) -> Self {
        Self {
            private: None,
            ..self.clone()
        }
    }

    fn public_num(&self, name: &str) -> Result<Natural, CliError> {
        field(&self.public, name)
    }

    fn private_num(&self, name: &str) -> Result<Natural, CliError> {
        let private = self
            .private
            .as_ref()
            .ok_or_else(|| CliError::Runtime(format!("{} key file has no private section", self.algorithm)))?;
        field(private, name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CiphertextFile {
    pub algorithm: Algorithm,
    pub key_fingerprint: String,
    pub chunk_len: usize,
    pub last_len: usize,
    pub blocks: Vec<Vec<String>>,
}

impl CiphertextFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("ciphertext serializes");
        s.push('\n');
        s
    }
}

fn hex_num(n: &Natural) -> String {
    n.to_str_radix(16)
}

fn parse_hex(name: &str, text: &str) -> Result<Natural, CliError> {
    if text.is_empty() {
        return Err(CliError::Runtime(format!("field {name:?} is empty")));
    }
    Natural::from_str_radix(text, 16).map_err(|_| CliError::Runtime(format!("field {name:?} is not hex")))
}

fn field(fields: &Fields, name: &str) -> Result<Natural, CliError> {
    let text = fields
        .get(name)
        .ok_or_else(|| CliError::Runtime(format!("key file lacks field {name:?}")))?;
    parse_hex(name, text)
}

fn fields<const N: usize>(pairs: [(&str, String); N]) -> Fields {
    pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

fn symmetric_alg(a: Algorithm) -> Option<SymmetricAlgorithm> {
    match a {
        Algorithm::Aes => Some(SymmetricAlgorithm::Aes128),
        Algorithm::Des => Some(SymmetricAlgorithm::Des),
        _ => None,
    }
}

/// Generates a key; every random choice comes from `seed`.
pub fn keygen(algorithm: Algorithm, bits: Option<u64>, seed: u64) -> Result<KeyFile, CliError> {
    let mut rng = SeededRng::new(seed);
    let default = algorithm
        .default_key_bits()
        .ok_or_else(|| CliError::Usage(format!("{algorithm} is a hash and has no keys")))?;
    let bits = bits.unwrap_or(default);
    if let Some(sym) = symmetric_alg(algorithm) {
        if bits != default {
            return Err(CliError::Usage(format!("{algorithm} keys are {default} bits")));
        }
        let mut key = vec![0u8; sym.key_len()];
        rng.fill_bytes(&mut key);
        return Ok(KeyFile {
            algorithm,
            bits,
            public: Fields::new(),
            private: Some(fields([("key", hex::encode(key))])),
        });
    }
    let file = match algorithm {
        Algorithm::Rsa => {
            let k = rsa_keygen(bits, &mut rng).map_err(CliError::pubkey)?;
            KeyFile {
                algorithm,
                bits: k.bits,
                public: fields([("n", hex_num(&k.n)), ("e", hex_num(&k.e))]),
                private: Some(fields([("d", hex_num(&k.d)), ("p", hex_num(&k.p)), ("q", hex_num(&k.q))])),
            }
        }
        Algorithm::ElGamal => {
            let params = ElGamalParams::well_known_or_generate(bits, &mut rng).map_err(CliError::pubkey)?;
            let k = elgamal_keygen(bits, &mut rng, Some(&params)).map_err(CliError::pubkey)?;
            KeyFile {
                algorithm,
                bits: k.bits,
                public: fields([("p", hex_num(&k.p)), ("g", hex_num(&k.g)), ("y", hex_num(&k.y))]),
                private: Some(fields([("x", hex_num(&k.x))])),
            }
        }
        Algorithm::Paillier => {
            let k = paillier_keygen(bits, &mut rng).map_err(CliError::homomorphic)?;
            KeyFile {
                algorithm,
                bits: k.bits,
                public: fields([("n", hex_num(&k.n))]),
                private: Some(fields([("p", hex_num(&k.p)), ("q", hex_num(&k.q))])),
            }
        }
        _ => {
            let r = Natural::from(DEFAULT_BENALOH_R);
            let k = benaloh_keygen(&r, bits, &mut rng).map_err(CliError::homomorphic)?;
            KeyFile {
                algorithm,
                bits: k.bits,
                public: fields([("r", hex_num(&k.r)), ("n", hex_num(&k.n)), ("y", hex_num(&k.y))]),
                private: Some(fields([("p", hex_num(&k.p)), ("q", hex_num(&k.q))])),
            }
        }
    };
    Ok(file)
}

fn symmetric_key(key: &KeyFile, sym: SymmetricAlgorithm) -> Result<SymmetricKey, CliError> {
    let private = key
        .private
        .as_ref()
        .and_then(|p| p.get("key"))
        .ok_or_else(|| CliError::Runtime(format!("{} key file lacks private key bytes", key.algorithm)))?;
    let bytes = hex::decode(private).map_err(|_| CliError::Runtime("field \"key\" is not hex".to_owned()))?;
    SymmetricKey::new(sym, &bytes).map_err(CliError::block_cipher)
}

fn rsa_public(key: &KeyFile) -> Result<RsaPublicKey, CliError> {
    let n = key.public_num("n")?;
    Ok(RsaPublicKey {
        bits: n.bits(),
        e: key.public_num("e")?,
        n,
    })
}

fn rsa_private(key: &KeyFile) -> Result<RsaKeyPair, CliError> {
    let public = rsa_public(key)?;
    let (p, q) = (key.private_num("p")?, key.private_num("q")?);
    if &p * &q != public.n {
        return Err(CliError::Runtime("RSA key file: p * q differs from n".to_owned()));
    }
    Ok(RsaKeyPair {
        d: key.private_num("d")?,
        p,
        q,
        n: public.n,
        e: public.e,
        bits: public.bits,
    })
}

fn elgamal_public(key: &KeyFile) -> Result<ElGamalPublicKey, CliError> {
    let p = key.public_num("p")?;
    Ok(ElGamalPublicKey {
        bits: p.bits(),
        g: key.public_num("g")?,
        y: key.public_num("y")?,
        p,
    })
}

fn elgamal_private(key: &KeyFile) -> Result<ElGamalKeyPair, CliError> {
    let public = elgamal_public(key)?;
    Ok(ElGamalKeyPair {
        x: key.private_num("x")?,
        p: public.p,
        g: public.g,
        y: public.y,
        bits: public.bits,
    })
}

fn benaloh_public(key: &KeyFile) -> Result<BenalohPublicKey, CliError> {
    Ok(BenalohPublicKey::new(
        key.public_num("r")?,
        key.public_num("n")?,
        key.public_num("y")?,
    ))
}

fn benaloh_private(key: &KeyFile) -> Result<BenalohKeyPair, CliError> {
    let public = benaloh_public(key)?;
    let k = BenalohKeyPair::from_parts(&public.r, &key.private_num("p")?, &key.private_num("q")?, &public.y)
        .map_err(CliError::homomorphic)?;
    if k.n != public.n {
        return Err(CliError::Runtime("Benaloh key file: p * q differs from n".to_owned()));
    }
    Ok(k)
}

fn paillier_private(key: &KeyFile) -> Result<PaillierKeyPair, CliError> {
    let k = PaillierKeyPair::from_primes(&key.private_num("p")?, &key.private_num("q")?)
        .map_err(CliError::homomorphic)?;
    if k.n != key.public_num("n")? {
        return Err(CliError::Runtime("Paillier key file: p * q differs from n".to_owned()));
    }
    Ok(k)
}

// plaintext bytes per ciphertext such that every chunk value is below `bound`
fn chunk_len_below(bound: &Natural) -> usize {
    ((bound.bits().saturating_sub(1)) / 8) as usize
}

/// Encrypts a whole file. `seed` drives IVs and encryption nonces.
pub fn encrypt(key: &KeyFile, plaintext: &[u8], seed: u64) -> Result<Vec<u8>, CliError> {
    let mut rng = SeededRng::new(seed);
    if let Some(sym) = symmetric_alg(key.algorithm) {
        let cipher = symmetric_key(key, sym)?;
        let mut iv = vec![0u8; sym.block_len()];
        rng.fill_bytes(&mut iv);
        let ct = cbc_encrypt(&cipher, &iv, plaintext).map_err(CliError::block_cipher)?;
        return Ok(ct.to_bytes());
    }
    let file = match key.algorithm {
        Algorithm::Rsa => {
            let pk = rsa_public(key)?;
            let ct = rsa_encrypt(&pk, plaintext).map_err(CliError::pubkey)?;
            block_file(key.algorithm, KeyFingerprint::of_modulus(&pk.n), &ct)
        }
        Algorithm::ElGamal => {
            let pk = elgamal_public(key)?;
            let ct = elgamal_encrypt(&pk, plaintext, &mut rng).map_err(CliError::pubkey)?;
            block_file(key.algorithm, KeyFingerprint::of_modulus(&pk.p), &ct)
        }
        Algorithm::Paillier => {
            let pk = PaillierPublicKey::from_modulus(key.public_num("n")?);
            let chunk_len = nonempty_chunks(plaintext, chunk_len_below(&pk.n))?;
            let (values, last_len) = split_chunks(plaintext, chunk_len);
            let blocks = values
                .iter()
                .map(|m| Ok(vec![hex_num(&paillier_encrypt(&pk, m, &mut rng)?.value)]))
                .collect::<Result<_, _>>()
                .map_err(CliError::homomorphic)?;
            CiphertextFile {
                algorithm: key.algorithm,
                key_fingerprint: pk.fingerprint.to_hex(),
                chunk_len,
                last_len,
                blocks,
            }
        }
        _ => {
            let pk = benaloh_public(key)?;
            let chunk_len = nonempty_chunks(plaintext, chunk_len_below(&pk.r))?;
            let (values, last_len) = split_chunks(plaintext, chunk_len);
            let blocks = values
                .iter()
                .map(|m| Ok(vec![hex_num(&benaloh_encrypt(&pk, m, &mut rng)?.value)]))
                .collect::<Result<_, _>>()
                .map_err(CliError::homomorphic)?;
            CiphertextFile {
                algorithm: key.algorithm,
                key_fingerprint: pk.fingerprint.to_hex(),
                chunk_len,
                last_len,
                blocks,
            }
        }
    };
    Ok(file.to_json().into_bytes())
}

fn nonempty_chunks(plaintext: &[u8], chunk_len: usize) -> Result<usize, CliError> {
    if chunk_len == 0 {
        return Err(CliError::Runtime("key too small to carry a whole byte per block".to_owned()));
    }
    if plaintext.is_empty() {
        return Err(CliError::Runtime("PubKeyError: plaintext is empty".to_owned()));
    }
    Ok(chunk_len)
}

fn block_file(algorithm: Algorithm, fingerprint: KeyFingerprint, ct: &BlockCiphertext) -> CiphertextFile {
    let blocks = match &ct.blocks {
        CipherBlocks::Rsa(cs) => cs.iter().map(|c| vec![hex_num(c)]).collect(),
        CipherBlocks::ElGamal(cs) => cs.iter().map(|(a, b)| vec![hex_num(a), hex_num(b)]).collect(),
    };
    CiphertextFile {
        algorithm,
        key_fingerprint: fingerprint.to_hex(),
        chunk_len: ct.chunk_len,
        last_len: ct.last_len,
        blocks,
    }
}

fn single(block: &[String], algorithm: Algorithm) -> Result<Natural, CliError> {
    match block {
        [c] => parse_hex("blocks", c),
        _ => Err(CliError::Runtime(format!("{algorithm} ciphertext blocks have one component"))),
    }
}

pub fn decrypt(key: &KeyFile, ciphertext: &[u8]) -> Result<Vec<u8>, CliError> {
    if let Some(sym) = symmetric_alg(key.algorithm) {
        let cipher = symmetric_key(key, sym)?;
        let ct = CbcCiphertext::from_bytes(ciphertext, sym.block_len()).map_err(CliError::block_cipher)?;
        return cbc_decrypt(&cipher, &ct).map_err(CliError::block_cipher);
    }
    let file: CiphertextFile = serde_json::from_slice(ciphertext)
        .map_err(|e| CliError::Runtime(format!("malformed ciphertext file: {e}")))?;
    if file.algorithm != key.algorithm {
        return Err(CliError::Runtime(format!(
            "WrongKey: ciphertext is {} but key is {}",
            file.algorithm, key.algorithm
        )));
    }
    let expect_fingerprint = |fp: KeyFingerprint| {
        if fp.to_hex() == file.key_fingerprint {
            Ok(())
        } else {
            Err(CliError::Runtime("WrongKey: ciphertext was produced under a different key".to_owned()))
        }
    };
    match key.algorithm {
        Algorithm::Rsa => {
            let k = rsa_private(key)?;
            expect_fingerprint(KeyFingerprint::of_modulus(&k.n))?;
            let blocks = file
                .blocks
                .iter()
                .map(|b| single(b, Algorithm::Rsa))
                .collect::<Result<_, _>>()?;
            let ct = BlockCiphertext {
                blocks: CipherBlocks::Rsa(blocks),
                chunk_len: file.chunk_len,
                last_len: file.last_len,
            };
            rsa_decrypt(&k, &ct).map_err(CliError::pubkey)
        }
        Algorithm::ElGamal => {
            let k = elgamal_private(key)?;
            expect_fingerprint(KeyFingerprint::of_modulus(&k.p))?;
            let pairs = file
                .blocks
                .iter()
                .map(|b| match b.as_slice() {
                    [c1, c2] => Ok((parse_hex("blocks", c1)?, parse_hex("blocks", c2)?)),
                    _ => Err(CliError::Runtime("ELGAMAL ciphertext blocks have two components".to_owned())),
                })
                .collect::<Result<_, _>>()?;
            let ct = BlockCiphertext {
                blocks: CipherBlocks::ElGamal(pairs),
                chunk_len: file.chunk_len,
                last_len: file.last_len,
            };
            elgamal_decrypt(&k, &ct).map_err(CliError::pubkey)
        }
        Algorithm::Paillier => {
            let k = paillier_private(key)?;
            expect_fingerprint(k.fingerprint)?;
            let values = file
                .blocks
                .iter()
                .map(|b| {
                    let c = PaillierCiphertext {
                        value: single(b, Algorithm::Paillier)?,
                        fingerprint: k.fingerprint,
                    };
                    paillier_decrypt(&k, &c).map_err(CliError::homomorphic)
                })
                .collect::<Result<Vec<_>, _>>()?;
            join_chunks(values, file.blocks.len(), file.chunk_len, file.last_len).map_err(CliError::pubkey)
        }
        _ => {
            let k = benaloh_private(key)?;
            expect_fingerprint(k.fingerprint)?;
            let values = file
                .blocks
                .iter()
                .map(|b| {
                    let c = BenalohCiphertext {
                        value: single(b, Algorithm::Benaloh)?,
                        fingerprint: k.fingerprint,
                    };
                    benaloh_decrypt(&k, &c).map_err(CliError::homomorphic)
                })
                .collect::<Result<Vec<_>, _>>()?;
            join_chunks(values, file.blocks.len(), file.chunk_len, file.last_len).map_err(CliError::pubkey)
        }
    }
}
