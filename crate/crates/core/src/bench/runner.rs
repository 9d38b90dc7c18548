use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use super::{workload_bytes, Algorithm, BenchCase, BenchError, BenchRow, Category, SAMPLES_PER_ROW};
use crate::blockcipher::{cbc_decrypt, cbc_encrypt, SymmetricAlgorithm, SymmetricKey};
use crate::digest::{hash, HashAlgorithm, HashState};
use crate::homomorphic::{
    benaloh_add, benaloh_decrypt, benaloh_encrypt, benaloh_keygen, paillier_add, paillier_decrypt,
    paillier_encrypt, paillier_keygen, BenalohKeyPair, PaillierKeyPair, DEFAULT_BENALOH_R,
};
use crate::numtheory::{Natural, SeededRng};
use crate::pubkey::{
    elgamal_decrypt, elgamal_encrypt, elgamal_keygen, rsa_decrypt, rsa_encrypt, rsa_keygen, BlockCiphertext,
    CipherBlocks, ElGamalKeyPair, ElGamalParams, RsaKeyPair,
};

// generated ElGamal groups are a pure function of their size
const GROUP_SEED: u64 = 0x454c_4741_4d41_4c00;

/// SHA-1 over everything a run produced except timings.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MaterialDigest(pub [u8; 20]);

impl MaterialDigest {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl fmt::Debug for MaterialDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MaterialDigest({})", self.to_hex())
    }
}

struct Material(HashState);

impl Material {
    fn new() -> Self {
        Material(HashState::new(HashAlgorithm::Sha1))
    }

    // length-prefixed so field boundaries are unambiguous
    fn bytes(&mut self, data: &[u8]) {
        self.0.update(&(data.len() as u64).to_be_bytes()).expect("open state");
        self.0.update(data).expect("open state");
    }

    fn num(&mut self, n: &Natural) {
        self.bytes(&n.to_bytes_be());
    }

    fn blocks(&mut self, ct: &BlockCiphertext) {
        match &ct.blocks {
            CipherBlocks::Rsa(cs) => cs.iter().for_each(|c| self.num(c)),
            CipherBlocks::ElGamal(cs) => cs.iter().for_each(|(a, b)| {
                self.num(a);
                self.num(b);
            }),
        }
    }

    fn finish(mut self) -> MaterialDigest {
        let d = self.0.finalize().expect("open state");
        MaterialDigest(d.as_bytes().try_into().expect("20 bytes"))
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T, BenchError>) -> Result<(T, u64), BenchError> {
    let start = Instant::now();
    let out = f()?;
    let ms = start.elapsed().as_millis() as u64;
    Ok((out, ms))
}

/// Executes benchmark cases one at a time.
///
/// ElGamal groups are cached per size and reused across samples unless
/// fresh parameters are requested, in which case group generation happens
/// inside every timed keygen.
#[derive(Debug, Default)]
pub struct Runner {
    fresh_elgamal_params: bool,
    groups: HashMap<u64, ElGamalParams>,
}

impl Runner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fresh_elgamal_params(fresh: bool) -> Self {
        Self {
            fresh_elgamal_params: fresh,
            groups: HashMap::new(),
        }
    }

    /// Cached group: the standard MODP group when one exists for `bits`.
    pub fn elgamal_params(&mut self, bits: u64) -> Result<ElGamalParams, BenchError> {
        if let Some(p) = self.groups.get(&bits) {
            return Ok(p.clone());
        }
        let params = ElGamalParams::well_known_or_generate(bits, &mut SeededRng::new(GROUP_SEED ^ bits))?;
        self.groups.insert(bits, params.clone());
        Ok(params)
    }

    /// Takes five timed samples of `case`. Each sample is checked for
    /// correctness after its clock stops; any mismatch aborts the row.
    pub fn run_case(&mut self, case: &BenchCase, rng: &mut SeededRng) -> Result<BenchRow, BenchError> {
        case.validate()?;
        let mut material = Material::new();
        material.bytes(case.algorithm.tag().as_bytes());
        let mut samples = [0u64; SAMPLES_PER_ROW];
        match case.algorithm.category() {
            Category::Symmetric => self.symmetric(case, rng, &mut material, &mut samples)?,
            Category::Asymmetric => self.asymmetric(case, rng, &mut material, &mut samples)?,
            Category::Hash => self.hash(case, &mut material, &mut samples)?,
            Category::Homomorphic => self.homomorphic(case, rng, &mut material, &mut samples)?,
        }
        let mut row = BenchRow::from_samples(case.clone(), samples);
        row.material = Some(material.finish());
        Ok(row)
    }

    fn symmetric(
        &mut self,
        case: &BenchCase,
        rng: &mut SeededRng,
        material: &mut Material,
        samples: &mut [u64; SAMPLES_PER_ROW],
    ) -> Result<(), BenchError> {
        let alg = match case.algorithm {
            Algorithm::Aes => SymmetricAlgorithm::Aes128,
            _ => SymmetricAlgorithm::Des,
        };
        let data = workload_bytes(case.seed, case.input_size.unwrap_or(0));
        material.bytes(&data);
        for (i, slot) in samples.iter_mut().enumerate() {
            let mut key = vec![0u8; alg.key_len()];
            let mut iv = vec![0u8; alg.block_len()];
            rng.fill_bytes(&mut key);
            rng.fill_bytes(&mut iv);
            let ((ct, plain), ms) = timed(|| {
                let cipher = SymmetricKey::new(alg, &key)?;
                let ct = cbc_encrypt(&cipher, &iv, &data)?;
                let plain = cbc_decrypt(&cipher, &ct)?;
                Ok((ct, plain))
            })?;
            let expected_len = (data.len() / alg.block_len() + 1) * alg.block_len();
            if plain != data || ct.body.len() != expected_len {
                return Err(integrity(case, i, "CBC round trip mismatch"));
            }
            material.bytes(&key);
            material.bytes(&ct.to_bytes());
            *slot = ms;
        }
        Ok(())
    }

    fn asymmetric(
        &mut self,
        case: &BenchCase,
        rng: &mut SeededRng,
        material: &mut Material,
        samples: &mut [u64; SAMPLES_PER_ROW],
    ) -> Result<(), BenchError> {
        let bits = case.key_size.expect("validated");
        let data = workload_bytes(case.seed, case.input_size.expect("validated"));
        material.bytes(&data);
        match case.algorithm {
            Algorithm::Rsa => {
                let mut fixed = None;
                if !case.include_keygen {
                    fixed = Some(rsa_keygen(bits, rng)?);
                }
                for (i, slot) in samples.iter_mut().enumerate() {
                    let ((key, ct, plain), ms) = timed(|| {
                        let key = match &fixed {
                            Some(k) => k.clone(),
                            None => rsa_keygen(bits, rng)?,
                        };
                        let ct = rsa_encrypt(&key.public(), &data)?;
                        let plain = rsa_decrypt(&key, &ct)?;
                        Ok((key, ct, plain))
                    })?;
                    if plain != data {
                        return Err(integrity(case, i, "RSA round trip mismatch"));
                    }
                    rsa_material(material, &key);
                    material.blocks(&ct);
                    *slot = ms;
                }
            }
            _ => {
                let params = if self.fresh_elgamal_params {
                    None
                } else {
                    Some(self.elgamal_params(bits)?)
                };
                let mut fixed = None;
                if !case.include_keygen {
                    fixed = Some(elgamal_keygen(bits, rng, params.as_ref())?);
                }
                for (i, slot) in samples.iter_mut().enumerate() {
                    let ((key, ct, plain), ms) = timed(|| {
                        let key = match &fixed {
                            Some(k) => k.clone(),
                            None => elgamal_keygen(bits, rng, params.as_ref())?,
                        };
                        let ct = elgamal_encrypt(&key.public(), &data, rng)?;
                        let plain = elgamal_decrypt(&key, &ct)?;
                        Ok((key, ct, plain))
                    })?;
                    if plain != data {
                        return Err(integrity(case, i, "ElGamal round trip mismatch"));
                    }
                    elgamal_material(material, &key);
                    material.blocks(&ct);
                    *slot = ms;
                }
            }
        }
        Ok(())
    }

    fn hash(
        &mut self,
        case: &BenchCase,
        material: &mut Material,
        samples: &mut [u64; SAMPLES_PER_ROW],
    ) -> Result<(), BenchError> {
        let alg = match case.algorithm {
            Algorithm::Md5 => HashAlgorithm::Md5,
            _ => HashAlgorithm::Sha1,
        };
        let data = workload_bytes(case.seed, case.input_size.expect("validated"));
        material.bytes(&data);
        for (i, slot) in samples.iter_mut().enumerate() {
            let (digest, ms) = timed(|| Ok(hash(alg, &data)))?;
            let mut streamed = HashState::new(alg);
            for piece in data.chunks(1000) {
                streamed.update(piece)?;
            }
            if streamed.finalize()? != digest {
                return Err(integrity(case, i, "one-shot and streamed digests differ"));
            }
            material.bytes(digest.as_bytes());
            *slot = ms;
        }
        Ok(())
    }

    fn homomorphic(
        &mut self,
        case: &BenchCase,
        rng: &mut SeededRng,
        material: &mut Material,
        samples: &mut [u64; SAMPLES_PER_ROW],
    ) -> Result<(), BenchError> {
        let bits = case.key_size.expect("validated");
        if case.algorithm == Algorithm::Paillier {
            // two messages of bits/8 - 1 bytes each, always below n
            let len = (bits / 8).saturating_sub(1).max(1) as usize;
            let data = workload_bytes(case.seed, 2 * len);
            material.bytes(&data);
            let m1 = Natural::from_bytes_be(&data[..len]);
            let m2 = Natural::from_bytes_be(&data[len..]);
            let mut fixed = None;
            if !case.include_keygen {
                fixed = Some(paillier_keygen(bits, rng)?);
            }
            for (i, slot) in samples.iter_mut().enumerate() {
                let ((key, c, sum), ms) = timed(|| {
                    let key: PaillierKeyPair = match &fixed {
                        Some(k) => k.clone(),
                        None => paillier_keygen(bits, rng)?,
                    };
                    let pk = key.public();
                    let c1 = paillier_encrypt(&pk, &m1, rng)?;
                    let c2 = paillier_encrypt(&pk, &m2, rng)?;
                    let c = paillier_add(&pk, &c1, &c2)?;
                    let sum = paillier_decrypt(&key, &c)?;
                    Ok((key, c, sum))
                })?;
                material.num(&c.value);
                if sum != (&m1 + &m2) % &key.n {
                    return Err(integrity(case, i, "Paillier sum mismatch"));
                }
                material.num(&key.n);
                material.num(&key.lambda);
                *slot = ms;
            }
        } else {
            let r = Natural::from(DEFAULT_BENALOH_R);
            let data = workload_bytes(case.seed, 16);
            material.bytes(&data);
            let word = |b: &[u8]| u64::from_le_bytes(b.try_into().expect("8 bytes"));
            let m1 = Natural::from(word(&data[..8]) % DEFAULT_BENALOH_R as u64);
            let m2 = Natural::from(word(&data[8..]) % DEFAULT_BENALOH_R as u64);
            let mut fixed = None;
            if !case.include_keygen {
                fixed = Some(benaloh_keygen(&r, bits, rng)?);
            }
            for (i, slot) in samples.iter_mut().enumerate() {
                let ((key, c, sum), ms) = timed(|| {
                    let key: BenalohKeyPair = match &fixed {
                        Some(k) => k.clone(),
                        None => benaloh_keygen(&r, bits, rng)?,
                    };
                    let pk = key.public();
                    let c1 = benaloh_encrypt(&pk, &m1, rng)?;
                    let c2 = benaloh_encrypt(&pk, &m2, rng)?;
                    let c = benaloh_add(&pk, &c1, &c2)?;
                    let sum = benaloh_decrypt(&key, &c)?;
                    Ok((key, c, sum))
                })?;
                material.num(&c.value);
                if sum != (&m1 + &m2) % &r {
                    return Err(integrity(case, i, "Benaloh sum mismatch"));
                }
                material.num(&key.n);
                material.num(&key.y);
                *slot = ms;
            }
        }
        Ok(())
    }
}

fn rsa_material(material: &mut Material, key: &RsaKeyPair) {
    material.num(&key.n);
    material.num(&key.e);
    material.num(&key.d);
}

fn elgamal_material(material: &mut Material, key: &ElGamalKeyPair) {
    material.num(&key.p);
    material.num(&key.g);
    material.num(&key.x);
}

fn integrity(case: &BenchCase, sample: usize, detail: &str) -> BenchError {
    BenchError::Integrity {
        algorithm: case.algorithm,
        sample,
        detail: detail.to_owned(),
    }
}
