//! Measurement engine: timed samples, integer-millisecond aggregation and
//! cross-environment speed-up ratios.
//!
//! Two reduction rules coexist on purpose. Averages round half up to whole
//! milliseconds; speed-up ratios truncate to two decimals.

mod runner;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blockcipher::BlockCipherError;
use crate::digest::DigestError;
use crate::homomorphic::HomomorphicError;
use crate::numtheory::SeededRng;
use crate::pubkey::PubKeyError;

pub use runner::{MaterialDigest, Runner};

/// Samples taken per benchmark row.
pub const SAMPLES_PER_ROW: usize = 5;

/// Input sizes of the symmetric and hash sweep, in bytes.
pub const SWEEP_BULK_SIZES: [usize; 5] = [10240, 20480, 30720, 40960, 51200];
/// Input sizes of the RSA and ElGamal sweep, in bytes.
pub const SWEEP_ASYMMETRIC_SIZES: [usize; 5] = [100, 200, 300, 400, 501];

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark case: {0}")]
    InvalidCase(String),
    #[error("no rows to aggregate")]
    EmptyRows,
    #[error("cloud average must be positive")]
    ZeroDenominator,
    #[error("reports share no algorithm (local: {local}; cloud: {cloud})")]
    NoCommonAlgorithm { local: String, cloud: String },
    #[error("integrity failure in {algorithm} sample {sample}: {detail}")]
    Integrity {
        algorithm: Algorithm,
        sample: usize,
        detail: String,
    },
    #[error(transparent)]
    BlockCipher(#[from] BlockCipherError),
    #[error(transparent)]
    PubKey(#[from] PubKeyError),
    #[error(transparent)]
    Homomorphic(#[from] HomomorphicError),
    #[error(transparent)]
    Digest(#[from] DigestError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "AES")]
    Aes,
    #[serde(rename = "DES")]
    Des,
    #[serde(rename = "RSA")]
    Rsa,
    #[serde(rename = "ELGAMAL")]
    ElGamal,
    #[serde(rename = "MD5")]
    Md5,
    #[serde(rename = "SHA1")]
    Sha1,
    #[serde(rename = "PAILLIER")]
    Paillier,
    #[serde(rename = "BENALOH")]
    Benaloh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Symmetric,
    Asymmetric,
    Hash,
    Homomorphic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Aes,
        Algorithm::Des,
        Algorithm::Rsa,
        Algorithm::ElGamal,
        Algorithm::Md5,
        Algorithm::Sha1,
        Algorithm::Paillier,
        Algorithm::Benaloh,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Aes => "AES",
            Algorithm::Des => "DES",
            Algorithm::Rsa => "RSA",
            Algorithm::ElGamal => "ELGAMAL",
            Algorithm::Md5 => "MD5",
            Algorithm::Sha1 => "SHA1",
            Algorithm::Paillier => "PAILLIER",
            Algorithm::Benaloh => "BENALOH",
        }
    }

    pub fn category(self) -> Category {
        match self {
            Algorithm::Aes | Algorithm::Des => Category::Symmetric,
            Algorithm::Rsa | Algorithm::ElGamal => Category::Asymmetric,
            Algorithm::Md5 | Algorithm::Sha1 => Category::Hash,
            Algorithm::Paillier | Algorithm::Benaloh => Category::Homomorphic,
        }
    }

    /// The standard sweep; empty for homomorphic schemes, which take no input size.
    pub fn sweep_sizes(self) -> &'static [usize] {
        match self.category() {
            Category::Symmetric | Category::Hash => &SWEEP_BULK_SIZES,
            Category::Asymmetric => &SWEEP_ASYMMETRIC_SIZES,
            Category::Homomorphic => &[],
        }
    }

    /// Key size used when none is requested. Hashes have none.
    pub fn default_key_bits(self) -> Option<u64> {
        match self {
            Algorithm::Aes => Some(128),
            Algorithm::Des => Some(64),
            Algorithm::Rsa | Algorithm::ElGamal => Some(4096),
            Algorithm::Paillier | Algorithm::Benaloh => Some(512),
            Algorithm::Md5 | Algorithm::Sha1 => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('-', "").as_str() {
            "AES" | "AES128" => Ok(Algorithm::Aes),
            "DES" => Ok(Algorithm::Des),
            "RSA" => Ok(Algorithm::Rsa),
            "ELGAMAL" => Ok(Algorithm::ElGamal),
            "MD5" => Ok(Algorithm::Md5),
            "SHA" | "SHA1" => Ok(Algorithm::Sha1),
            "PAILLIER" => Ok(Algorithm::Paillier),
            "BENALOH" => Ok(Algorithm::Benaloh),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

/// One algorithm at one input size.
///
/// `seed` fixes the workload bytes; key material comes from the rng handed
/// to [`Runner::run_case`], conventionally [`BenchCase::rng`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchCase {
    pub algorithm: Algorithm,
    pub input_size: Option<usize>,
    pub key_size: Option<u64>,
    pub include_keygen: bool,
    pub seed: u64,
}

impl BenchCase {
    /// Case with the default key size and keygen timed.
    pub fn new(algorithm: Algorithm, input_size: Option<usize>, seed: u64) -> Self {
        Self {
            algorithm,
            input_size,
            key_size: algorithm.default_key_bits(),
            include_keygen: true,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let a = self.algorithm;
        let bad = |msg: String| Err(BenchError::InvalidCase(msg));
        match (a.category(), self.input_size) {
            (Category::Homomorphic, Some(_)) => return bad(format!("{a} takes no input size")),
            (Category::Homomorphic, None) => {}
            (_, None) => return bad(format!("{a} needs an input size")),
            (Category::Asymmetric, Some(0)) => return bad(format!("{a} needs a nonempty input")),
            (_, Some(_)) => {}
        }
        match (a, self.key_size) {
            (Algorithm::Md5 | Algorithm::Sha1, Some(_)) => bad(format!("{a} takes no key size")),
            (Algorithm::Md5 | Algorithm::Sha1, None) => Ok(()),
            (_, None) => bad(format!("{a} needs a key size")),
            (Algorithm::Aes, Some(bits)) if bits != 128 => bad(format!("AES key size must be 128, got {bits}")),
            (Algorithm::Des, Some(bits)) if bits != 64 => bad(format!("DES key size must be 64, got {bits}")),
            _ => Ok(()),
        }
    }

    /// Key-material stream for this case, independent of run order.
    pub fn rng(&self) -> SeededRng {
        let size = self.input_size.map_or(u64::MAX, |s| s as u64);
        let bits = self.key_size.unwrap_or(0);
        let mut mix = SeededRng::new(self.seed ^ (self.algorithm as u64) << 56);
        let a = mix.next_u64() ^ size;
        let b = SeededRng::new(a).next_u64() ^ bits.rotate_left(32);
        SeededRng::new(SeededRng::new(b).next_u64())
    }
}

/// The standard sweep for each listed algorithm, in the given order.
pub fn sweep_cases(algorithms: &[Algorithm], seed: u64) -> Vec<BenchCase> {
    let mut cases = Vec::new();
    for &a in algorithms {
        if a.category() == Category::Homomorphic {
            cases.push(BenchCase::new(a, None, seed));
        } else {
            cases.extend(a.sweep_sizes().iter().map(|&s| BenchCase::new(a, Some(s), seed)));
        }
    }
    cases
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub case: BenchCase,
    pub samples_ms: [u64; SAMPLES_PER_ROW],
    pub average_ms: u64,
    /// Digest of workload, keys and outputs; `None` for rows not produced by a run.
    pub material: Option<MaterialDigest>,
}

impl BenchRow {
    pub fn from_samples(case: BenchCase, samples_ms: [u64; SAMPLES_PER_ROW]) -> Self {
        Self {
            average_ms: round_half_up_mean(&samples_ms).expect("five samples"),
            case,
            samples_ms,
            material: None,
        }
    }
}

/// Mean rounded half up to an integer; `None` for an empty slice.
pub fn round_half_up_mean(values: &[u64]) -> Option<u64> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as u128;
    let sum: u128 = values.iter().map(|&v| v as u128).sum();
    Some(((2 * sum + n) / (2 * n)) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub environment_label: String,
    pub host_metadata: BTreeMap<String, String>,
    pub created_at: String,
    pub rows: Vec<BenchRow>,
    pub per_algorithm_average_ms: BTreeMap<Algorithm, u64>,
}

impl Report {
    pub fn algorithms(&self) -> Vec<Algorithm> {
        self.per_algorithm_average_ms.keys().copied().collect()
    }
}

/// Per-algorithm averages of the row averages, rounded half up.
pub fn per_algorithm_averages(rows: &[BenchRow]) -> BTreeMap<Algorithm, u64> {
    let mut grouped: BTreeMap<Algorithm, Vec<u64>> = BTreeMap::new();
    for row in rows {
        grouped.entry(row.case.algorithm).or_default().push(row.average_ms);
    }
    grouped
        .into_iter()
        .map(|(a, avgs)| (a, round_half_up_mean(&avgs).expect("group is nonempty")))
        .collect()
}

/// Builds a report stamped with the current UTC time and basic host facts.
pub fn aggregate_report(rows: Vec<BenchRow>, environment_label: &str) -> Result<Report, BenchError> {
    if rows.is_empty() {
        return Err(BenchError::EmptyRows);
    }
    Ok(Report {
        environment_label: environment_label.to_owned(),
        host_metadata: host_metadata(),
        created_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        per_algorithm_average_ms: per_algorithm_averages(&rows),
        rows,
    })
}

fn host_metadata() -> BTreeMap<String, String> {
    let mut meta = BTreeMap::new();
    meta.insert("os".to_owned(), std::env::consts::OS.to_owned());
    meta.insert("arch".to_owned(), std::env::consts::ARCH.to_owned());
    if let Ok(n) = std::thread::available_parallelism() {
        meta.insert("logical_cpus".to_owned(), n.to_string());
    }
    meta.insert("tool_version".to_owned(), env!("CARGO_PKG_VERSION").to_owned());
    meta
}

/// Non-negative decimal with exactly two fractional digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio2 {
    hundredths: u64,
}

impl Ratio2 {
    pub fn from_hundredths(hundredths: u64) -> Self {
        Self { hundredths }
    }

    pub fn hundredths(self) -> u64 {
        self.hundredths
    }
}

impl fmt::Display for Ratio2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.hundredths / 100, self.hundredths % 100)
    }
}

/// `local / cloud` truncated toward zero to two decimals.
pub fn speedup(local_avg_ms: u64, cloud_avg_ms: u64) -> Result<Ratio2, BenchError> {
    if cloud_avg_ms == 0 {
        return Err(BenchError::ZeroDenominator);
    }
    let h = local_avg_ms as u128 * 100 / cloud_avg_ms as u128;
    Ok(Ratio2::from_hundredths(h as u64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeedUpEntry {
    pub algorithm: Algorithm,
    pub local_avg_ms: u64,
    pub cloud_avg_ms: u64,
    pub ratio: Ratio2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Local,
    Cloud,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Local => "local",
            Side::Cloud => "cloud",
        })
    }
}

/// Why an algorithm has no speed-up entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    OnlyIn(Side),
    /// Measured on both sides, but the cloud average rounded to 0 ms.
    ZeroCloudAverage,
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkipReason::OnlyIn(side) => write!(f, "only in {side} report"),
            SkipReason::ZeroCloudAverage => f.write_str("cloud average is 0 ms"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeedUpTable {
    pub local_label: String,
    pub cloud_label: String,
    pub entries: Vec<SpeedUpEntry>,
    /// Algorithms without a ratio, in canonical order.
    pub skipped: Vec<(Algorithm, SkipReason)>,
}

fn tag_list(algorithms: &[Algorithm]) -> String {
    if algorithms.is_empty() {
        return "none".to_owned();
    }
    algorithms.iter().map(|a| a.tag()).collect::<Vec<_>>().join(", ")
}

/// Speed-up table over the algorithms both reports measured.
pub fn compare_reports(local: &Report, cloud: &Report) -> Result<SpeedUpTable, BenchError> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for &a in &Algorithm::ALL {
        match (local.per_algorithm_average_ms.get(&a), cloud.per_algorithm_average_ms.get(&a)) {
            (Some(_), Some(0)) => skipped.push((a, SkipReason::ZeroCloudAverage)),
            (Some(&l), Some(&c)) => entries.push(SpeedUpEntry {
                algorithm: a,
                local_avg_ms: l,
                cloud_avg_ms: c,
                ratio: speedup(l, c)?,
            }),
            (Some(_), None) => skipped.push((a, SkipReason::OnlyIn(Side::Local))),
            (None, Some(_)) => skipped.push((a, SkipReason::OnlyIn(Side::Cloud))),
            (None, None) => {}
        }
    }
    if entries.is_empty() && skipped.iter().any(|(_, r)| *r == SkipReason::ZeroCloudAverage) {
        return Err(BenchError::ZeroDenominator);
    }
    if entries.is_empty() {
        return Err(BenchError::NoCommonAlgorithm {
            local: tag_list(&local.algorithms()),
            cloud: tag_list(&cloud.algorithms()),
        });
    }
    Ok(SpeedUpTable {
        local_label: local.environment_label.clone(),
        cloud_label: cloud.environment_label.clone(),
        entries,
        skipped,
    })
}

/// The first `size` bytes of the SplitMix64 stream for `seed`.
pub fn workload_bytes(seed: u64, size: usize) -> Vec<u8> {
    let mut out = vec![0u8; size];
    SeededRng::new(seed).fill_bytes(&mut out);
    out
}
