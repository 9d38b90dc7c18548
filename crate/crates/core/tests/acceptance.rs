//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL|WARN` line straight to stdout (bypassing the
//! harness capture) before asserting.

mod fixtures;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use aes::cipher::{BlockCipherEncrypt, KeyInit};
use md5::Digest as _;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use cryptbench::bench::{
    aggregate_report, compare_reports, sweep_cases, round_half_up_mean, Algorithm, BenchCase, BenchRow, Report,
    Runner,
};
use cryptbench::blockcipher::{cbc_decrypt, cbc_encrypt, AesKey128, DesKey, SymmetricAlgorithm, SymmetricKey};
use cryptbench::cli::{parse_report, report_to_json};
use cryptbench::digest::{md5, sha1, HashAlgorithm, HashState};
use cryptbench::homomorphic::{
    benaloh_add, benaloh_decrypt, benaloh_encrypt, benaloh_encrypt_with_nonce, benaloh_keygen, paillier_add,
    paillier_decrypt, paillier_encrypt, paillier_encrypt_with_nonce, paillier_keygen, BenalohKeyPair,
    PaillierKeyPair,
};
use cryptbench::numtheory::{mod_pow, Natural, SeededRng};
use cryptbench::pubkey::{
    elgamal_decrypt, elgamal_encrypt, elgamal_keygen, rsa_decrypt, rsa_encrypt, rsa_keygen, ElGamalParams,
};

use fixtures::{RefRow, CLOUD, CLOUD_PER_ALGORITHM, LOCAL, LOCAL_PER_ALGORITHM, SPEEDUP};

fn verdict(id: u32, title: &str, status: &str, elapsed: Duration, notes: &[String]) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {id}: {status} - {title} ({:.2?})", elapsed);
    for n in notes {
        let _ = writeln!(out, "    {n}");
    }
}

fn conclude(id: u32, title: &str, start: Instant, limit: Duration, mut failures: Vec<String>) {
    let elapsed = start.elapsed();
    if elapsed > limit {
        failures.push(format!("runtime {elapsed:.2?} exceeds {limit:?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    verdict(id, title, status, elapsed, &failures);
    assert!(failures.is_empty(), "criterion {id} failed:\n{}", failures.join("\n"));
}

fn label(r: &RefRow) -> String {
    match r.input_size {
        None => r.algorithm.to_string(),
        Some(s) if s % 1024 == 0 => format!("{}({} KB)", r.algorithm, s / 1024),
        Some(s) => format!("{}({} B)", r.algorithm, s),
    }
}

fn rows_from_samples(table: &[RefRow]) -> Vec<BenchRow> {
    table
        .iter()
        .map(|r| BenchRow::from_samples(BenchCase::new(r.algorithm, r.input_size, 0), r.samples))
        .collect()
}

// rows whose samples all equal the published row average
fn rows_at_published_average(table: &[RefRow]) -> Vec<BenchRow> {
    table
        .iter()
        .map(|r| BenchRow::from_samples(BenchCase::new(r.algorithm, r.input_size, 0), [r.published_average; 5]))
        .collect()
}

fn report_with(label: &str, averages: &[(Algorithm, u64)]) -> Report {
    Report {
        environment_label: label.to_owned(),
        host_metadata: BTreeMap::new(),
        created_at: "2000-01-01T00:00:00Z".to_owned(),
        rows: Vec::new(),
        per_algorithm_average_ms: averages.iter().copied().collect(),
    }
}

#[test]
fn criterion_1_table_arithmetic() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (env, table, published) in [
        ("single-system", &LOCAL, &LOCAL_PER_ALGORITHM),
        ("cloud", &CLOUD, &CLOUD_PER_ALGORITHM),
    ] {
        let rows = rows_from_samples(table.as_slice());
        for (r, row) in table.iter().zip(&rows) {
            if row.average_ms != r.published_average {
                let sum: u64 = r.samples.iter().sum();
                failures.push(format!(
                    "{env} {}: samples sum {sum} (mean {}.{}) round half up to {}, published {}",
                    label(r),
                    sum / 5,
                    (sum % 5) * 2,
                    row.average_ms,
                    r.published_average
                ));
            }
        }
        let report = aggregate_report(rows, env).unwrap();
        for &(a, expected) in published.iter() {
            let got = report.per_algorithm_average_ms[&a];
            if got != expected {
                failures.push(format!(
                    "{env} {a} per-algorithm average from sampled rows is {got}, published {expected}"
                ));
            }
        }
    }
    conclude(1, "table arithmetic oracle", start, Duration::from_secs(1), failures);
}

#[test]
fn criterion_1_supplement_published_row_averages() {
    // per-algorithm averages taken over the published row averages
    let mut failures = Vec::new();
    for (env, table, published) in [
        ("single-system", &LOCAL, &LOCAL_PER_ALGORITHM),
        ("cloud", &CLOUD, &CLOUD_PER_ALGORITHM),
    ] {
        let report = aggregate_report(rows_at_published_average(table.as_slice()), env).unwrap();
        for &(a, expected) in published.iter() {
            if report.per_algorithm_average_ms[&a] != expected {
                failures.push(format!("{env} {a}: {} vs {expected}", report.per_algorithm_average_ms[&a]));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_2_speedup_ratios() {
    let start = Instant::now();
    let local = report_with("single-system", &LOCAL_PER_ALGORITHM);
    let cloud = report_with("cloud", &CLOUD_PER_ALGORITHM);
    let table = compare_reports(&local, &cloud).unwrap();
    let mut failures = Vec::new();
    if table.entries.len() != 8 || !table.skipped.is_empty() {
        failures.push(format!("expected 8 entries, got {}", table.entries.len()));
    }
    for &(a, expected) in &SPEEDUP {
        match table.entries.iter().find(|e| e.algorithm == a) {
            Some(e) if e.ratio.to_string() == expected => {}
            Some(e) => failures.push(format!("{a}: {} vs {expected}", e.ratio)),
            None => failures.push(format!("{a}: missing")),
        }
    }
    conclude(2, "speed-up ratio oracle", start, Duration::from_secs(1), failures);
}

fn h(s: &str) -> Vec<u8> {
    hex::decode(s).unwrap()
}

fn check(failures: &mut Vec<String>, what: &str, ours: &[u8], expected: &[u8]) {
    if ours != expected {
        failures.push(format!("{what}: got {}, expected {}", hex::encode(ours), hex::encode(expected)));
    }
}

#[test]
fn criterion_3_known_answers() {
    let start = Instant::now();
    let mut failures = Vec::new();

    for (key, pt, ct) in [
        ("2b7e151628aed2a6abf7158809cf4f3c", "3243f6a8885a308d313198a2e0370734", "3925841d02dc09fbdc118597196a0b32"),
        ("000102030405060708090a0b0c0d0e0f", "00112233445566778899aabbccddeeff", "69c4e0d86a7b0430d8cdb78070b4c55a"),
    ] {
        let ours = AesKey128::new(&h(key)).unwrap().encrypt_block(&h(pt)).unwrap();
        check(&mut failures, "AES vector", &ours, &h(ct));
        let reference = {
            let c = aes::Aes128::new_from_slice(&h(key)).unwrap();
            let mut b = aes::Block::try_from(&h(pt)[..]).unwrap();
            c.encrypt_block(&mut b);
            b.to_vec()
        };
        check(&mut failures, "AES vs reference crate", &ours, &reference);
    }

    let ours = DesKey::new(&h("133457799bbcdff1")).unwrap().encrypt_block(&h("0123456789abcdef")).unwrap();
    check(&mut failures, "DES vector", &ours, &h("85e813540f0ab405"));
    let reference = {
        let c = des::Des::new_from_slice(&h("133457799bbcdff1")).unwrap();
        let mut b = des::cipher::Block::<des::Des>::try_from(&h("0123456789abcdef")[..]).unwrap();
        c.encrypt_block(&mut b);
        b.to_vec()
    };
    check(&mut failures, "DES vs reference crate", &ours, &reference);

    let md5_suite = [
        ("", "d41d8cd98f00b204e9800998ecf8427e"),
        ("a", "0cc175b9c0f1b6a831c399e269772661"),
        ("abc", "900150983cd24fb0d6963f7d28e17f72"),
        ("message digest", "f96b697d7cb7938d525a2f31aaf161d0"),
        ("abcdefghijklmnopqrstuvwxyz", "c3fcd3d76192e4007dfb496cca67e13b"),
        (
            "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789",
            "d174ab98d277d9f5a5611c2c9f419d9f",
        ),
        (
            "12345678901234567890123456789012345678901234567890123456789012345678901234567890",
            "57edf4a22be3c955ac49da2e2107b67a",
        ),
    ];
    for (msg, digest) in md5_suite {
        let ours = md5(msg.as_bytes());
        check(&mut failures, &format!("MD5 {msg:?}"), ours.as_bytes(), &h(digest));
        check(&mut failures, &format!("MD5 {msg:?} vs crate"), ours.as_bytes(), &md5::Md5::digest(msg)[..]);
    }

    for (msg, digest) in [
        ("abc", "a9993e364706816aba3e25717850c26c9cd0d89d"),
        ("", "da39a3ee5e6b4b0d3255bfef95601890afd80709"),
        (
            "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
            "84983e441c3bd26ebaae4aa1f95129e5e54670f1",
        ),
    ] {
        check(&mut failures, &format!("SHA-1 {msg:?}"), sha1(msg.as_bytes()).as_bytes(), &h(digest));
    }
    for len in 55..=65usize {
        let msg: Vec<u8> = (0..len).map(|i| b'a' + (i % 26) as u8).collect();
        let ours = sha1(&msg);
        check(&mut failures, &format!("SHA-1 length {len}"), ours.as_bytes(), &sha1::Sha1::digest(&msg)[..]);
        let mut streamed = HashState::new(HashAlgorithm::Sha1);
        for piece in msg.chunks(7) {
            streamed.update(piece).unwrap();
        }
        check(&mut failures, &format!("SHA-1 streamed length {len}"), streamed.finalize().unwrap().as_bytes(), ours.as_bytes());
        check(&mut failures, &format!("MD5 length {len}"), md5(&msg).as_bytes(), &md5::Md5::digest(&msg)[..]);
    }
    conclude(3, "known-answer suite", start, Duration::from_secs(1), failures);
}

fn mul_pow_naive(base: u64, exp: u64, modulus: u64) -> u64 {
    (0..exp).fold(1 % modulus, |acc, _| acc * base % modulus)
}

#[test]
fn criterion_4_homomorphic_properties() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SeededRng::new(4);

    let key = paillier_keygen(512, &mut rng).unwrap();
    let pk = key.public();
    for i in 0..100 {
        let m1 = rng.gen_below(&key.n);
        let m2 = rng.gen_below(&key.n);
        let c1 = paillier_encrypt(&pk, &m1, &mut rng).unwrap();
        let c2 = paillier_encrypt(&pk, &m2, &mut rng).unwrap();
        let sum = paillier_decrypt(&key, &paillier_add(&pk, &c1, &c2).unwrap()).unwrap();
        if sum != (&m1 + &m2) % &key.n {
            failures.push(format!("Paillier 512-bit pair {i}"));
        }
    }

    // p = 3, q = 5: every message, every unit nonce, checked against a
    // multiplication-only evaluation of (n + 1)^m * u^n mod n^2
    let toy = PaillierKeyPair::from_primes(&Natural::from(3u8), &Natural::from(5u8)).unwrap();
    let tpk = toy.public();
    let units: Vec<u64> = (1..15).filter(|u| u.gcd(&15) == 1).collect();
    let mut toy_cts = Vec::new();
    for m in 0..15u64 {
        for &u in &units {
            let c = paillier_encrypt_with_nonce(&tpk, &Natural::from(m), &Natural::from(u)).unwrap();
            let naive = mul_pow_naive(16, m, 225) * mul_pow_naive(u, 15, 225) % 225;
            if c.value != Natural::from(naive) {
                failures.push(format!("Paillier toy E({m}, {u}) = {} vs {naive}", c.value));
            }
            if paillier_decrypt(&toy, &c).unwrap() != Natural::from(m) {
                failures.push(format!("Paillier toy D(E({m}, {u}))"));
            }
            toy_cts.push((m, c));
        }
    }
    for (m1, c1) in &toy_cts {
        for (m2, c2) in toy_cts.iter().step_by(3) {
            let s = paillier_decrypt(&toy, &paillier_add(&tpk, c1, c2).unwrap()).unwrap();
            if s != Natural::from((m1 + m2) % 15) {
                failures.push(format!("Paillier toy sum {m1} + {m2}"));
            }
        }
    }

    // Benaloh, r = 257
    let r = Natural::from(257u32);
    let key = benaloh_keygen(&r, 512, &mut rng).unwrap();
    let pk = key.public();
    let order = (&key.phi / &r).clone();
    // walks x^0, x^1, ... by multiplication until it meets c^(phi/r)
    let naive = |c: &Natural| -> Option<u64> {
        let target = mod_pow(c, &order, &key.n).unwrap();
        let mut acc = Natural::one();
        for m in 0..257u64 {
            if acc == target {
                return Some(m);
            }
            acc = acc * &key.x % &key.n;
        }
        None
    };
    for i in 0..100 {
        let m1 = rng.gen_below(&r);
        let m2 = rng.gen_below(&r);
        let c1 = benaloh_encrypt(&pk, &m1, &mut rng).unwrap();
        let c2 = benaloh_encrypt(&pk, &m2, &mut rng).unwrap();
        let c = benaloh_add(&pk, &c1, &c2).unwrap();
        let expected = (&m1 + &m2) % &r;
        let bsgs = benaloh_decrypt(&key, &c).unwrap();
        if bsgs != expected {
            failures.push(format!("Benaloh 512-bit pair {i}"));
        }
        for (ct, m) in [(&c1, &m1), (&c2, &m2), (&c, &expected)] {
            if naive(&ct.value).map(Natural::from).as_ref() != Some(m) {
                failures.push(format!("Benaloh 512-bit pair {i}: naive decryptor disagrees"));
            }
        }
    }

    // r = 3, n = 35: the naive decryptor tests (c * y^-m)^(phi/r) = 1 directly
    for seed in 0..6 {
        let toy = BenalohKeyPair::from_primes(
            &Natural::from(3u8),
            &Natural::from(7u8),
            &Natural::from(5u8),
            &mut SeededRng::new(seed),
        )
        .unwrap();
        let tpk = toy.public();
        let y = toy.y.to_u64().unwrap();
        let y_inv = (1..35u64).find(|v| v * y % 35 == 1).unwrap();
        let naive_toy = |c: u64| (0..3u64).filter(|&m| mul_pow_naive(c * mul_pow_naive(y_inv, m, 35) % 35, 8, 35) == 1).collect::<Vec<_>>();
        let units: Vec<u64> = (1..35).filter(|u| u.gcd(&35) == 1).collect();
        let mut cts = Vec::new();
        for m in 0..3u64 {
            for &u in &units {
                let c = benaloh_encrypt_with_nonce(&tpk, &Natural::from(m), &Natural::from(u)).unwrap();
                let bsgs = benaloh_decrypt(&toy, &c).unwrap();
                let naive = naive_toy(c.value.to_u64().unwrap());
                if naive != [m] || bsgs != Natural::from(m) {
                    failures.push(format!("Benaloh toy y={y} m={m} u={u}: bsgs {bsgs}, naive {naive:?}"));
                }
                cts.push((m, c));
            }
        }
        for (m1, c1) in &cts {
            for (m2, c2) in cts.iter().step_by(5) {
                let s = benaloh_decrypt(&toy, &benaloh_add(&tpk, c1, c2).unwrap()).unwrap();
                if s != Natural::from((m1 + m2) % 3) {
                    failures.push(format!("Benaloh toy sum {m1} + {m2}"));
                }
            }
        }
    }
    conclude(4, "homomorphic property suite", start, Duration::from_secs(60), failures);
}

fn length_schedule(block: usize) -> Vec<usize> {
    let mut lens: Vec<usize> = (1..=3 * block).collect();
    lens.extend([0, 100, 501, 10240]);
    lens
}

#[test]
fn criterion_5_round_trips() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = SeededRng::new(5);
    let random_bytes = |n: usize, rng: &mut SeededRng| {
        let mut v = vec![0u8; n];
        rng.fill_bytes(&mut v);
        v
    };

    for alg in [SymmetricAlgorithm::Aes128, SymmetricAlgorithm::Des] {
        let lens = length_schedule(alg.block_len());
        for i in 0..200 {
            let key = SymmetricKey::new(alg, &random_bytes(alg.key_len(), &mut rng)).unwrap();
            let iv = random_bytes(alg.block_len(), &mut rng);
            let data = random_bytes(lens[i % lens.len()], &mut rng);
            let ct = cbc_encrypt(&key, &iv, &data).unwrap();
            if cbc_decrypt(&key, &ct).unwrap() != data {
                failures.push(format!("{alg:?} input {i} ({} bytes)", data.len()));
            }
        }
    }

    // textbook schemes reject empty input, so lengths start at 1
    let lens: Vec<usize> = (1..=48).chain([100, 501, 10240]).collect();
    let rsa_keys: Vec<_> = (0..4).map(|_| rsa_keygen(512, &mut rng).unwrap()).collect();
    for i in 0..200 {
        let key = &rsa_keys[i % rsa_keys.len()];
        let data = random_bytes(lens[i % lens.len()], &mut rng);
        let ct = rsa_encrypt(&key.public(), &data).unwrap();
        if rsa_decrypt(key, &ct).unwrap() != data {
            failures.push(format!("RSA-512 input {i} ({} bytes)", data.len()));
        }
    }

    let params = ElGamalParams::generate(512, &mut rng).unwrap();
    let el_keys: Vec<_> = (0..4).map(|_| elgamal_keygen(512, &mut rng, Some(&params)).unwrap()).collect();
    for i in 0..200 {
        let key = &el_keys[i % el_keys.len()];
        let data = random_bytes(lens[(i + 7) % lens.len()], &mut rng);
        let ct = elgamal_encrypt(&key.public(), &data, &mut rng).unwrap();
        if elgamal_decrypt(key, &ct).unwrap() != data {
            failures.push(format!("ElGamal-512 input {i} ({} bytes)", data.len()));
        }
    }
    conclude(5, "round-trip property suite", start, Duration::from_secs(60), failures);
}

fn median(mut v: Vec<u64>) -> u64 {
    v.sort_unstable();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]).div_ceil(2)
    }
}

#[test]
fn criterion_6_soft_ordering() {
    let start = Instant::now();
    let algorithms = [
        Algorithm::Aes,
        Algorithm::Des,
        Algorithm::Rsa,
        Algorithm::ElGamal,
        Algorithm::Paillier,
        Algorithm::Benaloh,
    ];
    let mut totals: BTreeMap<Algorithm, Vec<u64>> = BTreeMap::new();
    let mut runner = Runner::new();
    for rep in 0..10u64 {
        let mut rows = Vec::new();
        for mut case in sweep_cases(&algorithms, rep) {
            if matches!(case.algorithm, Algorithm::Rsa | Algorithm::ElGamal) {
                case.key_size = Some(1024);
            }
            rows.push(runner.run_case(&case, &mut case.rng()).unwrap());
        }
        let report = aggregate_report(rows, "soft").unwrap();
        for (a, avg) in report.per_algorithm_average_ms {
            totals.entry(a).or_default().push(avg);
        }
    }
    let med: BTreeMap<_, _> = totals.into_iter().map(|(a, v)| (a, median(v))).collect();
    let mut warnings = Vec::new();
    let mut expect = |ok: bool, claim: &str, a: Algorithm, b: Algorithm| {
        let line = format!("{claim}: median {a} {} ms vs {b} {} ms", med[&a], med[&b]);
        warnings.push(if ok { line } else { format!("WARNING not observed here - {line}") });
    };
    expect(med[&Algorithm::Aes] <= med[&Algorithm::Des], "AES no slower than DES", Algorithm::Aes, Algorithm::Des);
    expect(med[&Algorithm::ElGamal] < med[&Algorithm::Rsa], "ElGamal faster than RSA", Algorithm::ElGamal, Algorithm::Rsa);
    expect(
        med[&Algorithm::Paillier] < med[&Algorithm::Benaloh],
        "Paillier faster than Benaloh",
        Algorithm::Paillier,
        Algorithm::Benaloh,
    );
    // orderings only warn; the runtime bound still gates
    let elapsed = start.elapsed();
    let over = elapsed > Duration::from_secs(600);
    if over {
        warnings.push(format!("runtime {elapsed:.2?} exceeds 600s"));
    }
    let status = match (over, warnings.iter().any(|w| w.starts_with("WARNING"))) {
        (true, _) => "FAIL",
        (false, true) => "WARN",
        (false, false) => "PASS",
    };
    verdict(6, "soft ordering checks (orderings non-gating)", status, elapsed, &warnings);
    assert!(!over, "criterion 6 exceeded its runtime bound");
}

fn cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cryptbench"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn expect_ok(failures: &mut Vec<String>, what: &str, out: &Output) -> bool {
    if out.status.success() {
        return true;
    }
    failures.push(format!("{what}: exit {:?}, stderr {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    false
}

// independent SplitMix64, little-endian byte stream
fn splitmix_bytes(seed: u64, len: usize) -> Vec<u8> {
    let mut state = seed;
    let mut out = Vec::with_capacity(len + 8);
    while out.len() < len {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        out.extend_from_slice(&(z ^ (z >> 31)).to_le_bytes());
    }
    out.truncate(len);
    out
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn criterion_7_end_to_end_cli() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut failures = Vec::new();

    let out = cli(d, &["workload", "--seed", "42", "--size", "10240", "-o", "w.bin"]);
    if expect_ok(&mut failures, "workload", &out) && std::fs::read(d.join("w.bin")).unwrap() != splitmix_bytes(42, 10240) {
        failures.push("workload bytes differ from the SplitMix64 stream".to_owned());
    }

    for env in ["single-system", "cloud"] {
        let file = format!("{env}.json");
        let out = cli(d, &["bench", "run", "--key-bits", "512", "--seed", "42", "--env", env, "-o", &file]);
        if !expect_ok(&mut failures, &format!("bench run {env}"), &out) {
            continue;
        }
        let text = std::fs::read_to_string(d.join(&file)).unwrap();
        match parse_report(&text) {
            Ok(report) => {
                if report_to_json(&report) != text {
                    failures.push(format!("{env}: report JSON does not round-trip byte-identically"));
                }
                if report.rows.len() != 32 || report.per_algorithm_average_ms.len() != 8 {
                    failures.push(format!("{env}: {} rows", report.rows.len()));
                }
            }
            Err(e) => failures.push(format!("{env}: reload failed: {e}")),
        }
        if !String::from_utf8_lossy(&out.stdout).contains("AES(50 KB)") {
            failures.push(format!("{env}: table missing from standard output"));
        }
    }

    let out = cli(d, &["bench", "compare", "single-system.json", "cloud.json", "--format", "csv"]);
    if expect_ok(&mut failures, "bench compare", &out) {
        let local = parse_report(&std::fs::read_to_string(d.join("single-system.json")).unwrap()).unwrap();
        let cloud = parse_report(&std::fs::read_to_string(d.join("cloud.json")).unwrap()).unwrap();
        let mut expected = String::from("algorithm,local_avg_ms,cloud_avg_ms,speedup\n");
        for a in Algorithm::ALL {
            let (l, c) = (local.per_algorithm_average_ms[&a], cloud.per_algorithm_average_ms[&a]);
            // sub-millisecond hashes can average 0 ms; those have no ratio
            if c == 0 {
                continue;
            }
            let hundredths = l * 100 / c;
            expected.push_str(&format!("{a},{l},{c},{}.{:02}\n", hundredths / 100, hundredths % 100));
        }
        if String::from_utf8_lossy(&out.stdout) != expected {
            failures.push(format!("live compare CSV:\n{}", String::from_utf8_lossy(&out.stdout)));
        }
    }

    let out = cli(d, &["plot-data", "single-system.json", "cloud.json", "--out-dir", "."]);
    if expect_ok(&mut failures, "plot-data --out-dir", &out) {
        for (file, lines) in [("aes.csv", 11), ("rsa.csv", 11), ("sha1.csv", 11), ("benaloh.csv", 3)] {
            let text = std::fs::read_to_string(d.join(file)).unwrap_or_default();
            if text.lines().count() != lines || text.contains('\r') {
                failures.push(format!("{file}: {} lines", text.lines().count()));
            }
        }
    }

    // golden outputs over reports carrying the published averages
    for (name, table) in [("single-system", &LOCAL), ("cloud", &CLOUD)] {
        let report = aggregate_report(rows_at_published_average(table.as_slice()), name).unwrap();
        std::fs::write(d.join(format!("ref-{name}.json")), report_to_json(&report)).unwrap();
    }
    let out = cli(d, &["bench", "compare", "ref-single-system.json", "ref-cloud.json", "--format", "csv"]);
    if expect_ok(&mut failures, "reference compare", &out) && String::from_utf8_lossy(&out.stdout) != golden("speedup.csv") {
        failures.push(format!("reference compare CSV differs from golden:\n{}", String::from_utf8_lossy(&out.stdout)));
    }
    for (alg, file) in [("aes", "aes_plot.csv"), ("paillier", "paillier_plot.csv")] {
        let target = format!("ref-{alg}.csv");
        let out = cli(d, &["plot-data", "ref-single-system.json", "ref-cloud.json", "--algorithm", alg, "-o", &target]);
        if expect_ok(&mut failures, "reference plot-data", &out)
            && std::fs::read_to_string(d.join(&target)).unwrap() != golden(file)
        {
            failures.push(format!("{target} differs from golden {file}"));
        }
    }

    // error contracts
    std::fs::write(
        d.join("only-aes.json"),
        report_to_json(&aggregate_report(rows_at_published_average(&LOCAL[..5]), "a").unwrap()),
    )
    .unwrap();
    std::fs::write(
        d.join("only-md5.json"),
        report_to_json(&aggregate_report(rows_at_published_average(&CLOUD[20..25]), "b").unwrap()),
    )
    .unwrap();
    let out = cli(d, &["bench", "compare", "only-aes.json", "only-md5.json"]);
    let err = String::from_utf8_lossy(&out.stderr);
    if out.status.code() != Some(1) || !out.stdout.is_empty() || !err.contains("AES") || !err.contains("MD5") {
        failures.push(format!("disjoint compare: exit {:?}, stderr {err}", out.status.code()));
    }
    let out = cli(d, &["plot-data", "ref-cloud.json", "ref-cloud.json", "--out-dir", "."]);
    if out.status.success() || !out.stdout.is_empty() {
        failures.push("duplicate series labels accepted".to_owned());
    }

    conclude(7, "end-to-end CLI", start, Duration::from_secs(300), failures);
}

fn strip_timing(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    let obj = v.as_object_mut().unwrap();
    obj.remove("created_at");
    obj.remove("per_algorithm_average_ms");
    for row in obj["rows"].as_array_mut().unwrap() {
        let row = row.as_object_mut().unwrap();
        row.remove("samples_ms");
        row.remove("average_ms");
    }
    v
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let cases: Vec<BenchCase> = sweep_cases(&Algorithm::ALL, 42)
        .into_iter()
        .map(|mut c| {
            if c.key_size.is_some_and(|b| b > 512) {
                c.key_size = Some(512);
            }
            c
        })
        .collect();
    let run = || {
        let mut runner = Runner::new();
        cases
            .iter()
            .map(|c| runner.run_case(c, &mut c.rng()).unwrap())
            .collect::<Vec<_>>()
    };
    let (first, second) = (run(), run());
    for (a, b) in first.iter().zip(&second) {
        if a.case != b.case || a.material.is_none() || a.material != b.material {
            failures.push(format!("{:?} material differs between runs", a.case));
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["a", "b"] {
        let out = cli(d, &["bench", "run", "--key-bits", "512", "-o", &format!("{name}.json")]);
        expect_ok(&mut failures, "bench run", &out);
        for alg in ["aes", "rsa", "elgamal", "paillier", "benaloh"] {
            let out = cli(d, &["crypto", "keygen", "--algorithm", alg, "--bits", if alg == "aes" { "128" } else { "512" }, "--seed", "9", "-o", &format!("{alg}-{name}.key")]);
            expect_ok(&mut failures, "crypto keygen", &out);
        }
        let out = cli(d, &["workload", "--seed", "7", "--size", "501", "-o", &format!("w-{name}.bin")]);
        expect_ok(&mut failures, "workload", &out);
    }
    let read = |f: &str| std::fs::read(d.join(f)).unwrap_or_default();
    if strip_timing(&String::from_utf8_lossy(&read("a.json"))) != strip_timing(&String::from_utf8_lossy(&read("b.json"))) {
        failures.push("report content differs outside timing fields".to_owned());
    }
    for alg in ["aes", "rsa", "elgamal", "paillier", "benaloh"] {
        if read(&format!("{alg}-a.key")) != read(&format!("{alg}-b.key")) || read(&format!("{alg}-a.key")).is_empty() {
            failures.push(format!("{alg} key files differ"));
        }
    }
    if read("w-a.bin") != read("w-b.bin") || read("w-a.bin").len() != 501 {
        failures.push("workloads differ".to_owned());
    }
    conclude(8, "determinism", start, Duration::from_secs(300), failures);
}

#[test]
fn cli_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("plain.bin"), splitmix_bytes(3, 501)).unwrap();
    for alg in ["aes", "des", "rsa", "elgamal", "paillier", "benaloh"] {
        let bits = match alg {
            "aes" => "128",
            "des" => "64",
            _ => "512",
        };
        let mut failures = Vec::new();
        expect_ok(&mut failures, alg, &cli(d, &["crypto", "keygen", "--algorithm", alg, "--bits", bits, "-o", "k.json"]));
        expect_ok(&mut failures, alg, &cli(d, &["crypto", "encrypt", "--key", "k.json", "--in", "plain.bin", "-o", "c.bin"]));
        expect_ok(&mut failures, alg, &cli(d, &["crypto", "decrypt", "--key", "k.json", "--in", "c.bin", "-o", "p.bin"]));
        assert!(failures.is_empty(), "{failures:?}");
        assert_eq!(std::fs::read(d.join("p.bin")).unwrap(), splitmix_bytes(3, 501), "{alg}");
    }
    std::fs::write(d.join("empty"), b"").unwrap();
    let out = cli(d, &["crypto", "hash", "--algorithm", "md5", "--in", "empty"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "d41d8cd98f00b204e9800998ecf8427e\n");

    // tampered padding surfaces the block cipher error by name
    cli(d, &["crypto", "keygen", "--algorithm", "aes", "-o", "k.json"]);
    cli(d, &["crypto", "encrypt", "--key", "k.json", "--in", "plain.bin", "-o", "c.bin"]);
    cli(d, &["crypto", "keygen", "--algorithm", "aes", "--seed", "1", "-o", "other.json"]);
    let out = cli(d, &["crypto", "decrypt", "--key", "other.json", "--in", "c.bin", "-o", "p.bin"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("BlockCipherError"));
}

#[test]
fn workload_prefix_and_empty() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for (size, name) in [("0", "e.bin"), ("100", "s.bin"), ("200", "l.bin")] {
        assert!(cli(d, &["workload", "--size", size, "-o", name]).status.success());
    }
    let small = std::fs::read(d.join("s.bin")).unwrap();
    let large = std::fs::read(d.join("l.bin")).unwrap();
    assert!(std::fs::read(d.join("e.bin")).unwrap().is_empty());
    assert_eq!(small[..], large[..100]);
    assert_eq!(large, splitmix_bytes(42, 200));
    let out = cli(d, &["workload", "--size", "1", "-o", "/nonexistent/dir/x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sample_rows_keep_half_up_rounding() {
    assert_eq!(round_half_up_mean(&[234, 265, 312, 249, 250]), Some(262));
    assert_eq!(round_half_up_mean(&[31, 38, 38, 32, 30]), Some(34));
    assert_eq!(round_half_up_mean(&[4725, 4516, 3722, 4014, 1786]), Some(3753));
}
