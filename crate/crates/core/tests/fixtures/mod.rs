//! Reference measurements: five raw samples per row plus the row average
//! as published, for a single-system and a cloud environment.

use cryptbench::bench::Algorithm::{self, *};

pub struct RefRow {
    pub algorithm: Algorithm,
    pub input_size: Option<usize>,
    pub samples: [u64; 5],
    pub published_average: u64,
}

const fn row(algorithm: Algorithm, size: usize, samples: [u64; 5], published_average: u64) -> RefRow {
    RefRow {
        algorithm,
        input_size: if size == 0 { None } else { Some(size) },
        samples,
        published_average,
    }
}

const KB: usize = 1024;

pub const LOCAL: [RefRow; 32] = [
    row(Aes, 10 * KB, [234, 265, 312, 249, 250], 262),
    row(Aes, 20 * KB, [277, 284, 252, 245, 262], 264),
    row(Aes, 30 * KB, [260, 266, 273, 263, 275], 267),
    row(Aes, 40 * KB, [288, 271, 272, 273, 271], 275),
    row(Aes, 50 * KB, [276, 308, 276, 306, 291], 291),
    row(Des, 10 * KB, [239, 261, 258, 246, 247], 250),
    row(Des, 20 * KB, [252, 250, 260, 254, 256], 254),
    row(Des, 30 * KB, [246, 430, 251, 266, 259], 290),
    row(Des, 40 * KB, [267, 251, 280, 327, 337], 292),
    row(Des, 50 * KB, [297, 278, 261, 319, 331], 297),
    row(ElGamal, 100, [497, 369, 489, 463, 397], 443),
    row(ElGamal, 200, [391, 471, 463, 340, 548], 443),
    row(ElGamal, 300, [457, 458, 419, 468, 440], 448),
    row(ElGamal, 400, [382, 406, 439, 417, 608], 450),
    row(ElGamal, 501, [459, 463, 590, 531, 534], 515),
    row(Rsa, 100, [2376, 2516, 2902, 3547, 3022], 2873),
    row(Rsa, 200, [4725, 4516, 3722, 4014, 1786], 3753),
    row(Rsa, 300, [5431, 5423, 3427, 4616, 4922], 4764),
    row(Rsa, 400, [6982, 6764, 4926, 5531, 3110], 5463),
    row(Rsa, 501, [6725, 8095, 6551, 5986, 4066], 6284),
    row(Md5, 10 * KB, [14, 19, 19, 18, 16], 17),
    row(Md5, 20 * KB, [19, 20, 17, 13, 23], 18),
    row(Md5, 30 * KB, [21, 20, 21, 21, 21], 21),
    row(Md5, 40 * KB, [22, 23, 22, 26, 17], 22),
    row(Md5, 50 * KB, [23, 23, 21, 17, 24], 22),
    row(Sha1, 10 * KB, [18, 20, 20, 18, 20], 19),
    row(Sha1, 20 * KB, [28, 27, 29, 30, 31], 29),
    row(Sha1, 30 * KB, [31, 38, 38, 32, 30], 34),
    row(Sha1, 40 * KB, [32, 31, 38, 37, 40], 36),
    row(Sha1, 50 * KB, [37, 38, 37, 39, 37], 38),
    row(Paillier, 0, [344, 330, 360, 356, 337], 345),
    row(Benaloh, 0, [667, 556, 600, 625, 583], 606),
];

pub const CLOUD: [RefRow; 32] = [
    row(Aes, 10 * KB, [239, 234, 228, 236, 238], 235),
    row(Aes, 20 * KB, [238, 232, 237, 233, 243], 237),
    row(Aes, 30 * KB, [240, 243, 240, 235, 236], 239),
    row(Aes, 40 * KB, [249, 260, 245, 242, 241], 247),
    row(Aes, 50 * KB, [258, 250, 243, 247, 254], 250),
    row(Des, 10 * KB, [240, 236, 233, 240, 239], 238),
    row(Des, 20 * KB, [239, 236, 239, 235, 242], 238),
    row(Des, 30 * KB, [238, 234, 244, 247, 236], 240),
    row(Des, 40 * KB, [247, 246, 255, 252, 257], 251),
    row(Des, 50 * KB, [249, 268, 254, 267, 264], 260),
    row(ElGamal, 100, [301, 187, 236, 185, 362], 254),
    row(ElGamal, 200, [289, 283, 465, 708, 403], 430),
    row(ElGamal, 300, [542, 221, 566, 226, 666], 444),
    row(ElGamal, 400, [509, 390, 414, 465, 461], 447),
    row(ElGamal, 501, [500, 600, 493, 423, 466], 496),
    row(Rsa, 100, [5469, 4916, 5189, 4356, 5643], 5115),
    row(Rsa, 200, [7985, 8734, 7835, 6534, 7856], 7789),
    row(Rsa, 300, [8453, 7649, 8634, 8964, 8857], 8511),
    row(Rsa, 400, [9089, 9954, 10067, 10075, 10674], 9972),
    row(Rsa, 501, [11589, 12563, 12775, 12885, 13437], 12650),
    row(Md5, 10 * KB, [17, 16, 17, 17, 17], 17),
    row(Md5, 20 * KB, [18, 18, 18, 19, 19], 18),
    row(Md5, 30 * KB, [18, 19, 21, 18, 19], 19),
    row(Md5, 40 * KB, [19, 20, 19, 20, 18], 19),
    row(Md5, 50 * KB, [21, 21, 20, 21, 21], 21),
    row(Sha1, 10 * KB, [19, 19, 20, 19, 19], 19),
    row(Sha1, 20 * KB, [19, 20, 21, 21, 22], 21),
    row(Sha1, 30 * KB, [20, 22, 23, 22, 23], 22),
    row(Sha1, 40 * KB, [20, 22, 23, 23, 22], 22),
    row(Sha1, 50 * KB, [22, 22, 22, 23, 23], 22),
    row(Paillier, 0, [708, 668, 925, 718, 681], 740),
    row(Benaloh, 0, [1145, 1253, 1137, 1461, 1225], 1244),
];

/// Published per-algorithm averages.
pub const LOCAL_PER_ALGORITHM: [(Algorithm, u64); 8] = [
    (Aes, 272),
    (Des, 277),
    (ElGamal, 460),
    (Rsa, 4627),
    (Md5, 20),
    (Sha1, 31),
    (Paillier, 345),
    (Benaloh, 606),
];

pub const CLOUD_PER_ALGORITHM: [(Algorithm, u64); 8] = [
    (Aes, 242),
    (Des, 245),
    (ElGamal, 414),
    (Rsa, 8807),
    (Md5, 19),
    (Sha1, 21),
    (Paillier, 740),
    (Benaloh, 1244),
];

/// Published speed-up ratios.
pub const SPEEDUP: [(Algorithm, &str); 8] = [
    (Aes, "1.12"),
    (Des, "1.13"),
    (ElGamal, "1.11"),
    (Rsa, "0.52"),
    (Md5, "1.05"),
    (Sha1, "1.47"),
    (Paillier, "0.46"),
    (Benaloh, "0.48"),
];
