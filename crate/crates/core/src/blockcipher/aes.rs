use super::{BlockCipher, BlockCipherError};

const BLOCK: usize = 16;
const ROUNDS: usize = 10;

#[rustfmt::skip]
const SBOX: [u8; 256] = [
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
];

const INV_SBOX: [u8; 256] = invert(&SBOX);

const RCON: [u8; ROUNDS] = [0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1b, 0x36];

const fn invert(table: &[u8; 256]) -> [u8; 256] {
    let mut out = [0u8; 256];
    let mut i = 0;
    while i < 256 {
        out[table[i] as usize] = i as u8;
        i += 1;
    }
    out
}

#[inline]
fn xtime(b: u8) -> u8 {
    (b << 1) ^ if b & 0x80 != 0 { 0x1b } else { 0 }
}

fn gmul(mut a: u8, mut b: u8) -> u8 {
    let mut product = 0;
    while b != 0 {
        if b & 1 != 0 {
            product ^= a;
        }
        a = xtime(a);
        b >>= 1;
    }
    product
}

/// AES-128 key with its expanded schedule (11 round keys).
#[derive(Clone)]
pub struct AesKey128 {
    key: [u8; 16],
    round_keys: [[u8; BLOCK]; ROUNDS + 1],
}

impl std::fmt::Debug for AesKey128 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AesKey128").finish_non_exhaustive()
    }
}

impl AesKey128 {
    pub fn new(key: &[u8]) -> Result<Self, BlockCipherError> {
        let key: [u8; 16] = key.try_into().map_err(|_| BlockCipherError::KeyLength {
            expected: 16,
            got: key.len(),
        })?;
        Ok(Self {
            key,
            round_keys: expand_key(&key),
        })
    }

    pub fn key_bytes(&self) -> &[u8; 16] {
        &self.key
    }

    pub fn round_keys(&self) -> &[[u8; BLOCK]; ROUNDS + 1] {
        &self.round_keys
    }

    pub fn encrypt_block(&self, block: &[u8]) -> Result<[u8; 16], BlockCipherError> {
        let mut state = to_block(block)?;
        self.encrypt_in_place(&mut state);
        Ok(state)
    }

    pub fn decrypt_block(&self, block: &[u8]) -> Result<[u8; 16], BlockCipherError> {
        let mut state = to_block(block)?;
        self.decrypt_in_place(&mut state);
        Ok(state)
    }

    fn encrypt_in_place(&self, state: &mut [u8; BLOCK]) {
        add_round_key(state, &self.round_keys[0]);
        for round in 1..ROUNDS {
            sub_bytes(state, &SBOX);
            shift_rows(state);
            mix_columns(state);
            add_round_key(state, &self.round_keys[round]);
        }
        sub_bytes(state, &SBOX);
        shift_rows(state);
        add_round_key(state, &self.round_keys[ROUNDS]);
    }

    fn decrypt_in_place(&self, state: &mut [u8; BLOCK]) {
        add_round_key(state, &self.round_keys[ROUNDS]);
        for round in (1..ROUNDS).rev() {
            inv_shift_rows(state);
            sub_bytes(state, &INV_SBOX);
            add_round_key(state, &self.round_keys[round]);
            inv_mix_columns(state);
        }
        inv_shift_rows(state);
        sub_bytes(state, &INV_SBOX);
        add_round_key(state, &self.round_keys[0]);
    }
}

impl BlockCipher for AesKey128 {
    fn block_len(&self) -> usize {
        BLOCK
    }

    fn encrypt_block_mut(&self, block: &mut [u8]) {
        let state: &mut [u8; BLOCK] = block.try_into().expect("AES block is 16 bytes");
        self.encrypt_in_place(state);
    }

    fn decrypt_block_mut(&self, block: &mut [u8]) {
        let state: &mut [u8; BLOCK] = block.try_into().expect("AES block is 16 bytes");
        self.decrypt_in_place(state);
    }
}

fn to_block(block: &[u8]) -> Result<[u8; BLOCK], BlockCipherError> {
    block.try_into().map_err(|_| BlockCipherError::BlockLength {
        expected: BLOCK,
        got: block.len(),
    })
}

fn expand_key(key: &[u8; 16]) -> [[u8; BLOCK]; ROUNDS + 1] {
    let mut words = [[0u8; 4]; 4 * (ROUNDS + 1)];
    for (i, w) in words.iter_mut().take(4).enumerate() {
        w.copy_from_slice(&key[4 * i..4 * i + 4]);
    }
    for i in 4..words.len() {
        let mut temp = words[i - 1];
        if i % 4 == 0 {
            temp.rotate_left(1);
            for b in temp.iter_mut() {
                *b = SBOX[*b as usize];
            }
            temp[0] ^= RCON[i / 4 - 1];
        }
        for j in 0..4 {
            words[i][j] = words[i - 4][j] ^ temp[j];
        }
    }
    let mut round_keys = [[0u8; BLOCK]; ROUNDS + 1];
    for (r, rk) in round_keys.iter_mut().enumerate() {
        for c in 0..4 {
            rk[4 * c..4 * c + 4].copy_from_slice(&words[4 * r + c]);
        }
    }
    round_keys
}

// The state is column-major: byte (row, col) lives at index 4 * col + row.

fn add_round_key(state: &mut [u8; BLOCK], key: &[u8; BLOCK]) {
    for (s, k) in state.iter_mut().zip(key) {
        *s ^= k;
    }
}

fn sub_bytes(state: &mut [u8; BLOCK], table: &[u8; 256]) {
    for b in state.iter_mut() {
        *b = table[*b as usize];
    }
}

fn shift_rows(state: &mut [u8; BLOCK]) {
    let old = *state;
    for row in 1..4 {
        for col in 0..4 {
            state[4 * col + row] = old[4 * ((col + row) % 4) + row];
        }
    }
}

fn inv_shift_rows(state: &mut [u8; BLOCK]) {
    let old = *state;
    for row in 1..4 {
        for col in 0..4 {
            state[4 * ((col + row) % 4) + row] = old[4 * col + row];
        }
    }
}

fn mix_columns(state: &mut [u8; BLOCK]) {
    for col in state.chunks_exact_mut(4) {
        let [a0, a1, a2, a3] = [col[0], col[1], col[2], col[3]];
        let all = a0 ^ a1 ^ a2 ^ a3;
        col[0] ^= all ^ xtime(a0 ^ a1);
        col[1] ^= all ^ xtime(a1 ^ a2);
        col[2] ^= all ^ xtime(a2 ^ a3);
        col[3] ^= all ^ xtime(a3 ^ a0);
    }
}

fn inv_mix_columns(state: &mut [u8; BLOCK]) {
    for col in state.chunks_exact_mut(4) {
        let a = [col[0], col[1], col[2], col[3]];
        for row in 0..4 {
            col[row] = gmul(a[row], 0x0e)
                ^ gmul(a[(row + 1) % 4], 0x0b)
                ^ gmul(a[(row + 2) % 4], 0x0d)
                ^ gmul(a[(row + 3) % 4], 0x09);
        }
    }
}
