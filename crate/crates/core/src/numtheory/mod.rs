//! Arbitrary-precision number theory shared by the public-key and
//! homomorphic schemes.
//!
//! [`Natural`] is a plain alias for [`num_bigint::BigUint`]; everything the
//! schemes need on top of it (inverses, primality, prime generation, small
//! discrete logarithms) lives here.

mod dlog;
mod prime;
mod rng;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use dlog::discrete_log_bsgs;
pub use prime::{gen_prime, gen_safe_prime, is_probable_prime, KEYGEN_MR_ROUNDS};
pub use rng::SeededRng;

/// Arbitrary-precision nonnegative integer.
pub type Natural = num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("modulus must be greater than one")]
    ModulusTooSmall,
    #[error("lcm is undefined for a zero operand")]
    ZeroOperand,
    #[error("{value} has no inverse modulo {modulus} (gcd {gcd})")]
    NotInvertible {
        value: Natural,
        modulus: Natural,
        gcd: Natural,
    },
    #[error("no discrete logarithm below {bound}")]
    LogNotFound { bound: u64 },
}

/// `base^exponent mod modulus` by left-to-right square-and-multiply.
pub fn mod_pow(
    base: &Natural,
    exponent: &Natural,
    modulus: &Natural,
) -> Result<Natural, NumTheoryError> {
    if modulus.is_zero() {
        return Err(NumTheoryError::ZeroModulus);
    }
    if modulus.is_one() {
        return Ok(Natural::zero());
    }
    Ok(base.modpow(exponent, modulus))
}

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

pub fn lcm(a: &Natural, b: &Natural) -> Result<Natural, NumTheoryError> {
    if a.is_zero() || b.is_zero() {
        return Err(NumTheoryError::ZeroOperand);
    }
    Ok(a / gcd(a, b) * b)
}

/// Inverse of `a` modulo `modulus` via the extended Euclidean algorithm.
pub fn mod_inverse(a: &Natural, modulus: &Natural) -> Result<Natural, NumTheoryError> {
    if modulus <= &Natural::one() {
        return Err(NumTheoryError::ModulusTooSmall);
    }
    let m = BigInt::from_biguint(Sign::Plus, modulus.clone());
    let (mut old_r, mut r) = (BigInt::from_biguint(Sign::Plus, a % modulus), m.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
    }
    // old_r = gcd(a mod m, m) >= 0
    if !old_r.is_one() {
        return Err(NumTheoryError::NotInvertible {
            value: a.clone(),
            modulus: modulus.clone(),
            gcd: old_r.magnitude().clone(),
        });
    }
    let inv = old_s.mod_floor(&m);
    Ok(inv.magnitude().clone())
}
