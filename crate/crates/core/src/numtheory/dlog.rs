use std::collections::HashMap;

use num_integer::Roots;
use num_traits::One;

use super::{mod_inverse, mod_pow, Natural, NumTheoryError};

/// Smallest `m` in `[0, order_bound)` with `base^m = target (mod modulus)`,
/// found by baby-step giant-step in about `2 * sqrt(order_bound)` group
/// multiplications.
///
/// `base` must be invertible modulo `modulus`.
pub fn discrete_log_bsgs(
    base: &Natural,
    target: &Natural,
    modulus: &Natural,
    order_bound: u64,
) -> Result<u64, NumTheoryError> {
    if modulus <= &Natural::one() {
        return Err(NumTheoryError::ModulusTooSmall);
    }
    if order_bound == 0 {
        return Err(NumTheoryError::LogNotFound { bound: 0 });
    }
    let step = {
        let root = order_bound.sqrt();
        if root * root < order_bound {
            root + 1
        } else {
            root
        }
    };

    // baby steps: base^j for j < step, keeping the smallest j per value
    let base = base % modulus;
    let mut table = HashMap::with_capacity(step as usize);
    let mut acc = Natural::one();
    for j in 0..step {
        table.entry(acc.clone()).or_insert(j);
        acc = acc * &base % modulus;
    }

    let giant = mod_inverse(&mod_pow(&base, &Natural::from(step), modulus)?, modulus)?;
    let mut gamma = target % modulus;
    for i in 0..step {
        if let Some(&j) = table.get(&gamma) {
            let m = i * step + j;
            return if m < order_bound {
                Ok(m)
            } else {
                Err(NumTheoryError::LogNotFound { bound: order_bound })
            };
        }
        gamma = gamma * &giant % modulus;
    }
    Err(NumTheoryError::LogNotFound { bound: order_bound })
}
