use num_integer::Roots;

use super::ModularError;
use crate::arith::{is_prime, legendre};

/// Largest `ℓ` accepted by [`class_number`].
pub const CLASS_NUMBER_BOUND: u64 = 10_000;

/// `Σ_{d=1}^{k} (d / ℓ)`.
pub fn legendre_sum(k: u64, ell: u64) -> i64 {
    (1..=k).map(|d| i64::from(legendre(d as i64, ell))).sum()
}

/// Class number of `Q(√−ℓ)` for a prime `ℓ ≡ 3 (mod 4)`, by counting reduced
/// primitive forms `(a, b, c)` of discriminant `−ℓ`.
pub fn class_number(ell: u64) -> Result<u64, ModularError> {
    class_number_bounded(ell, CLASS_NUMBER_BOUND)
}

pub fn class_number_bounded(ell: u64, bound: u64) -> Result<u64, ModularError> {
    if !is_prime(ell) || ell % 4 != 3 {
        return Err(ModularError::WrongResidue(ell));
    }
    if ell > bound {
        return Err(ModularError::ClassNumberBound { ell, bound });
    }
    let disc = ell as i64;
    let mut h = 0;
    // |b| ≤ a ≤ c and 3a² ≤ |D|.
    let a_max = (ell / 3).sqrt() + 1;
    for a in 1..=a_max as i64 {
        for b in -a + 1..=a {
            let num = b * b + disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if a == c && b < 0 {
                continue;
            }
            if gcd3(a, b, c) == 1 {
                h += 1;
            }
        }
    }
    Ok(h)
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}
