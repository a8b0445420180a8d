//! The family `y² = t^{p²} − t` with `G = P ⋊ C`, `#P = p`, `#C = 2p − 2`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::is_prime;
use crate::engine::{self, EngineError};
use crate::model::{BranchOrbit, CoverData, Decomposition, GroupData, IndecomposableLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperellipticError {
    #[error("p = {0} must be a prime greater than 3")]
    InvalidPrime(u64),
    #[error("the closed form needs 2 <= m and 3m < p; got p = {p}, m = {m}")]
    OutOfRange { p: u64, m: u64 },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("engine and closed form disagree at p = {p}, m = {m}: engine {engine}, closed form {expected}")]
    Mismatch {
        p: u64,
        m: u64,
        engine: Decomposition,
        expected: Decomposition,
    },
}

fn check_prime(p: u64) -> Result<(), HyperellipticError> {
    if p <= 3 || !is_prime(p) {
        return Err(HyperellipticError::InvalidPrime(p));
    }
    Ok(())
}

/// Group and branch data, with `ord_KY` filled in at the three branch orbits
/// (above `0`, `1` and `∞` of `Z = P¹`).
pub fn build_cover(p: u64) -> Result<(GroupData, CoverData), HyperellipticError> {
    check_prime(p)?;
    let c = 2 * p - 2;
    let group = GroupData::new(p, 1, c, 2).map_err(EngineError::from)?;
    let cover = CoverData {
        genus_z: 0,
        orbits: vec![
            BranchOrbit::tame(c, 2 * p - 3).with_ord_ky(BigInt::from(2 * p - 3)),
            BranchOrbit::tame(2, 1).with_ord_ky(1),
            BranchOrbit::tame(c, p)
                .with_jumps(vec![2])
                .with_ord_ky(-BigInt::from(2 * p - 1)),
        ],
    };
    Ok((group, cover))
}

/// Closed form for `H^0(X, Ω_X^{⊗m})` when `1 < m < p/3`.
pub fn expected(p: u64, m: u64) -> Result<Decomposition, HyperellipticError> {
    check_prime(p)?;
    if m < 2 || 3 * m >= p {
        return Err(HyperellipticError::OutOfRange { p, m });
    }
    let dm = m % 2;
    let mut d = Decomposition::new();
    let mut put = |a: u64, b: u64, k: u64| d.add(IndecomposableLabel::new(a, b), BigInt::from(k));

    put(p - 2 * m, (p - 3 * m + 1 + dm) / 2, 1);
    put(2 * p - 2 * m, (2 * p - 3 * m + 2 - dm) / 2, 1);

    let even_low = (m - dm) / 2;
    let even_set = (p - m + 1)..=(p - 1 - (m + dm) / 2);
    let odd_high = (m + dm) / 2;
    let odd_set = (p.div_ceil(2) - m)..=(p - 2 - (m - dm) / 2);
    for i in 0..=(p - 2) {
        let even = if even_set.contains(&i) { even_low + 1 } else { even_low };
        put(2 * i, p, even);
        let odd = if odd_set.contains(&i) { odd_high } else { odd_high - 1 };
        put(2 * i + 1, p, odd);
    }
    Ok(d)
}

/// Runs the engine on the family and compares with the closed form.
pub fn verify(p: u64, m: u64) -> Result<Decomposition, HyperellipticError> {
    let expected = expected(p, m)?;
    let (group, cover) = build_cover(p)?;
    let engine = engine::poly_differentials(&group, &cover, m)?.decomposition;
    if engine != expected {
        return Err(HyperellipticError::Mismatch { p, m, engine, expected });
    }
    Ok(engine)
}

/// Every `(p, m)` with `7 ≤ p ≤ p_max` prime and `1 < m < p/3`.
pub fn grid(p_max: u64) -> Vec<(u64, u64)> {
    (7..=p_max)
        .filter(|&p| is_prime(p))
        .flat_map(|p| (2..).take_while(move |m| 3 * m < p).map(move |m| (p, m)))
        .collect()
}

/// Verifies the whole grid, returning the number of cases checked.
pub fn sweep(p_max: u64) -> Result<usize, HyperellipticError> {
    let cases = grid(p_max);
    for &(p, m) in &cases {
        verify(p, m)?;
    }
    Ok(cases.len())
}
