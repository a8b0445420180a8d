//! Riemann–Hurwitz bookkeeping for `X → Y = X/I → Z = X/G`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::model::{BranchOrbit, CoverData, GroupData, ValidationError};

/// Number of points of `X` in the orbit, `#G / (p^{n_x} c_y)`.
pub fn orbit_size(group: &GroupData, orbit: &BranchOrbit) -> BigInt {
    BigInt::from(group.order() / (group.p_pow(orbit.n_x()) * orbit.tame_order))
}

/// Order of `Ḡ = G/I`.
pub fn quotient_order(group: &GroupData, cover: &CoverData) -> u64 {
    group.p_pow(group.n - cover.n_i()) * group.c
}

/// Number of points of `Y` lying over the orbit, `#Ḡ / c_y`.
pub fn y_orbit_size(group: &GroupData, cover: &CoverData, orbit: &BranchOrbit) -> BigInt {
    BigInt::from(quotient_order(group, cover) / orbit.tame_order)
}

fn higher_ramification_sum(p: u64, orbit: &BranchOrbit) -> BigInt {
    let nx = orbit.n_x();
    let mut sum = BigInt::from(0);
    let mut prev = 0u64;
    for (k, &jump) in orbit.jumps.iter().enumerate() {
        let order = BigInt::from(p).pow(nx - k as u32);
        sum += BigInt::from(jump - prev) * (order - 1);
        prev = jump;
    }
    sum
}

/// Exponent `d_x` of the different of `X → Z` at a point of the orbit.
pub fn different_exponent(p: u64, orbit: &BranchOrbit) -> BigInt {
    let g0 = BigInt::from(p).pow(orbit.n_x()) * orbit.tame_order;
    g0 - 1 + higher_ramification_sum(p, orbit)
}

/// `Σ_{i≥0} (#I_{x,i} − 1)`, the coefficient of `Ram_π` at a point of the orbit.
pub fn wild_different(p: u64, orbit: &BranchOrbit) -> BigInt {
    BigInt::from(p).pow(orbit.n_x()) - 1 + higher_ramification_sum(p, orbit)
}

fn genus_from_twice(curve: &'static str, twice_minus_two: BigInt) -> Result<BigInt, ValidationError> {
    if twice_minus_two.is_odd() || twice_minus_two < BigInt::from(-2) {
        return Err(ValidationError::InconsistentGenus {
            curve,
            twice_minus_two: twice_minus_two.to_string(),
        });
    }
    Ok(twice_minus_two / 2 + 1)
}

/// `g(X)` from Riemann–Hurwitz for `X → Z`.
pub fn genus_x(group: &GroupData, cover: &CoverData) -> Result<BigInt, ValidationError> {
    let order = BigInt::from(group.order());
    let mut total = &order * (BigInt::from(2) * cover.genus_z - 2);
    for orbit in &cover.orbits {
        total += orbit_size(group, orbit) * different_exponent(group.p, orbit);
    }
    genus_from_twice("X", total)
}

/// `g(Y)` from the tame cover `Y → Z`.
pub fn genus_y(group: &GroupData, cover: &CoverData) -> Result<BigInt, ValidationError> {
    let qbar = BigInt::from(quotient_order(group, cover));
    let mut total = &qbar * (BigInt::from(2) * cover.genus_z - 2);
    for orbit in cover.branched() {
        total += y_orbit_size(group, cover, orbit) * (orbit.tame_order - 1);
    }
    genus_from_twice("Y", total)
}

/// `g(Y)` recovered from `g(X)` through the wild cover `X → Y`.
pub fn genus_y_from_x(group: &GroupData, cover: &CoverData) -> Result<BigInt, ValidationError> {
    let gx = genus_x(group, cover)?;
    let mut total: BigInt = BigInt::from(2) * gx - 2;
    for orbit in &cover.orbits {
        total -= orbit_size(group, orbit) * wild_different(group.p, orbit);
    }
    let layers = BigInt::from(group.p_pow(cover.n_i()));
    if !total.is_multiple_of(&layers) {
        return Err(ValidationError::InconsistentGenus {
            curve: "Y",
            twice_minus_two: format!("{total}/{layers}"),
        });
    }
    genus_from_twice("Y", total / layers)
}

/// `deg E = Σ (orbit size) · e`.
pub fn degree(group: &GroupData, cover: &CoverData) -> BigInt {
    cover
        .orbits
        .iter()
        .map(|o| orbit_size(group, o) * &o.e)
        .sum()
}

/// Coefficient of `m K_X` at a point of the orbit, `m (p^{n_x} ord_KY + Σ_i (#I_{x,i} − 1))`.
///
/// Returns `None` when `ord_KY` is missing.
pub fn canonical_multiple_coefficient(p: u64, orbit: &BranchOrbit, m: u64) -> Option<BigInt> {
    let ord = orbit.ord_ky.as_ref()?;
    let pulled = BigInt::from(p).pow(orbit.n_x()) * ord + wild_different(p, orbit);
    Some(pulled * m)
}
