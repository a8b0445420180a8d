//! Independent check of the hyperelliptic family `y² = t^{p²} − t` from an
//! explicit basis of polydifferentials.
//!
//! `H^0(X, Ω^{⊗m})` has basis `t^i y^k (dt/y)^m` with `k ∈ {0, 1}` and
//! `2i + p² k ≤ m(p² − 3)`. The translation `t ↦ t + 1` fixes `y` and `dt`, so
//! each `k` gives the `P`-module of polynomials in `t` of degree `≤ N_k`. In
//! terms of `u = t^p − t` this splits into the `P`-stable blocks
//! `span{u^q t^r : 0 ≤ r < p}`, uniserial of length `p` except the top one.
//! The socle of the block at `q` is spanned by `u^q y^k (dt/y)^m`; the tame
//! generator acts on it through the label `−(2q + k + m) mod (2p − 2)`.

use galmod_core::deformation::tangent_report;
use galmod_core::engine::poly_differentials;
use galmod_core::hyperelliptic::{build_cover, expected, grid};
use galmod_core::model::{Decomposition, IndecomposableLabel};
use num_bigint::BigInt;

fn oracle(p: u64, m: u64) -> Decomposition {
    let c = 2 * p - 2;
    let top = m * (p * p - 3);
    let mut d = Decomposition::new();
    for k in 0..=1u64 {
        if p * p * k > top {
            continue;
        }
        let count = (top - p * p * k) / 2 + 1;
        let full = count / p;
        let label = |q: u64| (2 * c - (2 * q + k + m) % c) % c;
        for q in 0..full {
            d.add(IndecomposableLabel::new(label(q), p), BigInt::from(1));
        }
        if !count.is_multiple_of(p) {
            d.add(IndecomposableLabel::new(label(full), count % p), BigInt::from(1));
        }
    }
    d
}

#[test]
fn oracle_spot_value() {
    let d = oracle(7, 2);
    assert_eq!(d.multiplicity(3, 1), BigInt::from(1));
    assert_eq!(d.multiplicity(10, 5), BigInt::from(1));
    assert_eq!(d.total_dimension(), BigInt::from(69));
}

#[test]
fn closed_form_matches_explicit_basis() {
    for (p, m) in grid(31) {
        assert_eq!(expected(p, m).unwrap(), oracle(p, m), "p={p} m={m}");
    }
}

#[test]
fn engine_matches_explicit_basis_beyond_the_closed_form_range() {
    for p in [5u64, 7, 11, 13, 17, 19, 23] {
        let (group, cover) = build_cover(p).unwrap();
        for m in 2..=12 {
            let engine = poly_differentials(&group, &cover, m).unwrap().decomposition;
            assert_eq!(engine, oracle(p, m), "p={p} m={m}");
        }
    }
}

#[test]
fn one_dimensional_tangent_space() {
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
        let (group, cover) = build_cover(p).unwrap();
        let report = tangent_report(&group, &cover).unwrap();
        assert_eq!(report.tangent_dimension, BigInt::from(1), "p={p}");
        assert_eq!(report.coinvariant_dimension, BigInt::from(1), "p={p}");
        // Each summand with trivial top contributes one coinvariant.
        let zero_socle: BigInt = oracle(p, 2)
            .iter()
            .filter(|(l, _)| l.top(&group) == 0)
            .map(|(_, k)| k.clone())
            .sum();
        assert_eq!(zero_socle, BigInt::from(1), "p={p}");
    }
}
