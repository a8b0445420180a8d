//! Dimension of the tangent space of the equivariant deformation functor.

use num_bigint::BigInt;

use crate::engine::{self, EngineError};
use crate::model::{CoverData, Decomposition, GroupData};

/// `Σ_{j=0}^{p^{n_I}-1} n_{χ^j.0, (j+1) p^{n-n_I}}` read off from the
/// decomposition of `H^0(X, Ω_X^{⊗2})`.
pub fn tangent_dimension(group: &GroupData, n_i: u32, bicanonical: &Decomposition) -> BigInt {
    let layers = group.p_pow(n_i);
    let stride = group.p_pow(group.n - n_i);
    (0..layers)
        .map(|j| bicanonical.multiplicity(group.chi_act(j as i64, 0), (j + 1) * stride))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentReport {
    pub bicanonical: Decomposition,
    pub tangent_dimension: BigInt,
    pub coinvariant_dimension: BigInt,
}

/// Runs the engine with `m = 2` and evaluates both the layer formula and the
/// coinvariant count.
pub fn tangent_report(group: &GroupData, cover: &CoverData) -> Result<TangentReport, EngineError> {
    let out = engine::poly_differentials(group, cover, 2)?;
    let tangent_dimension = tangent_dimension(group, cover.n_i(), &out.decomposition);
    let coinvariant_dimension = out.decomposition.coinvariant_dimension(group);
    Ok(TangentReport {
        bicanonical: out.decomposition,
        tangent_dimension,
        coinvariant_dimension,
    })
}
