//! Restriction of the modular decomposition to the subgroups `V` (cyclic of
//! order `(ℓ − ε)/2`) and `Δ_1`, `Δ_2` (dihedral of order `ℓ − ε`), fed
//! through the general engine.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::{ModularError, ModularParams};
use crate::engine::{self, EngineError};
use crate::genus;
use crate::model::{BranchOrbit, CoverData, Decomposition, GroupData, IndecomposableLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    V,
    /// The dihedral subgroup whose `Σ_3` subgroups occur as inertia groups
    /// (the only one considered when `ε = −ε'`).
    Delta1,
    /// The dihedral subgroup whose `Σ_3` subgroups do not occur as inertia groups.
    Delta2,
}

impl Subgroup {
    pub const ALL: [Subgroup; 3] = [Subgroup::V, Subgroup::Delta1, Subgroup::Delta2];

    pub fn applies(&self, q: &ModularParams) -> bool {
        !(matches!(self, Subgroup::Delta2) && q.mixed())
    }

    /// Number of branch orbits of `Y → Z` containing wild points.
    fn wild_branched(&self, q: &ModularParams) -> u64 {
        match self {
            Subgroup::V => 0,
            Subgroup::Delta1 if q.mixed() => 1,
            Subgroup::Delta1 => 2,
            Subgroup::Delta2 => 0,
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Subgroup::V => "V",
            Subgroup::Delta1 => "Delta1",
            Subgroup::Delta2 => "Delta2",
        };
        f.write_str(name)
    }
}

/// `g(X(ℓ)) = 1 + (ℓ² − 1)(ℓ − 6)/24`.
pub fn modular_genus(ell: u64) -> u64 {
    1 + (ell * ell - 1) * (ell - 6) / 24
}

fn local_error(msg: impl Into<String>) -> ModularError {
    ModularError::Local(msg.into())
}

/// Group and branch data of `X(ℓ) → X(ℓ)/Γ` in characteristic 3, ready for
/// the polydifferential mode of the engine.
pub fn build_local_cover(ell: u64, subgroup: Subgroup) -> Result<(GroupData, CoverData), ModularError> {
    let q = ModularParams::new(ell, 2)?;
    if !subgroup.applies(&q) {
        return Err(local_error(format!("{subgroup} only exists when ℓ ≡ ε (mod 4)")));
    }
    let group = match subgroup {
        Subgroup::V => GroupData::new(3, q.n, q.n_prime, 0),
        _ => GroupData::new(3, q.n, 2, 1),
    }
    .map_err(|e| local_error(e.to_string()))?;

    let wild = BranchOrbit::tame(1, 0).with_jumps(vec![1]);
    let tame = BranchOrbit::tame(2, 1).with_ord_ky(7);
    let mut orbits = Vec::new();
    match subgroup {
        Subgroup::V => {
            orbits.push(wild);
            if !q.mixed() {
                orbits.push(tame.clone());
                orbits.push(tame);
            }
        }
        _ => {
            let i0 = subgroup.wild_branched(&q);
            let branched = ((ell as i64 - q.epsilon_prime) / 2) as u64;
            for _ in 0..i0 {
                orbits.push(BranchOrbit::tame(2, 1).with_jumps(vec![1]).with_ord_ky(1));
            }
            for _ in 0..(q.n_prime - i0) / 2 {
                orbits.push(wild.clone());
            }
            for _ in i0..branched {
                orbits.push(tame.clone());
            }
        }
    }

    // Riemann–Hurwitz: 2g(X) − 2 = #Γ (2g(Z) − 2) + Σ (orbit size) d_x.
    let ramification: BigInt = orbits
        .iter()
        .map(|o| genus::orbit_size(&group, o) * genus::different_exponent(3, o))
        .sum();
    let rest: BigInt = BigInt::from(2 * modular_genus(ell)) - 2 - ramification;
    let (quot, rem) = rest.div_rem(&BigInt::from(group.order()));
    if rem != BigInt::from(0) || quot.is_odd() || quot < BigInt::from(-2) {
        return Err(local_error(format!("no integral g(Z) for ℓ = {ell}, {subgroup}")));
    }
    let genus_z = u64::try_from(quot / 2 + 1).map_err(|_| local_error("g(Z) out of range"))?;
    let cover = CoverData { genus_z, orbits };
    Ok((group, cover))
}

/// The non-projective part of `Res_Γ H^0(X(ℓ), Ω^{⊗m})` predicted in closed form.
pub fn expected_local_stable(ell: u64, m: u64, subgroup: Subgroup) -> Result<Decomposition, ModularError> {
    let q = ModularParams::new(ell, m)?;
    if !subgroup.applies(&q) {
        return Err(local_error(format!("{subgroup} only exists when ℓ ≡ ε (mod 4)")));
    }
    let short = q.sylow_order() / 3;
    let long = 2 * short;
    let mut d = Decomposition::new();
    let mut put = |a: u64, b: u64, k: i64| d.add(IndecomposableLabel::new(a, b), BigInt::from(k));
    match subgroup {
        Subgroup::V => {
            for a in 0..q.n_prime {
                put(a, short, q.delta0 as i64);
                put(a, long, q.delta1 as i64);
            }
        }
        _ => {
            let np = q.n_prime as i64;
            let shift = subgroup.wild_branched(&q) as i64 * (1 - 2 * q.delta_m as i64);
            let (d0, d1) = (q.delta0 as i64, q.delta1 as i64);
            put(0, short, d0 * (np + shift) / 2);
            put(1, short, d0 * (np - shift) / 2);
            put(0, long, d1 * (np - shift) / 2);
            put(1, long, d1 * (np + shift) / 2);
        }
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalComparison {
    pub ell: u64,
    pub m: u64,
    pub subgroup: Subgroup,
    pub engine: Decomposition,
    pub expected: Decomposition,
}

impl LocalComparison {
    pub fn agrees(&self) -> bool {
        self.engine == self.expected
    }
}

/// Runs the engine on the local cover and extracts its non-projective part.
pub fn compare_local(ell: u64, m: u64, subgroup: Subgroup) -> Result<LocalComparison, ModularError> {
    let (group, cover) = build_local_cover(ell, subgroup)?;
    let out = engine::poly_differentials(&group, &cover, m)
        .map_err(|e: EngineError| local_error(e.to_string()))?;
    let engine = out.decomposition.non_projective(group.p_pow(group.n));
    let expected = expected_local_stable(ell, m, subgroup)?;
    Ok(LocalComparison { ell, m, subgroup, engine, expected })
}
