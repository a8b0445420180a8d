//! Group, cover and decomposition types shared by every other module.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{gcd, is_prime};
use crate::genus;

/// Largest number of layers `p^{n_I}` the engine accepts.
pub const MAX_LAYERS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("c must be positive")]
    ZeroTameOrder,
    #[error("c = {c} is divisible by p = {p}")]
    NotCoprime { p: u64, c: u64 },
    #[error("#G = p^n * c does not fit in 64 bits")]
    GroupTooLarge,
    #[error("chi index {chi} is outside [0, {c})")]
    ChiOutOfRange { chi: u64, c: u64 },
    #[error("chi index {chi} has order {order}, which does not divide p - 1 = {bound}")]
    ChiOrder { chi: u64, order: u64, bound: u64 },
    #[error("orbit {index}: {reason}")]
    InvalidOrbit { index: usize, reason: String },
    #[error("orbit {index}: ord_KY is required when the tame order is {tame_order}")]
    MissingCanonicalData { index: usize, tame_order: u64 },
    #[error("p^n_I = {0} exceeds the limit of {MAX_LAYERS} layers")]
    TooManyLayers(u64),
    #[error("2g({curve}) - 2 = {twice_minus_two} is not an even integer >= -2")]
    InconsistentGenus {
        curve: &'static str,
        twice_minus_two: String,
    },
    #[error("deg E = {degree} does not exceed 2g(X) - 2 = {bound}")]
    DegreeTooSmall { degree: BigInt, bound: BigInt },
    #[error("m = {0} is not supported; m must be at least 2")]
    InvalidM(u64),
}

impl ValidationError {
    /// Name of the violated invariant.
    pub fn name(&self) -> &'static str {
        match self {
            ValidationError::NotPrime(_) => "NotPrime",
            ValidationError::ZeroTameOrder => "ZeroTameOrder",
            ValidationError::NotCoprime { .. } => "NotCoprime",
            ValidationError::GroupTooLarge => "GroupTooLarge",
            ValidationError::ChiOutOfRange { .. } => "ChiOutOfRange",
            ValidationError::ChiOrder { .. } => "ChiOrder",
            ValidationError::InvalidOrbit { .. } => "InvalidOrbit",
            ValidationError::MissingCanonicalData { .. } => "MissingCanonicalData",
            ValidationError::TooManyLayers(_) => "TooManyLayers",
            ValidationError::InconsistentGenus { .. } => "InconsistentGenus",
            ValidationError::DegreeTooSmall { .. } => "DegreeTooSmall",
            ValidationError::InvalidM(_) => "InvalidM",
        }
    }
}

/// `G = P ⋊_χ C` with `#P = p^n`, `#C = c`, and `χ` acting on labels by
/// `a ↦ a + chi_index (mod c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupData {
    pub p: u64,
    pub n: u32,
    pub c: u64,
    pub chi_index: u64,
}

impl GroupData {
    pub fn new(p: u64, n: u32, c: u64, chi_index: u64) -> Result<Self, ValidationError> {
        let g = GroupData { p, n, c, chi_index };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        if !is_prime(self.p) {
            return Err(ValidationError::NotPrime(self.p));
        }
        if self.c == 0 {
            return Err(ValidationError::ZeroTameOrder);
        }
        if self.c.is_multiple_of(self.p) {
            return Err(ValidationError::NotCoprime { p: self.p, c: self.c });
        }
        self.p
            .checked_pow(self.n)
            .and_then(|q| q.checked_mul(self.c))
            .ok_or(ValidationError::GroupTooLarge)?;
        if self.chi_index >= self.c {
            return Err(ValidationError::ChiOutOfRange { chi: self.chi_index, c: self.c });
        }
        let order = self.chi_order();
        if !(self.p - 1).is_multiple_of(order) {
            return Err(ValidationError::ChiOrder {
                chi: self.chi_index,
                order,
                bound: self.p - 1,
            });
        }
        Ok(())
    }

    /// Order of `χ` as an element of `Z/c`.
    pub fn chi_order(&self) -> u64 {
        self.c / gcd(self.c, self.chi_index)
    }

    pub fn p_pow(&self, k: u32) -> u64 {
        self.p.pow(k)
    }

    pub fn order(&self) -> u64 {
        self.p_pow(self.n) * self.c
    }

    /// `χ^i.a`, the label of `S_χ^{⊗i} ⊗ S_a`.
    pub fn chi_act(&self, i: i64, a: u64) -> u64 {
        let c = self.c as i128;
        let v = a as i128 + (i as i128) * (self.chi_index as i128);
        v.rem_euclid(c) as u64
    }
}

/// `U_{a,b}`: uniserial with socle `S_a` and `b` composition factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndecomposableLabel {
    pub a: u64,
    pub b: u64,
}

impl IndecomposableLabel {
    pub fn new(a: u64, b: u64) -> Self {
        IndecomposableLabel { a, b }
    }

    /// Label of the top composition factor, `χ^{-(b-1)}.a`.
    pub fn top(&self, group: &GroupData) -> u64 {
        group.chi_act(-((self.b as i64) - 1), self.a)
    }

    /// Composition factors listed from the socle upwards.
    pub fn composition_factors(&self, group: &GroupData) -> Vec<u64> {
        (0..self.b).map(|k| group.chi_act(-(k as i64), self.a)).collect()
    }
}

impl fmt::Display for IndecomposableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({},{})", self.a, self.b)
    }
}

/// One `G`-orbit of points of `X`, i.e. one point `z` of `Z = X/G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchOrbit {
    /// Coefficient of `E` at each point of the orbit.
    pub e: BigInt,
    /// Lower ramification jumps of `I_x`; empty when `p` does not divide `#G_x`.
    pub jumps: Vec<u64>,
    /// `c_y`, the order of the inertia group in `G/I` of a point below.
    pub tame_order: u64,
    /// Label `φ(y)` with `θ_y = Res S_φ`.
    pub phi: u64,
    /// Order of the canonical divisor `K_Y` at a point below.
    pub ord_ky: Option<BigInt>,
}

impl BranchOrbit {
    pub fn tame(tame_order: u64, phi: u64) -> Self {
        BranchOrbit {
            e: BigInt::zero(),
            jumps: Vec::new(),
            tame_order,
            phi,
            ord_ky: None,
        }
    }

    pub fn with_jumps(mut self, jumps: Vec<u64>) -> Self {
        self.jumps = jumps;
        self
    }

    pub fn with_e(mut self, e: impl Into<BigInt>) -> Self {
        self.e = e.into();
        self
    }

    pub fn with_ord_ky(mut self, ord: impl Into<BigInt>) -> Self {
        self.ord_ky = Some(ord.into());
        self
    }

    /// `n_x` with `#I_x = p^{n_x}`.
    pub fn n_x(&self) -> u32 {
        self.jumps.len() as u32
    }

    pub fn is_branched(&self) -> bool {
        self.tame_order > 1
    }

    /// `μ_{a,i}(y)`.
    pub fn mu(&self, a: u64, i: i64) -> bool {
        mu_indicator(a, i, self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverData {
    pub genus_z: u64,
    pub orbits: Vec<BranchOrbit>,
}

impl CoverData {
    /// `n_I`, the largest `n_x` over all orbits.
    pub fn n_i(&self) -> u32 {
        self.orbits.iter().map(BranchOrbit::n_x).max().unwrap_or(0)
    }

    pub fn branched(&self) -> impl Iterator<Item = &BranchOrbit> {
        self.orbits.iter().filter(|o| o.is_branched())
    }
}

/// `μ_{a,i}(y) = 1` iff `a ≡ i·φ(y) (mod c_y)`.
pub fn mu_indicator(a: u64, i: i64, orbit: &BranchOrbit) -> bool {
    let c = orbit.tame_order as i128;
    let lhs = (a as i128).rem_euclid(c);
    let rhs = ((i as i128) * (orbit.phi as i128)).rem_euclid(c);
    lhs == rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `H^0(X, O_X(E))` for the divisor given by the orbit coefficients `e`.
    RiemannRoch,
    /// `H^0(X, Ω_X^{⊗m})`, built from `ord_KY`.
    PolyDifferential { m: u64 },
    /// `H^0(X, Ω_X)`.
    Differentials,
}

/// Multiset of indecomposable labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    entries: BTreeMap<IndecomposableLabel, BigInt>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, M>(pairs: I) -> Self
    where
        I: IntoIterator<Item = ((u64, u64), M)>,
        M: Into<BigInt>,
    {
        let mut d = Decomposition::new();
        for ((a, b), m) in pairs {
            d.add(IndecomposableLabel::new(a, b), m.into());
        }
        d
    }

    /// Adds `mult` copies of `label`; zero multiplicities are not stored.
    pub fn add(&mut self, label: IndecomposableLabel, mult: BigInt) {
        if mult.is_zero() {
            return;
        }
        let slot = self.entries.entry(label).or_insert_with(BigInt::zero);
        *slot += mult;
        if slot.is_zero() {
            self.entries.remove(&label);
        }
    }

    pub fn get(&self, label: &IndecomposableLabel) -> BigInt {
        self.entries.get(label).cloned().unwrap_or_default()
    }

    pub fn multiplicity(&self, a: u64, b: u64) -> BigInt {
        self.get(&IndecomposableLabel::new(a, b))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndecomposableLabel, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_negative(&self) -> bool {
        self.entries.values().any(Signed::is_negative)
    }

    /// Sum of `b · n_{a,b}`.
    pub fn total_dimension(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(l, m)| BigInt::from(l.b) * m)
            .sum()
    }

    /// Sum of multiplicities of summands with `b < p^n`.
    pub fn non_projective(&self, projective_length: u64) -> Decomposition {
        Decomposition {
            entries: self
                .entries
                .iter()
                .filter(|(l, _)| l.b < projective_length)
                .map(|(l, m)| (*l, m.clone()))
                .collect(),
        }
    }

    /// Dimension of the coinvariants: one for each summand whose top is
    /// trivial, i.e. `a = χ^{b-1}.0`.
    pub fn coinvariant_dimension(&self, group: &GroupData) -> BigInt {
        self.entries
            .iter()
            .filter(|(l, _)| l.a == group.chi_act(l.b as i64 - 1, 0))
            .map(|(_, m)| m.clone())
            .sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, m) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{m}*{l}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn orbit_error(index: usize, reason: impl Into<String>) -> ValidationError {
    ValidationError::InvalidOrbit { index, reason: reason.into() }
}

/// Checks the structural invariants of the input for the given mode.
pub fn validate_input(
    group: &GroupData,
    cover: &CoverData,
    mode: Mode,
) -> Result<(), ValidationError> {
    group.validate()?;
    for (index, orbit) in cover.orbits.iter().enumerate() {
        if orbit.tame_order == 0 || !group.c.is_multiple_of(orbit.tame_order) {
            return Err(orbit_error(
                index,
                format!("tame order {} does not divide c = {}", orbit.tame_order, group.c),
            ));
        }
        if orbit.phi >= orbit.tame_order {
            return Err(orbit_error(
                index,
                format!("phi = {} is not below the tame order {}", orbit.phi, orbit.tame_order),
            ));
        }
        if orbit.n_x() > group.n {
            return Err(orbit_error(
                index,
                format!("{} jumps but n = {}", orbit.jumps.len(), group.n),
            ));
        }
        if orbit.jumps.first() == Some(&0) || orbit.jumps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(orbit_error(index, "jumps must be positive and strictly increasing"));
        }
    }
    let layers = group.p_pow(cover.n_i());
    if layers > MAX_LAYERS {
        return Err(ValidationError::TooManyLayers(layers));
    }
    let gx = genus::genus_x(group, cover)?;
    genus::genus_y(group, cover)?;
    match mode {
        Mode::RiemannRoch => {
            let degree = genus::degree(group, cover);
            let bound = BigInt::from(2) * &gx - 2;
            if degree <= bound {
                return Err(ValidationError::DegreeTooSmall { degree, bound });
            }
        }
        Mode::PolyDifferential { m } => {
            if m < 2 {
                return Err(ValidationError::InvalidM(m));
            }
            for (index, orbit) in cover.orbits.iter().enumerate() {
                match &orbit.ord_ky {
                    None if orbit.is_branched() => {
                        return Err(ValidationError::MissingCanonicalData {
                            index,
                            tame_order: orbit.tame_order,
                        })
                    }
                    Some(ord) => {
                        let c = BigInt::from(orbit.tame_order);
                        if !(ord + 1u32).is_multiple_of(&c) {
                            return Err(orbit_error(
                                index,
                                format!("ord_KY = {ord} is not -1 modulo the tame order {c}"),
                            ));
                        }
                    }
                    None => {}
                }
            }
            let bound = BigInt::from(2) * &gx - 2;
            let degree = BigInt::from(m) * &bound;
            if degree <= bound {
                return Err(ValidationError::DegreeTooSmall { degree, bound });
            }
        }
        Mode::Differentials => {}
    }
    Ok(())
}
