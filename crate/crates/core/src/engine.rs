//! Decomposition of `H^0(X, O_X(E))`, `H^0(X, Ω_X^{⊗m})` and `H^0(X, Ω_X)`
//! into indecomposable `kG`-modules.
//!
//! The space is filtered by the `I`-socle series; layer `j` is a projective
//! `kḠ`-module whose multiplicities `n(a, j)` are read off from the divisor
//! `E_j` on `Y = X/I`. Differences of consecutive layers give the
//! multiplicities of the uniserial summands.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{digits, floor_div, mod_floor};
use crate::genus;
use crate::model::{
    validate_input, BranchOrbit, CoverData, Decomposition, GroupData, IndecomposableLabel, Mode,
    ValidationError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("n({a},{j}) = {value} is not an integer")]
    NonIntegral { a: u64, j: u64, value: String },
    #[error("n({a},{j}) = {value} is negative")]
    NegativeLayer { a: u64, j: u64, value: BigInt },
    #[error("multiplicity of U({a},{b}) is negative: {value}")]
    NegativeMultiplicity { a: u64, b: u64, value: BigInt },
    #[error("layer {j}: the two formulas for n_j give {direct} and {alt}")]
    RouteMismatch { j: u64, direct: String, alt: String },
    #[error("layer difference at a = {a}, j = {j} disagrees with the direct count")]
    DifferenceMismatch { a: u64, j: u64 },
    #[error("total dimension {actual} differs from the expected {expected}")]
    DimensionMismatch { expected: BigInt, actual: BigInt },
}

impl EngineError {
    /// Name of the violated invariant.
    pub fn name(&self) -> &'static str {
        match self {
            EngineError::Invalid(e) => e.name(),
            EngineError::NonIntegral { .. } => "NonIntegral",
            EngineError::NegativeLayer { .. } => "NegativeLayer",
            EngineError::NegativeMultiplicity { .. } => "NegativeMultiplicity",
            EngineError::RouteMismatch { .. } => "RouteMismatch",
            EngineError::DifferenceMismatch { .. } => "DifferenceMismatch",
            EngineError::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}

/// Intermediate quantities, indexed by orbit (in input order), layer `j` and label `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineTrace {
    /// `p^{n_I}`.
    pub layers: u64,
    /// `p^{n - n_I}`, the length of a projective `kḠ`-module.
    pub stride: u64,
    pub genus_x: BigInt,
    pub genus_y: BigInt,
    /// `e_{y,j}`, or `d^Ω_{y,j}` in the differentials mode.
    pub e: Vec<Vec<BigInt>>,
    /// `ℓ_{y,j}` (zero for unbranched orbits).
    pub ell: Vec<Vec<u64>>,
    pub n_j: Vec<BigInt>,
    /// Second evaluation of `n_j` through `deg E_j` and `g(Y)`; absent for differentials.
    pub n_j_alt: Option<Vec<BigInt>>,
    /// `n(a, j)`, indexed `[a][j]`.
    pub n_aj: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineOutput {
    pub decomposition: Decomposition,
    pub expected_dimension: BigInt,
    pub trace: EngineTrace,
}

/// `H^0(X, O_X(E))` with `E` given by the orbit coefficients.
pub fn riemann_roch(group: &GroupData, cover: &CoverData) -> Result<EngineOutput, EngineError> {
    decompose(group, cover, Mode::RiemannRoch)
}

/// `H^0(X, Ω_X^{⊗m})` for `m ≥ 2`.
pub fn poly_differentials(
    group: &GroupData,
    cover: &CoverData,
    m: u64,
) -> Result<EngineOutput, EngineError> {
    decompose(group, cover, Mode::PolyDifferential { m })
}

/// `H^0(X, Ω_X)`.
pub fn differentials(group: &GroupData, cover: &CoverData) -> Result<EngineOutput, EngineError> {
    decompose(group, cover, Mode::Differentials)
}

pub fn decompose(group: &GroupData, cover: &CoverData, mode: Mode) -> Result<EngineOutput, EngineError> {
    validate_input(group, cover, mode)?;
    let ctx = Context::new(group, cover)?;
    match mode {
        Mode::RiemannRoch | Mode::PolyDifferential { .. } => ctx.run_divisor(mode),
        Mode::Differentials => ctx.run_differentials(),
    }
}

/// `Σ_k a_{k,t} p^{n_x - k} i_k`, where `t = ⌊j / p^{n_I - n_x}⌋` has base-`p`
/// digits `a_{1,t}, a_{2,t}, …` (least significant first).
fn jump_offset(p: u64, n_i: u32, orbit: &BranchOrbit, j: u64) -> BigInt {
    let nx = orbit.n_x();
    let t = j / p.pow(n_i - nx);
    digits(t, p, orbit.jumps.len())
        .iter()
        .zip(&orbit.jumps)
        .enumerate()
        .map(|(k, (&a, &i))| BigInt::from(a) * BigInt::from(p).pow(nx - 1 - k as u32) * i)
        .sum()
}

/// `e_{y,j} = ⌊(e − Σ_k a_{k,t} p^{n_x−k} i_k) / p^{n_x}⌋`, rounding toward `−∞`.
///
/// `n_i` is the exponent of `#I`; `j` must lie in `[0, p^{n_i})`.
pub fn ej_coefficient(group: &GroupData, n_i: u32, orbit: &BranchOrbit, j: u64) -> BigInt {
    let pnx = BigInt::from(group.p).pow(orbit.n_x());
    floor_div(&(&orbit.e - jump_offset(group.p, n_i, orbit, j)), &pnx)
}

/// `d_{y,j}`: the coefficient of the pushed-down wild part of `m K_X` at layer `j`.
pub fn dj_coefficient(group: &GroupData, n_i: u32, orbit: &BranchOrbit, j: u64, m: u64) -> BigInt {
    let pnx = BigInt::from(group.p).pow(orbit.n_x());
    let numerator = genus::wild_different(group.p, orbit) * m - jump_offset(group.p, n_i, orbit, j);
    floor_div(&numerator, &pnx)
}

/// `ℓ_{y,j}`: the representative of `e_{y,j}` modulo `c_y` in `[0, c_y)`.
pub fn ell_coefficient(e_yj: &BigInt, c_y: u64) -> u64 {
    u64::try_from(mod_floor(e_yj, &BigInt::from(c_y))).expect("residue below c_y")
}

/// Counts of `d ∈ [1, ℓ]` with `μ_{a,-d}(y) = 1`, indexed `[a mod c_y][ℓ]`.
struct PrefixCounts {
    table: Vec<Vec<u64>>,
}

impl PrefixCounts {
    fn new(orbit: &BranchOrbit) -> Self {
        let cy = orbit.tame_order;
        let table = (0..cy)
            .map(|a| {
                let mut row = Vec::with_capacity(cy as usize);
                let mut acc = 0;
                row.push(0);
                for d in 1..cy {
                    if orbit.mu(a, -(d as i64)) {
                        acc += 1;
                    }
                    row.push(acc);
                }
                row
            })
            .collect();
        PrefixCounts { table }
    }

    fn count(&self, a: u64, ell: u64) -> u64 {
        let cy = self.table.len() as u64;
        self.table[(a % cy) as usize][ell as usize]
    }
}

struct Context<'a> {
    group: &'a GroupData,
    cover: &'a CoverData,
    layers: u64,
    stride: u64,
    genus_x: BigInt,
    genus_y: BigInt,
    qbar: BigInt,
    prefix: Vec<Option<PrefixCounts>>,
    /// `Σ_{z ∈ Z_br} Σ_{d=1}^{c_y-1} (d / c_y) μ_{a,d}(y)`, indexed by `a`.
    tame_fraction: Vec<BigRational>,
}

fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl<'a> Context<'a> {
    fn new(group: &'a GroupData, cover: &'a CoverData) -> Result<Self, EngineError> {
        let n_i = cover.n_i();
        let layers = group.p_pow(n_i);
        let stride = group.p_pow(group.n - n_i);
        let prefix = cover
            .orbits
            .iter()
            .map(|o| o.is_branched().then(|| PrefixCounts::new(o)))
            .collect();
        let tame_fraction = (0..group.c)
            .map(|a| {
                let mut acc = BigRational::zero();
                for o in cover.branched() {
                    for d in 1..o.tame_order {
                        if o.mu(a, d as i64) {
                            acc += BigRational::new(BigInt::from(d), BigInt::from(o.tame_order));
                        }
                    }
                }
                acc
            })
            .collect();
        Ok(Context {
            group,
            cover,
            layers,
            stride,
            genus_x: genus::genus_x(group, cover)?,
            genus_y: genus::genus_y(group, cover)?,
            qbar: BigInt::from(genus::quotient_order(group, cover)),
            prefix,
            tame_fraction,
        })
    }

    fn y_size(&self, orbit: &BranchOrbit) -> BigInt {
        genus::y_orbit_size(self.group, self.cover, orbit)
    }

    fn count_sum(&self, a: u64, ell: &[Vec<u64>], j: usize) -> BigInt {
        let mut total = 0u64;
        for (k, pre) in self.prefix.iter().enumerate() {
            if let Some(pre) = pre {
                total += pre.count(a, ell[k][j]);
            }
        }
        BigInt::from(total)
    }

    fn into_integer(a: u64, j: u64, value: BigRational) -> Result<BigInt, EngineError> {
        if !value.is_integer() {
            return Err(EngineError::NonIntegral { a, j, value: value.to_string() });
        }
        let v = value.to_integer();
        if v.is_negative() {
            return Err(EngineError::NegativeLayer { a, j, value: v });
        }
        Ok(v)
    }

    fn run_divisor(&self, mode: Mode) -> Result<EngineOutput, EngineError> {
        let layers = self.layers as usize;
        let m = match mode {
            Mode::PolyDifferential { m } => Some(m),
            _ => None,
        };
        let orbits = &self.cover.orbits;
        let n_i = self.cover.n_i();

        // e_{y,j}, and for polydifferentials the part d_{y,j} coming from Ram_π.
        let mut e = Vec::with_capacity(orbits.len());
        let mut d_part = Vec::with_capacity(orbits.len());
        let mut ell = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            let shift = match m {
                None => BigInt::zero(),
                Some(m) => orbit.ord_ky.clone().unwrap_or_default() * m,
            };
            let mut row_e = Vec::with_capacity(layers);
            let mut row_d = Vec::with_capacity(layers);
            let mut row_l = Vec::with_capacity(layers);
            for j in 0..self.layers {
                let d = match m {
                    None => ej_coefficient(self.group, n_i, orbit, j),
                    Some(m) => dj_coefficient(self.group, n_i, orbit, j, m),
                };
                let value = &shift + &d;
                row_l.push(ell_coefficient(&value, orbit.tame_order));
                row_e.push(value);
                row_d.push(d);
            }
            e.push(row_e);
            d_part.push(row_d);
            ell.push(row_l);
        }

        // Direct route: 1 - g(Z) + Σ_z (e_{y,j} - ℓ_{y,j}) / c_y.
        let base = match m {
            None => BigInt::one() - self.cover.genus_z,
            Some(m) => {
                // The listed ord_KY values, completed by an unramified orbit
                // carrying the rest of a canonical divisor of Z.
                let mut rest = BigInt::from(2) * self.cover.genus_z - 2;
                for o in orbits {
                    if let Some(ord) = &o.ord_ky {
                        rest -= (ord + 1u32 - o.tame_order) / o.tame_order;
                    }
                }
                BigInt::one() - self.cover.genus_z + rest * m
            }
        };
        let mut n_j = Vec::with_capacity(layers);
        for j in 0..layers {
            let mut acc = base.clone();
            for (k, o) in orbits.iter().enumerate() {
                acc += (&e[k][j] - ell[k][j]) / o.tame_order;
            }
            n_j.push(acc);
        }

        // Second route: (deg E_j + 1 - g(Y)) / #Ḡ + Σ_{Z_br} ((c_y - 1)/2 - ℓ_{y,j}) / c_y.
        let mut n_j_alt = Vec::with_capacity(layers);
        for j in 0..layers {
            let mut deg = match m {
                None => BigInt::zero(),
                Some(m) => (BigInt::from(2) * &self.genus_y - 2) * m,
            };
            for (k, o) in orbits.iter().enumerate() {
                let coeff = if m.is_some() { &d_part[k][j] } else { &e[k][j] };
                deg += self.y_size(o) * coeff;
            }
            let mut acc = BigRational::new(deg + 1 - &self.genus_y, self.qbar.clone());
            for (k, o) in orbits.iter().enumerate() {
                if o.is_branched() {
                    let half = BigRational::new(BigInt::from(o.tame_order - 1), BigInt::from(2));
                    acc += (half - rational(ell[k][j])) / rational(o.tame_order);
                }
            }
            if acc != rational(n_j[j].clone()) {
                return Err(EngineError::RouteMismatch {
                    j: j as u64,
                    direct: n_j[j].to_string(),
                    alt: acc.to_string(),
                });
            }
            n_j_alt.push(acc.to_integer());
        }

        let mut n_aj = Vec::with_capacity(self.group.c as usize);
        for a in 0..self.group.c {
            let mut row = Vec::with_capacity(layers);
            for (j, nj) in n_j.iter().enumerate() {
                let value = rational(self.count_sum(a, &ell, j) + nj) - &self.tame_fraction[a as usize];
                row.push(Self::into_integer(a, j as u64, value)?);
            }
            n_aj.push(row);
        }

        if cfg!(debug_assertions) {
            self.check_differences(&ell, &n_j, &n_aj)?;
        }

        let mut decomposition = Decomposition::new();
        for a in 0..self.group.c {
            let row = &n_aj[a as usize];
            for j in 0..layers {
                let b = (j as u64 + 1) * self.stride;
                let mult = if j + 1 < layers { &row[j] - &row[j + 1] } else { row[j].clone() };
                if mult.is_negative() {
                    return Err(EngineError::NegativeMultiplicity { a, b, value: mult });
                }
                decomposition.add(IndecomposableLabel::new(a, b), mult);
            }
        }

        let expected_dimension = match m {
            None => genus::degree(self.group, self.cover) + 1 - &self.genus_x,
            Some(m) => BigInt::from(2 * m - 1) * (&self.genus_x - 1),
        };
        self.finish(decomposition, expected_dimension, e, ell, n_j, Some(n_j_alt), n_aj)
    }

    /// Recomputes `n(a,j) - n(a,j+1)` from the signed ranges between consecutive `ℓ`.
    fn check_differences(
        &self,
        ell: &[Vec<u64>],
        n_j: &[BigInt],
        n_aj: &[Vec<BigInt>],
    ) -> Result<(), EngineError> {
        let layers = self.layers as usize;
        for a in 0..self.group.c {
            for j in 0..layers.saturating_sub(1) {
                let mut acc = &n_j[j] - &n_j[j + 1];
                for (k, o) in self.cover.orbits.iter().enumerate() {
                    if !o.is_branched() {
                        continue;
                    }
                    let (lo, hi) = (ell[k][j].min(ell[k][j + 1]), ell[k][j].max(ell[k][j + 1]));
                    let sign = if ell[k][j] >= ell[k][j + 1] { 1 } else { -1 };
                    for d in lo + 1..=hi {
                        if o.mu(a, -(d as i64)) {
                            acc += sign;
                        }
                    }
                }
                if acc != &n_aj[a as usize][j] - &n_aj[a as usize][j + 1] {
                    return Err(EngineError::DifferenceMismatch { a, j: j as u64 });
                }
            }
        }
        Ok(())
    }

    fn run_differentials(&self) -> Result<EngineOutput, EngineError> {
        let p = self.group.p;
        let layers = self.layers as usize;
        let orbits = &self.cover.orbits;

        let mut dv = Vec::with_capacity(orbits.len());
        let mut ell = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            let nx = orbit.n_x();
            let pnx = BigInt::from(p).pow(nx);
            let mut row_d = Vec::with_capacity(layers);
            let mut row_l = Vec::with_capacity(layers);
            for j in 0..self.layers {
                let t = j / p.pow(self.cover.n_i() - nx);
                let digits = digits(t, p, orbit.jumps.len());
                let mut num = BigInt::zero();
                for (k, (&a, &i)) in digits.iter().zip(&orbit.jumps).enumerate() {
                    let w = BigInt::from(p).pow(nx - 1 - k as u32);
                    num += w * (BigInt::from(p - 1) + BigInt::from(p - 1 - a) * i);
                }
                let d = floor_div(&num, &pnx);
                row_l.push(ell_coefficient(&-&d, orbit.tame_order));
                row_d.push(d);
            }
            dv.push(row_d);
            ell.push(row_l);
        }

        let mut n_j = Vec::with_capacity(layers);
        for j in 0..layers {
            let mut acc = BigInt::from(self.cover.genus_z) - 1;
            for (k, o) in orbits.iter().enumerate() {
                acc += (&dv[k][j] + ell[k][j]) / o.tame_order;
            }
            n_j.push(acc);
        }

        let mut n_aj = Vec::with_capacity(self.group.c as usize);
        for a in 0..self.group.c {
            let mut row = Vec::with_capacity(layers);
            for (j, nj) in n_j.iter().enumerate() {
                let top = u64::from(j + 1 == layers && a == 0);
                let value = rational(BigInt::from(top) + nj - self.count_sum(a, &ell, j))
                    + &self.tame_fraction[a as usize];
                row.push(Self::into_integer(a, j as u64, value)?);
            }
            n_aj.push(row);
        }

        let full = self.cover.n_i() == self.group.n;
        let mut decomposition = Decomposition::new();
        for a in 0..self.group.c {
            let row = &n_aj[a as usize];
            let mu_chi = BigInt::from(u64::from(a == self.group.chi_index));
            let mut push = |b: u64, mult: BigInt| -> Result<(), EngineError> {
                if mult.is_negative() {
                    return Err(EngineError::NegativeMultiplicity { a, b, value: mult });
                }
                decomposition.add(IndecomposableLabel::new(a, b), mult);
                Ok(())
            };
            for j in 0..layers.saturating_sub(1) {
                push((j as u64 + 1) * self.stride, &row[j] - &row[j + 1])?;
            }
            let last = row[layers - 1].clone();
            if full {
                push(self.group.p_pow(self.group.n), last)?;
            } else {
                push((self.layers - 1) * self.stride + 1, mu_chi.clone())?;
                push(self.group.p_pow(self.group.n), last - mu_chi)?;
            }
        }
        let expected_dimension = self.genus_x.clone();
        self.finish(decomposition, expected_dimension, dv, ell, n_j, None, n_aj)
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        &self,
        decomposition: Decomposition,
        expected_dimension: BigInt,
        e: Vec<Vec<BigInt>>,
        ell: Vec<Vec<u64>>,
        n_j: Vec<BigInt>,
        n_j_alt: Option<Vec<BigInt>>,
        n_aj: Vec<Vec<BigInt>>,
    ) -> Result<EngineOutput, EngineError> {
        let actual = decomposition.total_dimension();
        if actual != expected_dimension {
            return Err(EngineError::DimensionMismatch { expected: expected_dimension, actual });
        }
        Ok(EngineOutput {
            decomposition,
            expected_dimension,
            trace: EngineTrace {
                layers: self.layers,
                stride: self.stride,
                genus_x: self.genus_x.clone(),
                genus_y: self.genus_y.clone(),
                e,
                ell,
                n_j,
                n_j_alt,
                n_aj,
            },
        })
    }
}
