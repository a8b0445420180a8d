//! `H^0(X(ℓ), Ω^{⊗m})` as a module for `PSL(2, F_ℓ)` over a field of characteristic 3.

mod decomposition;
pub mod local;
mod numbers;

use std::fmt;

use thiserror::Error;

use crate::arith::is_prime;

pub use decomposition::{
    audit, brauer_value, decompose, non_projective_part, projective_multiplicities, sweep,
    AuditReport, ConjugacyClass, ModularDecomposition, QuadraticValue,
};
pub use numbers::{class_number, class_number_bounded, legendre_sum, CLASS_NUMBER_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("ℓ = {0} must be a prime of at least 7")]
    InvalidLevel(u64),
    #[error("m = {0} must be at least 2")]
    InvalidM(u64),
    #[error("s01 must be +1 or -1, got {0}")]
    InvalidSign(i64),
    #[error("ℓ = {0} is not a prime congruent to 3 mod 4")]
    WrongResidue(u64),
    #[error("ℓ = {ell} exceeds the class-number bound {bound}")]
    ClassNumberBound { ell: u64, bound: u64 },
    #[error("multiplicity of {label} at (ℓ, m) = ({ell}, {m}) is {value}, not a non-negative integer")]
    BadMultiplicity { ell: u64, m: u64, label: Simple, value: String },
    #[error("audit failed at (ℓ, m, s01) = ({ell}, {m}, {s01}): {reason}")]
    AuditFailed { ell: u64, m: u64, s01: i64, reason: String },
    #[error("local cover: {0}")]
    Local(String),
}

/// Which of the four congruence cases `(ℓ mod 4, ℓ mod 3)` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `ε' = 1`, `ε = −1`.
    One,
    /// `ε' = −1`, `ε = 1`.
    Two,
    /// `ε = ε' = 1`.
    Three,
    /// `ε = ε' = −1`.
    Four,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularParams {
    pub ell: u64,
    pub m: u64,
    /// `ℓ ≡ ε (mod 3)`.
    pub epsilon: i64,
    /// `ℓ ≡ ε' (mod 4)`.
    pub epsilon_prime: i64,
    /// `ℓ − ε = 2 · 3^n · n'` with `3 ∤ n'`.
    pub n: u32,
    pub n_prime: u64,
    pub delta0: u64,
    pub delta1: u64,
    pub delta_m: u64,
    /// `m_ℓ ∈ [0, ℓ)` with `m_ℓ ≡ m − 1 (mod ℓ)`.
    pub m_ell: u64,
}

impl ModularParams {
    pub fn new(ell: u64, m: u64) -> Result<Self, ModularError> {
        if ell < 7 || !is_prime(ell) {
            return Err(ModularError::InvalidLevel(ell));
        }
        if m < 2 {
            return Err(ModularError::InvalidM(m));
        }
        let epsilon = if ell % 3 == 1 { 1 } else { -1 };
        let epsilon_prime = if ell % 4 == 1 { 1 } else { -1 };
        let mut rest = ((ell as i64 - epsilon) / 2) as u64;
        let mut n = 0;
        while rest.is_multiple_of(3) {
            rest /= 3;
            n += 1;
        }
        Ok(ModularParams {
            ell,
            m,
            epsilon,
            epsilon_prime,
            n,
            n_prime: rest,
            delta0: u64::from(m.is_multiple_of(3)),
            delta1: u64::from(m % 3 == 1),
            delta_m: m % 2,
            m_ell: (m - 1) % ell,
        })
    }

    pub fn case(&self) -> Case {
        match (self.epsilon_prime, self.epsilon) {
            (1, -1) => Case::One,
            (-1, 1) => Case::Two,
            (1, 1) => Case::Three,
            _ => Case::Four,
        }
    }

    pub fn mixed(&self) -> bool {
        self.epsilon == -self.epsilon_prime
    }

    /// `3^n`.
    pub fn sylow_order(&self) -> u64 {
        3u64.pow(self.n)
    }

    /// Number of `T̃_t`, `t ≥ 1`.
    pub fn tilde_count(&self) -> u64 {
        if self.mixed() {
            (self.n_prime - 1) / 2
        } else {
            self.n_prime / 2 - 1
        }
    }

    /// Number of `η_u`.
    pub fn eta_count(&self) -> u64 {
        let l = self.ell as i64;
        let count = if self.mixed() { (l + self.epsilon) / 4 - 1 } else { (l + self.epsilon - 2) / 4 };
        count as u64
    }

    /// Dimension of the modular curve's space of `m`-fold differentials,
    /// `(2m − 1)(ℓ² − 1)(ℓ − 6)/24`.
    pub fn total_dimension(&self) -> u64 {
        let l = self.ell;
        (2 * self.m - 1) * (l * l - 1) * (l - 6) / 24
    }
}

/// Simple modules, named by their Brauer characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simple {
    /// Trivial module `T_0`.
    Psi0,
    /// Second simple of the principal block: `T_1` if `ε = 1`, `T̃_0` if `ε = −1`.
    Psi0Prime,
    /// `T_{0,1}` (only when `ε = ε'`).
    Psi01,
    /// `T_{1,0}` (only when `ε = ε'`).
    Psi10,
    /// `T̃_t`, `t ≥ 1`.
    Delta(u64),
    /// Defect-zero `γ_a`, `a ∈ {1, 2}` (only when `ε = −ε'`).
    Gamma(u8),
    /// Defect-zero `η_u`.
    Eta(u64),
}

impl Simple {
    pub fn degree(&self, q: &ModularParams) -> u64 {
        let l = q.ell as i64;
        let d = match self {
            Simple::Psi0 => 1,
            Simple::Psi0Prime => if q.epsilon == 1 { l } else { l - 1 },
            Simple::Psi01 | Simple::Psi10 => (l + q.epsilon) / 2,
            Simple::Delta(_) => l + q.epsilon,
            Simple::Gamma(_) => (l + q.epsilon_prime) / 2,
            Simple::Eta(_) => l - q.epsilon,
        };
        d as u64
    }

    /// All simple modules for the given parameters.
    pub fn all(q: &ModularParams) -> Vec<Simple> {
        let mut out = vec![Simple::Psi0, Simple::Psi0Prime];
        if !q.mixed() {
            out.extend([Simple::Psi01, Simple::Psi10]);
        }
        out.extend((1..=q.tilde_count()).map(Simple::Delta));
        if q.mixed() {
            out.extend([Simple::Gamma(1), Simple::Gamma(2)]);
        }
        out.extend((1..=q.eta_count()).map(Simple::Eta));
        out
    }

    /// The other simple module in the same block, if the block has two.
    pub fn partner(&self) -> Option<Simple> {
        match self {
            Simple::Psi0 => Some(Simple::Psi0Prime),
            Simple::Psi0Prime => Some(Simple::Psi0),
            Simple::Psi01 => Some(Simple::Psi10),
            Simple::Psi10 => Some(Simple::Psi01),
            _ => None,
        }
    }

    /// Dimension of the projective cover.
    ///
    /// Two-simple blocks have a Brauer tree that is a line with two edges and
    /// exceptional multiplicity `μ = (3^n − 1)/2`. The exceptional vertex sits
    /// in the middle, except for the principal block when `ε = −1`, where it is
    /// the leaf at the end of the `T̃_0` edge.
    pub fn projective_dimension(&self, q: &ModularParams) -> u64 {
        let pn = q.sylow_order();
        let mu = (pn - 1) / 2;
        let l = q.ell;
        match self {
            Simple::Gamma(_) | Simple::Eta(_) => self.degree(q),
            Simple::Delta(_) => pn * self.degree(q),
            Simple::Psi0 | Simple::Psi0Prime if q.epsilon == -1 => match self {
                Simple::Psi0 => l + 1,
                _ => (mu + 1) * (l - 1) + 1,
            },
            _ => {
                let other = self.partner().expect("two-simple block");
                (mu + 1) * self.degree(q) + mu * other.degree(q)
            }
        }
    }
}

impl fmt::Display for Simple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simple::Psi0 => write!(f, "T0"),
            Simple::Psi0Prime => write!(f, "T0'"),
            Simple::Psi01 => write!(f, "T01"),
            Simple::Psi10 => write!(f, "T10"),
            Simple::Delta(t) => write!(f, "T~{t}"),
            Simple::Gamma(a) => write!(f, "gamma{a}"),
            Simple::Eta(u) => write!(f, "eta{u}"),
        }
    }
}

/// Non-projective indecomposable summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NonProjectiveLabel {
    /// `U_{T,b}`: uniserial with socle `T` and `b` composition factors.
    Uniserial { socle: Simple, length: u64 },
    /// `U_{T,T',b}` in the principal block when `ε = −1`: socle contains `T`,
    /// top contains `T'`, and `b` composition factors are `T̃_0`.
    Biserial { socle: Simple, top: Simple, tilde_factors: u64 },
}

impl NonProjectiveLabel {
    /// Composition factors with multiplicities.
    pub fn composition_factors(&self, q: &ModularParams) -> Vec<(Simple, u64)> {
        match *self {
            NonProjectiveLabel::Uniserial { socle, length } => {
                let alternating = match socle {
                    Simple::Psi0Prime if q.epsilon == -1 => None,
                    other => other.partner(),
                };
                match alternating {
                    Some(partner) => vec![(socle, length.div_ceil(2)), (partner, length / 2)],
                    None => vec![(socle, length)],
                }
            }
            NonProjectiveLabel::Biserial { socle, top, tilde_factors } => {
                let trivial = if socle == Simple::Psi0 && top == Simple::Psi0 { 2 } else { 1 };
                vec![(Simple::Psi0Prime, tilde_factors), (Simple::Psi0, trivial)]
            }
        }
    }

    pub fn dimension(&self, q: &ModularParams) -> u64 {
        self.composition_factors(q)
            .iter()
            .map(|(s, k)| s.degree(q) * k)
            .sum()
    }
}

impl fmt::Display for NonProjectiveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonProjectiveLabel::Uniserial { socle, length } => write!(f, "U({socle},{length})"),
            NonProjectiveLabel::Biserial { socle, top, tilde_factors } => {
                write!(f, "U({socle},{top},{tilde_factors})")
            }
        }
    }
}
