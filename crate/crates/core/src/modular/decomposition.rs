use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{
    class_number, legendre_sum, Case, ModularError, ModularParams, NonProjectiveLabel, Simple,
};

fn r(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Non-projective summands with multiplicities (each is 0 or 1 per label).
pub fn non_projective_part(q: &ModularParams) -> Vec<(NonProjectiveLabel, u64)> {
    use NonProjectiveLabel::{Biserial, Uniserial};
    use Simple::{Delta, Psi0, Psi01, Psi0Prime, Psi10};

    let a = q.sylow_order() / 3;
    let (d0, d1, dm) = (q.delta0, q.delta1, q.delta_m);
    let uni = |socle, length| Uniserial { socle, length };
    let bi = |socle, top, tilde_factors| Biserial { socle, top, tilde_factors };

    let mut out: Vec<(NonProjectiveLabel, u64)> = Vec::new();
    let (short, long) = match q.case() {
        Case::One => {
            out.push((bi(Psi0, Psi0, a + 1), d0 * (1 - dm)));
            out.push((uni(Psi0Prime, a), d0 * dm));
            out.push((bi(Psi0, Psi0Prime, a.div_ceil(2)), d1 * dm));
            out.push((bi(Psi0Prime, Psi0, a.div_ceil(2)), d1 * (1 - dm)));
            (2 * a, a)
        }
        Case::Two => {
            out.push((uni(Psi0, a), d0 * (1 - dm)));
            out.push((uni(Psi0Prime, a), d0 * dm));
            out.push((uni(Psi0, 2 * a), d1 * dm));
            out.push((uni(Psi0Prime, 2 * a), d1 * (1 - dm)));
            (a, 2 * a)
        }
        Case::Three => {
            out.push((uni(Psi0, a), d0 * (1 - dm)));
            out.push((uni(Psi01, a), d0 * (1 - dm)));
            out.push((uni(Psi0Prime, a), d0 * dm));
            out.push((uni(Psi10, a), d0 * dm));
            out.push((uni(Psi0, 2 * a), d1 * dm));
            out.push((uni(Psi01, 2 * a), d1 * dm));
            out.push((uni(Psi0Prime, 2 * a), d1 * (1 - dm)));
            out.push((uni(Psi10, 2 * a), d1 * (1 - dm)));
            (a, 2 * a)
        }
        Case::Four => {
            out.push((bi(Psi0, Psi0, a + 1), d0 * (1 - dm)));
            out.push((uni(Psi01, 2 * a), d0 * (1 - dm)));
            out.push((uni(Psi0Prime, a), d0 * dm));
            out.push((uni(Psi10, 2 * a), d0 * dm));
            out.push((bi(Psi0, Psi0Prime, a.div_ceil(2)), d1 * dm));
            out.push((uni(Psi01, a), d1 * dm));
            out.push((bi(Psi0Prime, Psi0, a.div_ceil(2)), d1 * (1 - dm)));
            out.push((uni(Psi10, a), d1 * (1 - dm)));
            (2 * a, a)
        }
    };
    // `short` is the length paired with δ_0, `long` the one paired with δ_1.
    for t in 1..=q.tilde_count() {
        out.push((uni(Delta(t), short), d0));
        out.push((uni(Delta(t), long), d1));
    }
    out.retain(|(_, k)| *k > 0);
    out
}

/// `⟨β̃, φ⟩` for every simple `φ`, as exact rationals.
pub fn projective_multiplicities(
    q: &ModularParams,
    s01: i64,
    class_number: i64,
) -> Vec<(Simple, BigRational)> {
    let l = q.ell as i64;
    let m = q.m as i64;
    let e = q.epsilon;
    let ep = q.epsilon_prime;
    let (d0, d1, dm) = (q.delta0 as i64, q.delta1 as i64, q.delta_m as i64);
    let quotient = r((m - 1 - q.m_ell as i64) / l, 1);
    let s = r(legendre_sum(q.m_ell, q.ell), 1);
    let h = r(class_number, 1);
    let weight = 4 * ((3 - e) / 2 * d0 + (3 + e) / 2 * d1);
    let two_m = 2 * m - 1;
    let quarter_sign = sign(((l - ep) / 4) as u64);

    let psi0 = r(m - 2 - 2 * (2 * d0 + d1) + 3 * dm * (2 * d0 - 1), 6) - &quotient;
    let e_r = r(e, 1);
    let principal_shift = r((1 + e) / 2, 1) * &psi0;

    let mut out = vec![(Simple::Psi0, psi0.clone())];
    if q.mixed() {
        let tilde = r(two_m * (l - 6 + e) - weight - 6 * e, 12) - &e_r * &quotient;
        out.push((Simple::Psi0Prime, &tilde - &principal_shift));
        for t in 1..=q.tilde_count() {
            out.push((Simple::Delta(t), tilde.clone()));
        }
        for a in 1..=2u8 {
            let base = r(two_m * (l - 6 - e) + 6 * e * (1 - (1 - 2 * dm) * quarter_sign), 24)
                + &e_r * &quotient / r(2, 1);
            let class_part = r((1 + e) / 2, 1) * &h - &s;
            let value = base + r(sign(a as u64 - 1), 2) * class_part;
            out.push((Simple::Gamma(a), value));
        }
        for u in 1..=q.eta_count() {
            let value = r(two_m * (l - 6 - e) + 6 * e * (1 - (1 - 2 * dm) * sign(u)), 12)
                + &e_r * &quotient;
            out.push((Simple::Eta(u), value));
        }
    } else {
        let prime = r(two_m * (l - 6 + e) - weight - 12 * e * dm, 12) - &e_r * &quotient;
        out.push((Simple::Psi0Prime, prime - &principal_shift));
        for i in 0..=1u64 {
            let inner = quarter_sign - sign(i) * ((1 + e) * d0 + (1 - e) * d1);
            let value = r(two_m * (l - 6 + e) - weight, 24)
                + r(-6 * e * (1 - (1 - 2 * dm) * inner), 24)
                - &e_r * &quotient / r(2, 1)
                + r(sign(i) * s01, 2) * (r((1 - e) / 2, 1) * &h - &s);
            out.push((if i == 0 { Simple::Psi01 } else { Simple::Psi10 }, value));
        }
        for t in 1..=q.tilde_count() {
            let value = r(two_m * (l - 6 + e) - weight - 6 * e * (1 - (1 - 2 * dm) * sign(t)), 12)
                - &e_r * &quotient;
            out.push((Simple::Delta(t), value));
        }
        for u in 1..=q.eta_count() {
            out.push((Simple::Eta(u), r(two_m * (l - 6 - e) + 6 * e, 12) + &e_r * &quotient));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularDecomposition {
    pub params: ModularParams,
    pub s01: i64,
    pub non_projective: Vec<(NonProjectiveLabel, u64)>,
    /// Multiplicity of the projective cover of each simple module (zeros included).
    pub projective: Vec<(Simple, BigInt)>,
}

impl ModularDecomposition {
    pub fn non_projective_dimension(&self) -> u64 {
        self.non_projective
            .iter()
            .map(|(l, k)| l.dimension(&self.params) * k)
            .sum()
    }

    pub fn projective_dimension(&self) -> BigInt {
        self.projective
            .iter()
            .map(|(s, k)| k * s.projective_dimension(&self.params))
            .sum()
    }

    pub fn total_dimension(&self) -> BigInt {
        self.projective_dimension() + self.non_projective_dimension()
    }
}

fn check_sign(s01: i64) -> Result<(), ModularError> {
    if s01 != 1 && s01 != -1 {
        return Err(ModularError::InvalidSign(s01));
    }
    Ok(())
}

fn class_number_for(q: &ModularParams) -> Result<i64, ModularError> {
    if q.epsilon_prime == -1 {
        Ok(class_number(q.ell)? as i64)
    } else {
        Ok(0)
    }
}

/// Full decomposition of `H^0(X(ℓ), Ω^{⊗m})`.
pub fn decompose(ell: u64, m: u64, s01: i64) -> Result<ModularDecomposition, ModularError> {
    check_sign(s01)?;
    let q = ModularParams::new(ell, m)?;
    let h = class_number_for(&q)?;
    let mut projective = Vec::new();
    for (label, value) in projective_multiplicities(&q, s01, h) {
        if !value.is_integer() || value.is_negative() {
            return Err(ModularError::BadMultiplicity { ell, m, label, value: value.to_string() });
        }
        projective.push((label, value.to_integer()));
    }
    Ok(ModularDecomposition {
        params: q,
        s01,
        non_projective: non_projective_part(&q),
        projective,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugacyClass {
    Identity,
    /// `r_b`, `b ∈ {1, 2}`, of order `ℓ`.
    R(u8),
    /// `s`, of order 2.
    S,
    /// `(v'')^i`.
    V(u64),
    /// `w^j`.
    W(u64),
}

/// `rational + irrational · √(radicand)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticValue {
    pub rational: BigRational,
    pub irrational: BigRational,
    pub radicand: i64,
}

/// Value of the Brauer character of `H^0(X(ℓ), Ω^{⊗m})` at a 3-regular class.
pub fn brauer_value(ell: u64, m: u64, class: ConjugacyClass) -> Result<QuadraticValue, ModularError> {
    let q = ModularParams::new(ell, m)?;
    let l = ell as i64;
    let radicand = q.epsilon_prime * l;
    let plain = |v: BigRational| QuadraticValue {
        rational: v,
        irrational: BigRational::zero(),
        radicand,
    };
    Ok(match class {
        ConjugacyClass::Identity => plain(r(q.total_dimension() as i64, 1)),
        ConjugacyClass::S => plain(r((1 - 2 * q.delta_m as i64) * (l - q.epsilon_prime), 4)),
        ConjugacyClass::V(_) | ConjugacyClass::W(_) => plain(BigRational::zero()),
        ConjugacyClass::R(b) => {
            let s = legendre_sum(q.m_ell, ell);
            let rational = r(-(l - 1), 4) + r(q.m_ell as i64, 2);
            let sb = sign(b as u64);
            let irrational = if q.epsilon_prime == 1 {
                r(sb * s, 2)
            } else {
                r(-sb * (class_number(ell)? as i64 - s), 2)
            };
            QuadraticValue { rational, irrational, radicand }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub ell: u64,
    pub m: u64,
    pub s01: i64,
    pub expected: u64,
    pub non_projective: u64,
    pub projective: BigInt,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.projective.clone() + self.non_projective == BigInt::from(self.expected)
    }
}

/// Checks integrality, `3^n | dim P` and the total dimension.
pub fn audit(ell: u64, m: u64, s01: i64) -> Result<AuditReport, ModularError> {
    let d = decompose(ell, m, s01)?;
    let q = d.params;
    let fail = |reason: String| ModularError::AuditFailed { ell, m, s01, reason };
    for (s, _) in &d.projective {
        let dim = s.projective_dimension(&q);
        if dim % q.sylow_order() != 0 {
            return Err(fail(format!("dim P({s}) = {dim} is not divisible by {}", q.sylow_order())));
        }
    }
    let report = AuditReport {
        ell,
        m,
        s01,
        expected: q.total_dimension(),
        non_projective: d.non_projective_dimension(),
        projective: d.projective_dimension(),
    };
    if !report.passed() {
        return Err(fail(format!(
            "{} + {} != {}",
            report.non_projective, report.projective, report.expected
        )));
    }
    Ok(report)
}

/// Audits every prime `7 ≤ ℓ ≤ l_max`, `2 ≤ m ≤ m_max`, and both signs `s01`.
pub fn sweep(l_max: u64, m_max: u64) -> Result<usize, ModularError> {
    let mut count = 0;
    for ell in (7..=l_max).filter(|&l| crate::arith::is_prime(l)) {
        for m in 2..=m_max {
            for s01 in [1, -1] {
                audit(ell, m, s01)?;
                count += 1;
            }
        }
    }
    Ok(count)
}
