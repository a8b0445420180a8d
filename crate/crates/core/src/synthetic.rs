//! Seeded random generation of consistent cover data, used by property tests,
//! benchmarks and the `sweep synthetic` command.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{gcd, inverse_mod};
use crate::engine::{self, EngineError, EngineOutput};
use crate::genus;
use crate::model::{BranchOrbit, CoverData, GroupData, Mode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticConfig {
    pub primes: Vec<u64>,
    /// Upper bound on `p^n`.
    pub max_sylow: u64,
    pub max_c: u64,
    pub max_genus_z: u64,
    pub max_branch_points: usize,
    /// Upper bound on `u_{k+1} − p u_k` steps, in units of the tame order.
    pub max_jump_step: u64,
    pub max_m: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            primes: vec![2, 3, 5, 7],
            max_sylow: 27,
            max_c: 12,
            max_genus_z: 3,
            max_branch_points: 4,
            max_jump_step: 3,
            max_m: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    RiemannRoch,
    PolyDifferential,
    Differentials,
}

impl ModeKind {
    pub const ALL: [ModeKind; 3] = [ModeKind::RiemannRoch, ModeKind::PolyDifferential, ModeKind::Differentials];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticCase {
    pub group: GroupData,
    pub cover: CoverData,
    pub mode: Mode,
}

impl SyntheticCase {
    pub fn run(&self) -> Result<EngineOutput, EngineError> {
        engine::decompose(&self.group, &self.cover, self.mode)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_group<R: Rng>(rng: &mut R, config: &SyntheticConfig) -> GroupData {
    loop {
        let p = *config.primes.choose(rng).expect("at least one prime");
        let mut n_max = 0u32;
        while p.pow(n_max + 1) <= config.max_sylow {
            n_max += 1;
        }
        let n = rng.gen_range(0..=n_max);
        let c = rng.gen_range(1..=config.max_c);
        if gcd(p, c) != 1 {
            continue;
        }
        // chi must have order dividing p - 1 when n > 0.
        let chis: Vec<u64> = (0..c)
            .filter(|&k| n == 0 || (c / gcd(c, k)) == 1 || (p - 1).is_multiple_of(c / gcd(c, k)))
            .collect();
        let chi = *chis.choose(rng).expect("chi = 0 always qualifies");
        if let Ok(g) = GroupData::new(p, n, c, chi) {
            return g;
        }
    }
}

/// Upper jumps obeying Hasse–Arf, turned into lower jumps.
fn random_jumps<R: Rng>(rng: &mut R, group: &GroupData, n_x: u32, c_y: u64, phi: u64, step: u64) -> Vec<u64> {
    let p = group.p;
    // phi * i_1 ≡ chi * p^{n_x} (mod c_y).
    let target = if c_y == 1 {
        0
    } else {
        let inv = inverse_mod(phi, c_y).expect("phi is a unit");
        (inv as u128 * (group.chi_index as u128 * group.p_pow(n_x) as u128 % c_y as u128) % c_y as u128) as u64
    };
    let mut u1 = target + c_y * rng.gen_range(0..=step);
    while u1 == 0 || u1.is_multiple_of(p) {
        u1 += c_y;
    }
    let mut upper = vec![u1];
    for _ in 1..n_x {
        let prev = *upper.last().unwrap();
        let mut next = if rng.gen_bool(0.3) && ((p - 1) * prev).is_multiple_of(c_y) { p * prev } else { 0 };
        if next == 0 {
            // Smallest admissible value above p * prev in the residue class of prev.
            next = prev + c_y * ((p * prev - prev) / c_y + 1);
            next += c_y * rng.gen_range(0..step);
            while next % p == 0 {
                next += c_y;
            }
        }
        upper.push(next);
    }
    let mut lower = vec![upper[0]];
    for k in 1..upper.len() {
        let i = lower[k - 1] + p.pow(k as u32) * (upper[k] - upper[k - 1]);
        lower.push(i);
    }
    lower
}

/// A random candidate; it passes input validation but may still fail the
/// integrality checks of the engine.
pub fn candidate<R: Rng>(rng: &mut R, config: &SyntheticConfig, kind: ModeKind) -> SyntheticCase {
    let group = random_group(rng, config);
    let c = group.c;
    let mut genus_z = rng.gen_range(0..=config.max_genus_z);
    let count = rng.gen_range(0..=config.max_branch_points);

    // Tame monodromy summing to zero in Z/c.
    let mut monodromy: Vec<u64> = (0..count).map(|_| rng.gen_range(0..c)).collect();
    if count > 0 {
        let sum: u64 = monodromy[..count - 1].iter().sum();
        monodromy[count - 1] = (c - sum % c) % c;
    }
    let generated = monodromy.iter().fold(c, |g, &k| gcd(g, k)) == 1;
    if genus_z == 0 && !generated {
        genus_z = 1;
    }

    let m = rng.gen_range(2..=config.max_m);
    let mut orbits = Vec::new();
    for &k in &monodromy {
        let c_y = c / gcd(c, k);
        let phi = if c_y == 1 { 0 } else { inverse_mod(k / (c / c_y), c_y).expect("unit") };
        let wild = group.n > 0 && rng.gen_bool(0.5);
        let mut orbit = BranchOrbit::tame(c_y, phi);
        if wild {
            let n_x = rng.gen_range(1..=group.n);
            orbit = orbit.with_jumps(random_jumps(rng, &group, n_x, c_y, phi, config.max_jump_step));
        }
        orbits.push(orbit);
    }
    // Totally ramified wild points are needed when Z is rational.
    if group.n > 0 && (genus_z == 0 || rng.gen_bool(0.3)) {
        let orbit = BranchOrbit::tame(1, 0);
        let jumps = random_jumps(rng, &group, group.n, 1, 0, config.max_jump_step);
        orbits.push(orbit.with_jumps(jumps));
    }
    if genus_z == 0 && group.n > 0 && !orbits.iter().any(|o| o.n_x() == group.n) {
        genus_z = 1;
    }

    let mut cover = CoverData { genus_z, orbits };
    let mode = match kind {
        ModeKind::Differentials => Mode::Differentials,
        ModeKind::PolyDifferential => {
            for orbit in &mut cover.orbits {
                if orbit.is_branched() || rng.gen_bool(0.5) {
                    let r: i64 = rng.gen_range(-2..=3);
                    orbit.ord_ky = Some(BigInt::from(orbit.tame_order as i64 * r - 1));
                }
            }
            if genus::genus_x(&group, &cover).map_or(true, |g| g < BigInt::from(2)) {
                cover.genus_z += 2;
            }
            Mode::PolyDifferential { m }
        }
        ModeKind::RiemannRoch => {
            for orbit in &mut cover.orbits {
                orbit.e = BigInt::from(rng.gen_range(-3i64..=8));
            }
            // Top up with an unramified orbit so that deg E > 2g(X) − 2.
            let gx = genus::genus_x(&group, &cover).unwrap_or_default();
            let bound = BigInt::from(2) * gx - 2;
            let degree = genus::degree(&group, &cover);
            let order = BigInt::from(group.order());
            let deficit = bound - degree + 1 + BigInt::from(rng.gen_range(0..=group.order() * 2));
            if deficit > BigInt::from(0) {
                let e = (deficit + &order - 1) / order;
                cover.orbits.push(BranchOrbit::tame(1, 0).with_e(e));
            }
            Mode::RiemannRoch
        }
    };
    SyntheticCase { group, cover, mode }
}

/// A case that the engine decomposes successfully, with its output.
pub fn generate<R: Rng>(
    rng: &mut R,
    config: &SyntheticConfig,
    kind: ModeKind,
) -> (SyntheticCase, EngineOutput) {
    loop {
        let case = candidate(rng, config, kind);
        if let Ok(out) = case.run() {
            return (case, out);
        }
    }
}

/// `count` successful cases of each requested mode, from a single seed.
pub fn batch(seed: u64, count: usize, config: &SyntheticConfig, kinds: &[ModeKind]) -> Vec<(SyntheticCase, EngineOutput)> {
    let mut rng = rng(seed);
    let mut cases = Vec::with_capacity(count * kinds.len());
    for _ in 0..count {
        for &kind in kinds {
            cases.push(generate(&mut rng, config, kind));
        }
    }
    cases
}
