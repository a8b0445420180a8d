//! Independent check of the modular decomposition: multiplicities of the
//! projective summands recomputed numerically as inner products of Brauer
//! characters over the 3-regular classes of `PSL(2, F_ℓ)`.

use std::f64::consts::PI;

use galmod_core::arith::is_prime;
use galmod_core::modular::{
    brauer_value, class_number, decompose, ConjugacyClass, ModularParams, NonProjectiveLabel, Simple,
};
use num_complex::Complex64;
use num_traits::ToPrimitive;

const TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
enum Class {
    One,
    R(u8),
    S,
    V(u64),
    W(u64),
}

struct Table {
    ell: f64,
    e: f64,
    ep: f64,
    n_prime: u64,
    w_order: u64,
    classes: Vec<(Class, f64)>,
    order: f64,
}

fn sgn(k: u64) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl Table {
    fn new(ell: u64) -> Self {
        let e: i64 = if ell % 3 == 1 { 1 } else { -1 };
        let ep: i64 = if ell % 4 == 1 { 1 } else { -1 };
        let mut n_prime = (ell as i64 - e) as u64 / 2;
        while n_prime.is_multiple_of(3) {
            n_prime /= 3;
        }
        let l = ell as f64;
        let w_order = (ell as i64 + e) as u64 / 2;
        let mut classes = vec![(Class::One, 1.0), (Class::R(1), (l * l - 1.0) / 2.0), (Class::R(2), (l * l - 1.0) / 2.0)];
        classes.push((Class::S, l * (l + ep as f64) / 2.0));
        for i in (1..).take_while(|&i| 2 * i < n_prime) {
            classes.push((Class::V(i), l * (l + e as f64)));
        }
        for j in (1..).take_while(|&j| 4 * j < ell as i64 + e) {
            classes.push((Class::W(j as u64), l * (l - e as f64)));
        }
        Table {
            ell: l,
            e: e as f64,
            ep: ep as f64,
            n_prime,
            w_order,
            classes,
            order: l * (l * l - 1.0) / 2.0,
        }
    }

    fn sqrt_ep_ell(&self) -> Complex64 {
        if self.ep > 0.0 {
            Complex64::new(self.ell.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, self.ell.sqrt())
        }
    }

    fn delta(&self, t: u64, x: Class) -> Complex64 {
        let (l, e, ep) = (self.ell, self.e, self.ep);
        let v = match x {
            Class::One => l + e,
            Class::R(_) => e,
            Class::S => e * (ep + e).abs() * sgn(t),
            Class::V(i) => e * 2.0 * (2.0 * PI * (i * t) as f64 / self.n_prime as f64).cos(),
            Class::W(_) => 0.0,
        };
        Complex64::new(v, 0.0)
    }

    /// `γ_a`; its value at `r_b` involves `(−1)^{a+b} √(ε'ℓ)`.
    fn gamma(&self, a: u64, x: Class) -> Complex64 {
        let (l, e, ep) = (self.ell, self.e, self.ep);
        match x {
            Class::One => Complex64::new((l + ep) / 2.0, 0.0),
            Class::R(b) => (Complex64::new(ep, 0.0) + self.sqrt_ep_ell() * sgn(a + b as u64)) / 2.0,
            Class::S => Complex64::new(ep * sgn(((l - ep) / 4.0) as u64), 0.0),
            Class::V(i) => Complex64::new(ep * (ep + e).abs() / 2.0 * sgn(i), 0.0),
            Class::W(j) => Complex64::new(ep * (ep - e).abs() / 2.0 * sgn(j), 0.0),
        }
    }

    fn eta(&self, u: u64, x: Class) -> Complex64 {
        let (l, e, ep) = (self.ell, self.e, self.ep);
        let v = match x {
            Class::One => l - e,
            Class::R(_) => -e,
            Class::S => -e * (ep - e).abs() * sgn(u),
            Class::V(_) => 0.0,
            Class::W(j) => -e * 2.0 * (2.0 * PI * (j * u) as f64 / self.w_order as f64).cos(),
        };
        Complex64::new(v, 0.0)
    }

    fn simple(&self, s: Simple, s01: i64, x: Class) -> Complex64 {
        match s {
            Simple::Psi0 => Complex64::new(1.0, 0.0),
            Simple::Psi0Prime => self.delta(0, x) - (1.0 + self.e) / 2.0,
            // ψ01(r_1) = (ε' + s01 √(ε'ℓ))/2, which is γ_a with (−1)^{a+1} = s01.
            Simple::Psi01 => self.gamma(if s01 == 1 { 1 } else { 2 }, x),
            Simple::Psi10 => self.gamma(if s01 == 1 { 2 } else { 1 }, x),
            Simple::Delta(t) => self.delta(t, x),
            Simple::Gamma(a) => self.gamma(a as u64, x),
            Simple::Eta(u) => self.eta(u, x),
        }
    }

    fn inner(&self, f: impl Fn(Class) -> Complex64, g: impl Fn(Class) -> Complex64) -> Complex64 {
        self.classes
            .iter()
            .map(|&(x, len)| f(x) * g(x).conj() * len)
            .sum::<Complex64>()
            / self.order
    }
}

/// Brauer character of `H^0(Ω^{⊗m})`, evaluated independently of the library
/// except for the class number.
fn beta(t: &Table, ell: u64, m: u64, x: Class) -> Complex64 {
    let l = ell as f64;
    let dm = (m % 2) as f64;
    let m_ell = (m - 1) % ell;
    match x {
        Class::One => Complex64::new(((2 * m - 1) * (ell * ell - 1) * (ell - 6) / 24) as f64, 0.0),
        Class::S => Complex64::new((1.0 - 2.0 * dm) * (l - t.ep) / 4.0, 0.0),
        Class::V(_) | Class::W(_) => Complex64::new(0.0, 0.0),
        Class::R(b) => {
            let s: i64 = (1..=m_ell).map(|d| legendre_euler(d, ell)).sum();
            let rational = -(l - 1.0) / 4.0 + m_ell as f64 / 2.0;
            let coefficient = if t.ep > 0.0 {
                sgn(b as u64) * s as f64 / 2.0
            } else {
                let h = dirichlet_class_number(ell);
                -sgn(b as u64) * (h - s) as f64 / 2.0
            };
            Complex64::new(rational, 0.0) + t.sqrt_ep_ell() * coefficient
        }
    }
}

fn legendre_euler(d: u64, ell: u64) -> i64 {
    let mut result = 1u64;
    let mut base = d % ell;
    let mut exp = (ell - 1) / 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % ell;
        }
        base = base * base % ell;
        exp >>= 1;
    }
    match result {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// `h(−ℓ) = −(1/ℓ) Σ_{a=1}^{ℓ−1} a (a/ℓ)` for `ℓ ≡ 3 (mod 4)`, `ℓ > 3`.
fn dirichlet_class_number(ell: u64) -> i64 {
    let sum: i64 = (1..ell).map(|a| a as i64 * legendre_euler(a, ell)).sum();
    assert_eq!(sum % ell as i64, 0);
    -sum / ell as i64
}

fn check_level(ell: u64, m: u64, s01: i64) {
    let t = Table::new(ell);
    let d = decompose(ell, m, s01).unwrap();
    let q = d.params;
    let stable = |x: Class| -> Complex64 {
        d.non_projective
            .iter()
            .map(|(label, k)| {
                let factors = label.composition_factors(&q);
                factors
                    .iter()
                    .map(|&(s, c)| t.simple(s, s01, x) * c as f64)
                    .sum::<Complex64>()
                    * *k as f64
            })
            .sum()
    };
    for (s, k) in &d.projective {
        let value = t.inner(|x| beta(&t, ell, m, x) - stable(x), |x| t.simple(*s, s01, x));
        let k = k.to_f64().unwrap();
        assert!(
            (value.re - k).abs() < TOL && value.im.abs() < TOL,
            "ℓ={ell} m={m} s01={s01} {s}: oracle {value} vs {k}"
        );
    }
}

#[test]
fn class_sizes_cover_the_three_regular_elements() {
    for ell in (7..200u64).filter(|&l| is_prime(l)) {
        let t = Table::new(ell);
        let total: f64 = t.classes.iter().map(|c| c.1).sum();
        // Elements of order divisible by 3 lie in the split or non-split torus of order divisible by 3.
        let e = t.e;
        let l = ell as f64;
        let torus = (l - e) / 2.0;
        let mut prime_to_three = torus;
        while prime_to_three % 3.0 == 0.0 {
            prime_to_three /= 3.0;
        }
        let three_singular = (torus - prime_to_three) * l * (l + e) / 2.0;
        assert!((total + three_singular - t.order).abs() < 0.5, "ℓ={ell}");
    }
}

#[test]
fn simple_degrees_match_the_library() {
    for ell in [7u64, 11, 13, 17, 19, 23, 37] {
        let t = Table::new(ell);
        let q = ModularParams::new(ell, 2).unwrap();
        for s in Simple::all(&q) {
            let deg = t.simple(s, 1, Class::One);
            assert!((deg.re - s.degree(&q) as f64).abs() < TOL, "ℓ={ell} {s}");
        }
    }
}

#[test]
fn class_numbers_match_the_analytic_formula() {
    for ell in (7..2000u64).filter(|&l| is_prime(l) && l % 4 == 3) {
        assert_eq!(class_number(ell).unwrap() as i64, dirichlet_class_number(ell), "ℓ={ell}");
    }
}

#[test]
fn brauer_values_match() {
    for ell in (7..80u64).filter(|&l| is_prime(l)) {
        let t = Table::new(ell);
        for m in 2..=9 {
            for (class, lib) in [
                (Class::One, ConjugacyClass::Identity),
                (Class::R(1), ConjugacyClass::R(1)),
                (Class::R(2), ConjugacyClass::R(2)),
                (Class::S, ConjugacyClass::S),
            ] {
                let v = brauer_value(ell, m, lib).unwrap();
                let root = Complex64::new(v.radicand as f64, 0.0).sqrt();
                let lib_value = Complex64::new(v.rational.to_f64().unwrap(), 0.0)
                    + root * v.irrational.to_f64().unwrap();
                let oracle = beta(&t, ell, m, class);
                assert!((lib_value - oracle).norm() < TOL, "ℓ={ell} m={m} {class:?}");
            }
        }
    }
}

#[test]
fn projective_multiplicities_match_inner_products() {
    for ell in (7..=61u64).filter(|&l| is_prime(l)) {
        for m in 2..=12 {
            for s01 in [1, -1] {
                check_level(ell, m, s01);
            }
        }
    }
}

#[test]
fn projective_multiplicities_match_at_larger_levels() {
    for ell in [67u64, 71, 73, 79, 83, 97, 103, 109, 127, 163, 181] {
        for m in [2u64, 3, 4, 5, 6, 7] {
            check_level(ell, m, 1);
        }
    }
}

#[test]
fn non_projective_labels_are_block_compatible() {
    for ell in (7..=61u64).filter(|&l| is_prime(l)) {
        for m in 2..=12 {
            let d = decompose(ell, m, 1).unwrap();
            for (label, _) in &d.non_projective {
                if let NonProjectiveLabel::Biserial { .. } = label {
                    assert_eq!(d.params.epsilon, -1);
                }
            }
        }
    }
}
