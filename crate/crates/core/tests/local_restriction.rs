use galmod_core::arith::is_prime;
use galmod_core::modular::local::{build_local_cover, compare_local, Subgroup};
use galmod_core::modular::ModularParams;

#[test]
fn engine_matches_closed_form_on_small_levels() {
    for ell in [7u64, 11, 13, 19] {
        for sub in Subgroup::ALL {
            let q = ModularParams::new(ell, 2).unwrap();
            if !sub.applies(&q) {
                assert!(build_local_cover(ell, sub).is_err());
                continue;
            }
            for m in 2..=8 {
                let c = compare_local(ell, m, sub).unwrap();
                assert!(c.agrees(), "ℓ={ell} {sub} m={m}: engine {} expected {}", c.engine, c.expected);
            }
        }
    }
}

#[test]
fn engine_matches_closed_form_up_to_level_200() {
    for ell in (7..200u64).filter(|&l| is_prime(l)) {
        let q = ModularParams::new(ell, 2).unwrap();
        for sub in Subgroup::ALL.into_iter().filter(|s| s.applies(&q)) {
            for m in [2, 3, 4, 7] {
                let c = compare_local(ell, m, sub).unwrap();
                assert!(c.agrees(), "ℓ={ell} {sub} m={m}: engine {} expected {}", c.engine, c.expected);
            }
        }
    }
}

#[test]
fn level_nineteen_has_two_wild_layers() {
    for sub in [Subgroup::V, Subgroup::Delta1] {
        let (group, cover) = build_local_cover(19, sub).unwrap();
        assert_eq!(group.n, 2);
        assert_eq!(cover.n_i(), 1);
    }
}

#[test]
fn second_dihedral_subgroup_only_in_the_equal_case() {
    assert!(build_local_cover(19, Subgroup::Delta2).is_err());
    assert!(build_local_cover(13, Subgroup::Delta2).is_ok());
}
