//! Properties on seeded random actions.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pargal::envelope::globalize;
use pargal::galois::{canonical_form, find_iso, galois_check, partial_iso, unit_homomorphism};
use pargal::json::{action_to_json, parse_action};
use pargal::quotient::{invariants, invariants_via_kernel, is_quotient_global, quotient_partial_action, quotient_partial_action_direct};
use pargal::{fixtures, BaseRing, GroupTable, Subgroup};

use common::{c2xc3, normal_subgroups};

fn groups() -> Vec<Arc<GroupTable>> {
    vec![
        fixtures::cyclic(2),
        fixtures::cyclic(4),
        fixtures::cyclic(6),
        c2xc3(),
        Arc::new(pargal::group::build_cyclic_product(&[2, 2]).unwrap()),
        Arc::new(pargal::group::symmetric_group_s3()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_actions_are_valid_and_globalize(seed in any::<u64>(), gi in 0usize..6) {
        let g = &groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = fixtures::random_action(g, &mut rng);
        prop_assert!(a.validate().is_valid());
        let gl = globalize(&a).unwrap();
        prop_assert!(gl.verify().is_empty());
        prop_assert!(gl.global().is_global());
        prop_assert_eq!(parse_action(&action_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn quotient_routes_and_globality_tests_agree(seed in any::<u64>(), gi in 0usize..6) {
        let g = &groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = fixtures::random_action(g, &mut rng);
        for h in normal_subgroups(g) {
            prop_assert_eq!(quotient_partial_action(&a, &h).unwrap(), quotient_partial_action_direct(&a, &h).unwrap());
            prop_assert!(is_quotient_global(&a, &h).unwrap().agree());
        }
    }

    #[test]
    fn invariants_match_the_kernel(seed in any::<u64>(), gi in 0usize..6, p in prop::sample::select(vec![2u64, 3, 7])) {
        let g = &groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = fixtures::random_action(g, &mut rng);
        for h in [Subgroup::trivial(), Subgroup::whole(g)] {
            let blocks = invariants(&a, &h);
            prop_assert_eq!(&invariants_via_kernel(&a, &h, BaseRing::Rationals).unwrap(), &blocks);
            prop_assert_eq!(&invariants_via_kernel(&a, &h, BaseRing::prime_field(p).unwrap()).unwrap(), &blocks);
        }
    }

    #[test]
    fn relabeling_preserves_class(seed in any::<u64>(), gi in 0usize..6) {
        let g = &groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = fixtures::random_action(g, &mut rng);
        let b = fixtures::random_relabel(&a, &mut rng);
        let w = partial_iso(&a, &b).unwrap();
        prop_assert!(w.witness().unwrap().verify(&a, &b));
        prop_assert_eq!(canonical_form(&a), canonical_form(&b));
        prop_assert!(unit_homomorphism(&a, &b).unwrap().is_some());
    }

    #[test]
    fn regular_restrictions_are_galois(seed in any::<u64>(), gi in 0usize..6) {
        let g = &groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = fixtures::random_galois(g, &mut rng);
        let cert = galois_check(&a, BaseRing::Rationals).unwrap();
        prop_assert!(cert.is_galois());
        prop_assert!(pargal::galois::verify_coordinates(&a, cert.coords().unwrap()));
    }
}

/// Canonical forms decide isomorphism: compare against the search on
/// every pair from a seeded batch.
#[test]
fn canonical_form_agrees_with_search() {
    let mut rng = fixtures::rng_from_env();
    let g = fixtures::cyclic(4);
    let batch: Vec<_> = (0..24).map(|_| fixtures::random_action(&g, &mut rng)).collect();
    for a in &batch {
        for b in &batch {
            let by_form = canonical_form(a) == canonical_form(b);
            let by_search = find_iso(a, b, None, std::time::Duration::from_secs(10)).unwrap().is_found();
            assert_eq!(by_form, by_search);
        }
    }
}

#[test]
fn seeded_generator_is_reproducible() {
    let g = fixtures::cyclic(6);
    let mut r1 = fixtures::rng_from_env();
    let mut r2 = fixtures::rng_from_env();
    for _ in 0..20 {
        assert_eq!(fixtures::random_action(&g, &mut r1), fixtures::random_action(&g, &mut r2));
    }
}
