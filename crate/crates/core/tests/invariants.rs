use dmkit_core::bits;
use dmkit_core::canonical::{canonical_form, is_isomorphic};
use dmkit_core::catalog::ExminorClassId;
use dmkit_core::minor_scan::classify_by_exminors;
use dmkit_core::{Mask, SetSystem};
use proptest::prelude::*;

fn arb_system(max_n: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::btree_set(0..(1u32 << n), 1..=(1usize << n))
            .prop_map(move |f| SetSystem::from_masks(n, f).unwrap())
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn twist_is_an_involution(s in arb_system(5), a in any::<u32>()) {
        let a = a & s.ground();
        prop_assert_eq!(s.twist(a).unwrap().twist(a).unwrap(), s.clone());
        prop_assert_eq!(s.dual(), s.twist(s.ground()).unwrap());
    }

    #[test]
    fn exchange_is_twist_invariant(s in arb_system(5), a in any::<u32>()) {
        let a = a & s.ground();
        prop_assert_eq!(s.is_delta_matroid(), s.twist(a).unwrap().is_delta_matroid());
    }

    #[test]
    fn minor_duality(s in arb_system(5), x in any::<u32>(), y in any::<u32>()) {
        let (x, y) = (x & s.ground(), y & s.ground() & !x);
        // (S \ X / Y)* = S* / X \ Y whenever both are proper
        if let (Ok(m), Ok(md)) = (s.minor(x, y), s.dual().minor(y, x)) {
            if m.is_proper() && md.is_proper() {
                prop_assert_eq!(m.dual(), md);
            }
        }
    }

    #[test]
    fn delta_matroids_are_minor_closed(s in arb_system(5), e in 0usize..5) {
        prop_assume!(e < s.n() && s.is_delta_matroid());
        prop_assert!(s.delete(e).unwrap().is_delta_matroid());
        prop_assert!(s.contract(e).unwrap().is_delta_matroid());
    }

    #[test]
    fn canonical_form_is_a_relabeling_invariant((s, perm) in arb_system(5).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), arb_perm(n))
    })) {
        let t = s.permuted(&perm).unwrap();
        prop_assert_eq!(canonical_form(&s).unwrap(), canonical_form(&t).unwrap());
        prop_assert!(is_isomorphic(&s, &t).unwrap());
    }

    #[test]
    fn exminor_verdict_matches_exchange(s in arb_system(4)) {
        let v = classify_by_exminors(&s, ExminorClassId::DeltaMatroid).unwrap();
        prop_assert_eq!(v.is_member(), s.is_delta_matroid());
        if let Some(w) = v.witness() {
            prop_assert!(!s.minor(w.deleted, w.contracted).unwrap().is_delta_matroid());
        }
    }

    #[test]
    fn family_index_round_trip(s in arb_system(4)) {
        let idx = s.family_index().unwrap();
        prop_assert_eq!(SetSystem::from_family_index(s.n(), idx).unwrap(), s);
    }
}

#[test]
fn single_feasible_set_is_a_delta_matroid() {
    for n in 0..=4 {
        for m in 0..=bits::full(n) {
            let s = SetSystem::from_masks(n, [m as Mask]).unwrap();
            assert!(s.is_delta_matroid());
        }
    }
}
