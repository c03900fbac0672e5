mod common;

use common::{all_permutations, canonical_partition, count_classes, dihedral_related, frac, partition_by_relation};
use montesinos::{
    build_family, canonical_key, component_count, distinct_count_formula, enumerate_mutant_classes,
    is_alternating_vertical, is_hyperbolic_witness, mutate, mutation_is_unlinked, sphere_is_essential,
    CanonicalKey, FamilyParams, Fraction, MontesinosLink, MutationIndex, DEFAULT_ENUMERATE_CAP,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn link(s: &str) -> MontesinosLink {
    s.parse().unwrap()
}

fn family(n: u64) -> MontesinosLink {
    build_family(FamilyParams::new(n).unwrap()).unwrap()
}

#[test]
fn adjacent_mutation_swaps_entries() {
    let m = link("(1/7,1/9,1/11,1/13,1/15)");
    let out = mutate(&m, MutationIndex(2)).unwrap();
    assert_eq!(out.to_string(), "(1/7,1/11,1/9,1/13,1/15)");
    assert!(mutate(&m, MutationIndex(0)).is_err());
    assert!(mutate(&m, MutationIndex(5)).is_err());
}

#[test]
fn essential_spheres_need_two_tangles_each_side() {
    let three = family(1);
    assert!(!sphere_is_essential(&three, MutationIndex(1)).unwrap());
    let five = family(2);
    for idx in MutationIndex::all(&five) {
        assert!(sphere_is_essential(&five, idx).unwrap());
    }
}

#[test]
fn mutation_of_two_component_neighbourhood_is_not_unlinked() {
    let m = link("(1/2,1/7,1/9,1/7)");
    assert!(!mutation_is_unlinked(&m, MutationIndex(1)).unwrap());
    let m = link("(1/7,1/9,1/11,1/13,1/15)");
    assert!(MutationIndex::all(&m).all(|i| mutation_is_unlinked(&m, i).unwrap()));
}

#[test]
fn key_of_a_mixed_sign_link() {
    let key = canonical_key(&link("(-1/7,1/9,1/11)")).unwrap();
    assert_eq!(key.to_string(), "(1/11,1/9,6/7)|41/693");
    assert_eq!(key.to_string().parse::<CanonicalKey>().unwrap(), key);
}

#[test]
fn hypothesis_violations_are_rejected() {
    assert!(canonical_key(&link("(1/7,1/9)")).is_err());
    assert!(canonical_key(&link("(1/2,1/3,1/5)")).is_err());
    assert!(canonical_key(&link("(1/2,1/3,1/7)")).is_ok());
}

#[test]
fn small_family_counts() {
    assert!(distinct_count_formula(1).is_err());
    assert_eq!(distinct_count_formula(2).unwrap(), BigUint::from(12u32));
    assert_eq!(distinct_count_formula(3).unwrap(), BigUint::from(360u32));
    assert_eq!(distinct_count_formula(4).unwrap(), BigUint::from(20160u32));
    assert_eq!(enumerate_mutant_classes(&family(1), DEFAULT_ENUMERATE_CAP).unwrap().len(), 1);
    assert_eq!(enumerate_mutant_classes(&link("(1/7,1/9,1/11,1/13)"), DEFAULT_ENUMERATE_CAP).unwrap().len(), 3);
}

#[test]
fn enumeration_respects_the_cap() {
    assert!(enumerate_mutant_classes(&family(3), 5).is_err());
}

#[test]
fn repeated_entries_collapse_classes() {
    let m = link("(1/7,1/7,1/9,1/9,1/11)");
    let residues: Vec<Fraction> = m.entries().to_vec();
    let oracle = count_classes(&all_permutations(&residues), |a, b| dihedral_related(a, b));
    assert_eq!(enumerate_mutant_classes(&m, DEFAULT_ENUMERATE_CAP).unwrap().len(), oracle);
}

#[test]
fn key_partition_matches_dihedral_partition() {
    let base = family(2);
    let perms = all_permutations(base.entries());
    let links: Vec<MontesinosLink> = perms.iter().cloned().map(|p| MontesinosLink::from_entries(p).unwrap()).collect();
    let oracle = partition_by_relation(&perms, |a, b| dihedral_related(a, b));
    let keys = canonical_partition(links.iter().map(|l| canonical_key(l).unwrap()));
    assert_eq!(keys, canonical_partition(oracle));
}

fn mutation_path(len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..len, 0..40)
}

proptest! {
    #[test]
    fn key_is_constant_on_dihedral_orbits(
        entries in prop::collection::vec((1i64..30, 2i64..30), 3..=8),
        r in 0usize..8,
    ) {
        let fracs: Vec<Fraction> = entries.iter().map(|&(p, q)| Fraction::new(p, q).unwrap()).collect();
        prop_assume!(fracs.iter().all(|f| !f.is_integral()));
        let m = MontesinosLink::from_entries(fracs).unwrap();
        prop_assume!(canonical_key(&m).is_ok());
        let key = canonical_key(&m).unwrap();
        prop_assert_eq!(canonical_key(&m.rotated(r % m.len())).unwrap(), key.clone());
        prop_assert_eq!(canonical_key(&m.reversed()).unwrap(), key);
    }

    #[test]
    fn mutation_preserves_structure(path in mutation_path(7)) {
        let base = family(3);
        let classes = enumerate_mutant_classes(&base, DEFAULT_ENUMERATE_CAP).unwrap();
        let mut m = base.clone();
        for a in path {
            m = mutate(&m, MutationIndex(a)).unwrap();
        }
        prop_assert_eq!(component_count(&m), 1);
        prop_assert!(is_hyperbolic_witness(&m).unwrap());
        prop_assert!(is_alternating_vertical(&m));
        prop_assert_eq!(m.fraction_sum(), base.fraction_sum());
        prop_assert!(classes.contains(&canonical_key(&m).unwrap()));
    }
}

#[test]
fn mixed_residue_key_uses_floor_residue() {
    let key = canonical_key(&link("(15/7,1/9,1/11)")).unwrap();
    assert_eq!(key.residues, vec![frac("1/11"), frac("1/9"), frac("1/7")]);
    assert_eq!(key.total, frac("15/7") + frac("1/9") + frac("1/11"));
}
