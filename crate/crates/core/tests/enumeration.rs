use achord::analyticity::is_analytic;
use achord::enumeration::{
    all_diagrams, classify_stabilizers, count_analytic_linear, count_cyclic_analytic,
    count_dihedral_analytic, Budget,
};
use achord::{canonical_cyclic, canonical_dihedral, stabilizer_order};
use num_bigint::BigUint;
use std::collections::HashSet;

#[test]
fn class_counts_match_direct_orbits() {
    let budget = Budget::default();
    for n in 1..=6 {
        let analytic: Vec<_> = all_diagrams(n).filter(is_analytic).collect();
        let cyc: HashSet<_> = analytic.iter().map(canonical_cyclic).collect();
        let dih: HashSet<_> = analytic.iter().map(canonical_dihedral).collect();
        let cc = count_cyclic_analytic(n, &budget).unwrap();
        assert_eq!(cc.orbits, BigUint::from(cyc.len()));
        assert!(cc.over_2n.is_integer());
        assert_eq!(cc.over_2n.to_integer(), cc.orbits.clone().into());
        let dc = count_dihedral_analytic(n, &budget).unwrap();
        assert_eq!(dc.orbits, BigUint::from(dih.len()));
        let stabs = classify_stabilizers(n, &budget).unwrap();
        let total: BigUint = stabs.values().sum();
        assert_eq!(total, BigUint::from(analytic.len()));
        for d in stabs.keys() {
            assert_eq!((2 * n) % d, 0);
        }
        let sum: usize = analytic.iter().map(|d| stabilizer_order(d).unwrap()).sum();
        assert_eq!(cc.stabilizer_sum, BigUint::from(sum));
    }
}

#[test]
fn budget_blocks_large_requests() {
    let small = Budget { max_chords: 4, ..Budget::default() };
    assert!(count_analytic_linear(5, &small).is_err());
}

#[test]
#[ignore = "takes minutes; run with --ignored"]
fn a9_and_a10_by_enumeration() {
    let budget = Budget { max_chords: 10, ..Budget::default() };
    assert_eq!(count_analytic_linear(9, &budget).unwrap(), BigUint::from(15875631u64));
    assert_eq!(count_analytic_linear(10, &budget).unwrap(), BigUint::from(205301361u64));
}
