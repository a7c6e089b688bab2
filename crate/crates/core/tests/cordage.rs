use achord::analyticity::is_analytic;
use achord::cordage::{contract, decompose, is_reduced, reduced_cordages};
use achord::enumeration::all_diagrams;
use achord::SimpleGraph;
use std::collections::HashSet;

fn connected_analytic(n: usize) -> impl Iterator<Item = achord::LinearDiagram> {
    all_diagrams(n).filter(|d| SimpleGraph::interlacement(d).is_connected() && is_analytic(d))
}

#[test]
fn contract_inverts_decompose_up_to_seven_chords() {
    for n in 2..=7 {
        for d in connected_analytic(n) {
            let c = decompose(&d).unwrap_or_else(|e| panic!("{d}: {e}"));
            assert!(is_reduced(&c), "{d}");
            assert_eq!(c.size(), n - 1);
            assert_eq!(contract(&c), d);
        }
    }
}

#[test]
fn decompose_inverts_contract_and_grammar_is_unambiguous() {
    for size in 1..=6 {
        let all = reduced_cordages(size);
        let mut images = HashSet::new();
        for c in &all {
            let d = contract(c);
            assert_eq!(decompose(&d).as_ref(), Ok(c));
            assert!(images.insert(d));
        }
        assert_eq!(images.len(), connected_analytic(size + 1).count());
    }
}
