//! Build two chains, enumerate the boundary-respecting retraction pairs
//! between them, lift the meet of the small chain through each pair, and
//! check the lifted table.

use std::sync::Arc;

use overlat_core::{
    canonical_meet, check_quasi_overlap, enumerate_retraction_pairs, extend_overlap,
    fixtures::make_chain,
};

fn main() {
    let big = Arc::new(make_chain(4).unwrap());
    let small = Arc::new(make_chain(3).unwrap());
    let source = canonical_meet(&small);

    for pair in enumerate_retraction_pairs(&big, &small, true, 64).unwrap() {
        let lifted = extend_overlap(&pair, &source).unwrap();
        let report = check_quasi_overlap(&lifted);
        println!(
            "s = {:?}  r = {:?}  lifted {} on {}: all axioms pass = {}",
            pair.s().images(),
            pair.r().images(),
            lifted.name(),
            big.name(),
            report.all_pass(),
        );
    }
}
