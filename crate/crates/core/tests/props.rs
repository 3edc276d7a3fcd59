//! Randomized properties: arbitrary cover relations either fail to build or
//! yield a structure satisfying the lattice laws; serialization round-trips;
//! checkers agree with their definitions and with each other under the
//! symmetry that links the two monotonicity directions; parsers never panic.

use std::sync::Arc;

use proptest::prelude::*;

use overlat_core::fixtures::corpus;
use overlat_core::{
    build_lattice, check_monotone, check_quasi_overlap, parse_lattice, parse_map,
    parse_operator, serialize_lattice, serialize_map, serialize_operator, Axiom,
    FiniteBoundedLattice, MapTable, OperatorTable, Workspace,
};

fn corpus_arc(idx: usize) -> Arc<FiniteBoundedLattice> {
    let all = corpus();
    Arc::new(all[idx % all.len()].clone())
}

fn corpus_size() -> usize {
    corpus().len()
}

proptest! {
    /// Arbitrary cover data either errors out or builds a real bounded
    /// lattice: bounds are extreme, the cached tables are the definitional
    /// bounds, and the canonical text round-trips.
    #[test]
    fn random_cover_relations_build_lawfully_or_fail(
        n in 2usize..=6,
        raw_covers in proptest::collection::vec((0usize..6, 0usize..6), 0..14),
        bot in 0usize..6,
        top in 0usize..6,
    ) {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let of = |i: usize| names[i % n].as_str();
        let covers: Vec<(&str, &str)> =
            raw_covers.iter().map(|&(a, b)| (of(a), of(b))).collect();
        let elements: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        if let Ok(l) = build_lattice("R", &elements, of(bot), of(top), &covers) {
            for x in 0..l.len() {
                prop_assert!(l.leq_idx(l.bottom_idx(), x));
                prop_assert!(l.leq_idx(x, l.top_idx()));
                for y in 0..l.len() {
                    let m = l.meet_idx(x, y);
                    prop_assert!(l.leq_idx(m, x) && l.leq_idx(m, y));
                    for w in 0..l.len() {
                        if l.leq_idx(w, x) && l.leq_idx(w, y) {
                            prop_assert!(l.leq_idx(w, m));
                        }
                    }
                    let j = l.join_idx(x, y);
                    prop_assert!(l.leq_idx(x, j) && l.leq_idx(y, j));
                    for w in 0..l.len() {
                        if l.leq_idx(x, w) && l.leq_idx(y, w) {
                            prop_assert!(l.leq_idx(j, w));
                        }
                    }
                }
            }
            let reparsed = parse_lattice(&serialize_lattice(&l)).unwrap();
            prop_assert_eq!(reparsed, l);
        }
    }

    /// Any total table serializes to text that parses back to the same
    /// table, whatever axioms it violates.
    #[test]
    fn operator_text_round_trips_for_arbitrary_tables(
        idx in 0usize..100,
        seed in proptest::collection::vec(0usize..16, 16 * 16),
    ) {
        let l = corpus_arc(idx);
        let n = l.len();
        let entries: Vec<usize> = (0..n * n).map(|i| seed[i] % n).collect();
        let op = OperatorTable::from_entries("t", Arc::clone(&l), entries).unwrap();
        let mut ws = Workspace::new();
        ws.add_lattice((*l).clone()).unwrap();
        let back = parse_operator(&serialize_operator(&op), &ws).unwrap();
        prop_assert_eq!(back.entries(), op.entries());
        prop_assert_eq!(back.name(), op.name());
    }

    /// For a commutative table the two monotonicity directions coincide, so
    /// the derived first-argument note must equal the second-argument
    /// verdict.
    #[test]
    fn first_argument_note_mirrors_the_checked_direction_under_symmetry(
        idx in 0usize..100,
        seed in proptest::collection::vec(0usize..16, 16 * 16),
    ) {
        let l = corpus_arc(idx);
        let n = l.len();
        let mut entries = vec![0usize; n * n];
        for i in 0..n {
            for j in i..n {
                let v = seed[i * n + j] % n;
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        let op = OperatorTable::from_entries("t", Arc::clone(&l), entries).unwrap();
        let report = check_quasi_overlap(&op);
        prop_assert!(report.verdict(Axiom::Commutativity).pass);
        prop_assert_eq!(
            report.first_argument_monotone,
            Some(report.verdict(Axiom::Increasingness).pass)
        );
    }

    /// The monotonicity checker agrees with the definition, and monotone
    /// maps round-trip through text.
    #[test]
    fn monotonicity_verdicts_match_the_definition(
        di in 0usize..100,
        ci in 0usize..100,
        seed in proptest::collection::vec(0usize..16, 16),
    ) {
        let dom = corpus_arc(di);
        let cod = if ci % corpus_size() == di % corpus_size() {
            Arc::clone(&dom)
        } else {
            corpus_arc(ci)
        };
        let images: Vec<usize> = (0..dom.len()).map(|i| seed[i] % cod.len()).collect();
        let f = MapTable::from_images("f", Arc::clone(&dom), Arc::clone(&cod), images).unwrap();
        let naive = (0..dom.len()).all(|x| {
            (0..dom.len())
                .all(|y| !dom.leq_idx(x, y) || cod.leq_idx(f.apply_idx(x), f.apply_idx(y)))
        });
        prop_assert_eq!(check_monotone(&f).is_ok(), naive);

        let mut ws = Workspace::new();
        ws.add_lattice((*dom).clone()).unwrap();
        if !Arc::ptr_eq(&dom, &cod) {
            ws.add_lattice((*cod).clone()).unwrap();
        }
        let back = parse_map(&serialize_map(&f), &ws).unwrap();
        prop_assert_eq!(back.images(), f.images());
    }

    /// Mutating canonical text never panics the parser; it answers with
    /// either a lattice or an error.
    #[test]
    fn lattice_parser_is_total_on_mutated_text(
        edits in proptest::collection::vec((0usize..60, 32u8..127), 1..6),
    ) {
        let canonical = "lattice C4\nelements 0 a b 1\nbottom 0\ntop 1\ncovers\n0 a\na b\nb 1\nend\n";
        let mut bytes = canonical.as_bytes().to_vec();
        for &(pos, byte) in &edits {
            let i = pos % bytes.len();
            bytes[i] = byte;
        }
        if let Ok(text) = std::str::from_utf8(&bytes) {
            let _ = parse_lattice(text);
        }
    }

    /// Entirely arbitrary printable input never panics any parser.
    #[test]
    fn parsers_are_total_on_arbitrary_text(text in "[ -~\n]{0,200}") {
        let _ = parse_lattice(&text);
        let mut ws = Workspace::new();
        ws.add_lattice(parse_lattice(
            "lattice C2\nelements 0 1\nbottom 0\ntop 1\ncovers\n0 1\nend\n",
        ).unwrap()).unwrap();
        let _ = parse_map(&text, &ws);
        let _ = parse_operator(&text, &ws);
    }
}
