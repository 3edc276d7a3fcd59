//! Finite bounded lattices, retraction pairs between them, and two families
//! of aggregation operators — quasi-overlaps and quasi-groupings — with
//! exhaustive axiom checking, enumeration, and retraction-based extension of
//! an operator from a small lattice to a big one.
//!
//! Everything here is finite and checked by complete scans; reports carry
//! lexicographically smallest witnesses (in element declaration order), so
//! all results are deterministic.

pub mod extension;
pub mod fixtures;
pub mod lattice;
pub mod maps;
pub mod operators;
pub mod report;
pub mod textio;

pub use extension::{
    extend_grouping, extend_overlap, verify_extension_identity, verify_theorem, ExtendError,
    ExtensionResult, PreconditionReport, TheoremOutcome,
};
pub use fixtures::{
    make_boolean, make_chain, make_diamond_m3, make_pentagon_n5, make_product,
};
pub use lattice::{build_lattice, FiniteBoundedLattice, LatticeError, DEFAULT_MAX_ELEMENTS};
pub use maps::{
    check_boundary_conditions, check_lattice_homomorphism, check_monotone,
    check_retraction_pair, compose, enumerate_retraction_pairs, BoundaryReport, MapError,
    MapTable, MonotoneMap, RetractionPair,
};
pub use operators::{
    canonical_join, canonical_meet, check_quasi_grouping, check_quasi_overlap,
    enumerate_quasi_groupings, enumerate_quasi_overlaps, Axiom, AxiomReport, AxiomVerdict,
    OperatorError, OperatorKind, OperatorTable, OpWitness,
};
pub use report::{ValidationReport, Violation};
pub use textio::{
    parse_lattice, parse_map, parse_operator, serialize_lattice, serialize_map,
    serialize_operator, TextError, Workspace,
};
