//! Lifting an operator along a retraction pair, and the end-to-end check
//! that the lift behaves.
//!
//! Given maps `r: L -> M` and `s: M -> L` and a table `O` on `M`, the lifted
//! table on `L` is `O^E(x, y) = s(O(r(x), r(y)))`. Whenever `r . s` is the
//! identity on `M`, the lift restricts back to the original along `s`:
//! `O^E(s(x), s(y)) = s(O(x, y))`. The full pipeline additionally checks the
//! pair's boundary behaviour and the source axioms, lifts, re-checks the
//! axioms on the lift, and classifies what happened.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::FiniteBoundedLattice;
use crate::maps::{
    check_boundary_conditions, check_retraction_pair, same_lattice, BoundaryReport, MapTable,
    RetractionPair,
};
use crate::operators::{
    check_quasi_grouping, check_quasi_overlap, AxiomReport, OperatorKind, OperatorTable,
};
use crate::report::ValidationReport;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExtendError {
    #[error("mismatched lattices: {0}")]
    DomainMismatch(String),
}

/// How an end-to-end verification came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremOutcome {
    /// Preconditions hold and the lifted table passes everything.
    Verified,
    /// Some precondition (retraction identity, monotonicity, boundary
    /// behaviour, or a source axiom) fails; the lift is still reported.
    PreconditionFailed,
    /// Preconditions hold yet the lift misbehaves.
    TheoremViolation,
}

impl TheoremOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremOutcome::Verified => "verified",
            TheoremOutcome::PreconditionFailed => "precondition-failed",
            TheoremOutcome::TheoremViolation => "theorem-violation",
        }
    }
}

impl std::fmt::Display for TheoremOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The precondition side of a verification: the pair really is a retraction
/// pair, its boundary behaviour, and the source table's axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreconditionReport {
    pub retraction: ValidationReport,
    pub boundary: BoundaryReport,
    pub source_axioms: AxiomReport,
}

impl PreconditionReport {
    pub fn all_ok(&self) -> bool {
        self.retraction.is_ok() && self.boundary.all_ok() && self.source_axioms.all_pass()
    }
}

/// Everything a verification produced, preconditions included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionResult {
    pub extended: OperatorTable,
    pub preconditions: PreconditionReport,
    pub identity_report: ValidationReport,
    pub axiom_report: AxiomReport,
    pub outcome: TheoremOutcome,
}

impl ExtensionResult {
    pub fn identity_ok(&self) -> bool {
        self.identity_report.is_ok()
    }
}

fn check_shapes(
    r: &MapTable,
    s: &MapTable,
    source: &OperatorTable,
) -> Result<(), ExtendError> {
    if !same_lattice(r.codomain(), s.domain()) {
        return Err(ExtendError::DomainMismatch(format!(
            "{} lands in {} but {} leaves {}",
            r.name(),
            r.codomain().name(),
            s.name(),
            s.domain().name(),
        )));
    }
    if !same_lattice(r.domain(), s.codomain()) {
        return Err(ExtendError::DomainMismatch(format!(
            "{} leaves {} but {} lands in {}",
            r.name(),
            r.domain().name(),
            s.name(),
            s.codomain().name(),
        )));
    }
    if !same_lattice(source.lattice(), s.domain()) {
        return Err(ExtendError::DomainMismatch(format!(
            "operator {} lives on {}, not on {}",
            source.name(),
            source.lattice().name(),
            s.domain().name(),
        )));
    }
    Ok(())
}

/// The lift formula itself; shapes must already be known compatible.
fn extended_table(r: &MapTable, s: &MapTable, source: &OperatorTable) -> OperatorTable {
    let big: &Arc<FiniteBoundedLattice> = r.domain();
    let n = big.len();
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            entries.push(s.apply_idx(source.apply_idx(r.apply_idx(x), r.apply_idx(y))));
        }
    }
    OperatorTable::from_entries(&format!("{}^E", source.name()), Arc::clone(big), entries)
        .expect("lifted table is total and its name is valid")
}

/// `O^E(s(x), s(y)) = s(O(x, y))` for every pair in the small lattice; each
/// failure is recorded under the rule `extension-identity`.
fn check_identity(
    s: &MapTable,
    source: &OperatorTable,
    extended: &OperatorTable,
) -> ValidationReport {
    let m = source.lattice();
    let big = s.codomain();
    let mut report = ValidationReport::ok();
    for x in 0..m.len() {
        for y in 0..m.len() {
            let lhs = extended.apply_idx(s.apply_idx(x), s.apply_idx(y));
            let rhs = s.apply_idx(source.apply_idx(x, y));
            if lhs != rhs {
                report.push(
                    "extension-identity",
                    &[m.element(x), m.element(y)],
                    format!(
                        "{e}({sx}, {sy}) = {lhs} but the image of {o}({x}, {y}) is {rhs}",
                        e = extended.name(),
                        o = source.name(),
                        x = m.element(x),
                        y = m.element(y),
                        sx = big.element(s.apply_idx(x)),
                        sy = big.element(s.apply_idx(y)),
                        lhs = big.element(lhs),
                        rhs = big.element(rhs),
                    ),
                );
            }
        }
    }
    report
}

/// Lift a quasi-overlap table along a validated retraction pair. The result
/// is named `<source>^E`.
pub fn extend_overlap(
    pair: &RetractionPair,
    source: &OperatorTable,
) -> Result<OperatorTable, ExtendError> {
    extend(pair, source)
}

/// Lift a quasi-grouping table along a validated retraction pair. Same
/// formula as for overlaps; the name states intent at call sites.
pub fn extend_grouping(
    pair: &RetractionPair,
    source: &OperatorTable,
) -> Result<OperatorTable, ExtendError> {
    extend(pair, source)
}

fn extend(pair: &RetractionPair, source: &OperatorTable) -> Result<OperatorTable, ExtendError> {
    check_shapes(pair.r(), pair.s(), source)?;
    Ok(extended_table(pair.r(), pair.s(), source))
}

/// Check that `extended` restricts back to `source` along the pair's
/// section. This needs nothing beyond the pair itself: the restriction law
/// follows from `r . s = id` alone, so it holds (and is checked) regardless
/// of boundary behaviour or axioms.
pub fn verify_extension_identity(
    pair: &RetractionPair,
    source: &OperatorTable,
    extended: &OperatorTable,
) -> Result<ValidationReport, ExtendError> {
    check_shapes(pair.r(), pair.s(), source)?;
    if !same_lattice(extended.lattice(), pair.big()) {
        return Err(ExtendError::DomainMismatch(format!(
            "operator {} lives on {}, not on {}",
            extended.name(),
            extended.lattice().name(),
            pair.big().name(),
        )));
    }
    Ok(check_identity(pair.s(), source, extended))
}

/// End-to-end pipeline on raw map tables (nothing pre-validated): check the
/// retraction laws, the boundary behaviour, and the source axioms; lift the
/// table; check the restriction law and the axioms on the lift; classify.
///
/// The lift formula runs regardless of precondition failures so that the
/// result always carries the table and every report. `PreconditionFailed`
/// means the hypotheses were not met (whatever the lift then does),
/// `TheoremViolation` means they were met and the lift still misbehaved.
pub fn verify_theorem(
    r: &MapTable,
    s: &MapTable,
    source: &OperatorTable,
    kind: OperatorKind,
) -> Result<ExtensionResult, ExtendError> {
    check_shapes(r, s, source)?;
    let retraction =
        check_retraction_pair(r, s).expect("shapes were checked before the retraction laws");
    let boundary = check_boundary_conditions(r);
    let check = match kind {
        OperatorKind::QuasiOverlap => check_quasi_overlap,
        OperatorKind::QuasiGrouping => check_quasi_grouping,
    };
    let source_axioms = check(source);
    let preconditions = PreconditionReport {
        retraction,
        boundary,
        source_axioms,
    };

    let extended = extended_table(r, s, source);
    let identity_report = check_identity(s, source, &extended);
    let axiom_report = check(&extended);

    let outcome = if !preconditions.all_ok() {
        TheoremOutcome::PreconditionFailed
    } else if identity_report.is_ok() && axiom_report.all_pass() {
        TheoremOutcome::Verified
    } else {
        TheoremOutcome::TheoremViolation
    };
    Ok(ExtensionResult {
        extended,
        preconditions,
        identity_report,
        axiom_report,
        outcome,
    })
}
