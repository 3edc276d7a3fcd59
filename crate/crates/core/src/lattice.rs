//! Finite bounded lattices given by a cover relation.
//!
//! A lattice is built from element names plus a list of `(lower, upper)` cover
//! pairs; the full order is the reflexive-transitive closure of the covers.
//! Construction validates everything exhaustively — partial order (no cycles),
//! declared bounds, and existence of a unique meet and join for every pair —
//! and caches the meet/join tables so later queries are table lookups.
//!
//! Elements are identified by name; internally they are indices into the
//! declaration-ordered element list, and all deterministic scans (witness
//! selection, serialization) follow declaration order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::report::ValidationReport;

/// Hard upper bound on lattice sizes accepted by generators and the
/// retraction-pair enumerator; keeps every exhaustive check tractable.
pub const DEFAULT_MAX_ELEMENTS: usize = 64;

/// Element names and lattice names: ASCII alphanumerics, `_`, and parentheses.
pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '(' || c == ')')
}

/// Map and operator names may additionally contain `^` (extended tables are
/// named `<source>^E`).
pub(crate) fn is_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '(' || c == ')' || c == '^')
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    /// The covers contain a cycle, so the closure is not antisymmetric.
    #[error("not a partial order: {0}")]
    NotAPartialOrder(ValidationReport),
    /// The declared bottom/top is not a least/greatest element.
    #[error("not bounded: {0}")]
    NotBounded(ValidationReport),
    /// Some pair has no unique greatest lower / least upper bound.
    #[error("not a lattice: {0}")]
    NotALattice(ValidationReport),
    #[error("unknown element: {0}")]
    UnknownElement(String),
    #[error("duplicate element: {0}")]
    DuplicateElement(String),
    #[error("invalid name {0:?}: expected [A-Za-z0-9_()]+")]
    InvalidName(String),
    #[error("{what}: size {requested} out of bounds [{min}, {max}]")]
    SizeLimitExceeded {
        what: &'static str,
        requested: usize,
        min: usize,
        max: usize,
    },
}

impl LatticeError {
    /// The validation report carried by order-structure failures, if any.
    pub fn report(&self) -> Option<&ValidationReport> {
        match self {
            LatticeError::NotAPartialOrder(r)
            | LatticeError::NotBounded(r)
            | LatticeError::NotALattice(r) => Some(r),
            _ => None,
        }
    }
}

/// A validated finite bounded lattice.
///
/// `leq` is a dense `n x n` boolean matrix (`leq[i * n + j]` means
/// `element i <= element j`); `meet`/`join` are dense index tables filled in
/// during validation. `covers` holds the input pairs normalized: sorted by
/// declaration order and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBoundedLattice {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, usize>,
    bottom: usize,
    top: usize,
    covers: Vec<(usize, usize)>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl FiniteBoundedLattice {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty element lists
    }

    pub fn element(&self, idx: usize) -> &str {
        &self.elements[idx]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn bottom_idx(&self) -> usize {
        self.bottom
    }

    pub fn top_idx(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> &str {
        &self.elements[self.bottom]
    }

    pub fn top(&self) -> &str {
        &self.elements[self.top]
    }

    /// Normalized cover pairs as element indices.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.elements.len() + j]
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.elements.len() + j]
    }

    pub fn join_idx(&self, i: usize, j: usize) -> usize {
        self.join[i * self.elements.len() + j]
    }

    pub fn leq(&self, x: &str, y: &str) -> Result<bool, LatticeError> {
        Ok(self.leq_idx(self.index_of(x)?, self.index_of(y)?))
    }

    pub fn meet(&self, x: &str, y: &str) -> Result<&str, LatticeError> {
        Ok(self.element(self.meet_idx(self.index_of(x)?, self.index_of(y)?)))
    }

    pub fn join(&self, x: &str, y: &str) -> Result<&str, LatticeError> {
        Ok(self.element(self.join_idx(self.index_of(x)?, self.index_of(y)?)))
    }
}

impl fmt::Display for FiniteBoundedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Validate and build a lattice from declarations.
///
/// Checks run in a fixed order and the first failing rule is reported with
/// every witness it has, in declaration order: name/element well-formedness,
/// cover resolution, antisymmetry of the closure, declared bounds, and unique
/// meets/joins for all pairs.
pub fn build_lattice(
    name: &str,
    elements: &[&str],
    bottom: &str,
    top: &str,
    covers: &[(&str, &str)],
) -> Result<FiniteBoundedLattice, LatticeError> {
    if !is_identifier(name) {
        return Err(LatticeError::InvalidName(name.to_string()));
    }
    if elements.is_empty() {
        return Err(LatticeError::SizeLimitExceeded {
            what: "lattice",
            requested: 0,
            min: 1,
            max: DEFAULT_MAX_ELEMENTS,
        });
    }
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if !is_identifier(e) {
            return Err(LatticeError::InvalidName(e.to_string()));
        }
        if index.insert(e.to_string(), i).is_some() {
            return Err(LatticeError::DuplicateElement(e.to_string()));
        }
    }
    let n = elements.len();
    let resolve = |x: &str| -> Result<usize, LatticeError> {
        index
            .get(x)
            .copied()
            .ok_or_else(|| LatticeError::UnknownElement(x.to_string()))
    };
    let bottom = resolve(bottom)?;
    let top = resolve(top)?;

    let mut cover_idx = Vec::with_capacity(covers.len());
    for (lo, hi) in covers {
        cover_idx.push((resolve(lo)?, resolve(hi)?));
    }
    cover_idx.sort_unstable();
    cover_idx.dedup();

    // Reflexive-transitive closure of the cover edges.
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(lo, hi) in &cover_idx {
        leq[lo * n + hi] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }

    // Antisymmetry: a cycle shows up as i <= j and j <= i for distinct i, j.
    // A self-cover (x, x) is a cycle of length one.
    let mut report = ValidationReport::ok();
    for &(lo, hi) in &cover_idx {
        if lo == hi {
            report.push(
                "partial-order",
                &[elements[lo], elements[hi]],
                format!("cover {0} {0} is a cycle", elements[lo]),
            );
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if leq[i * n + j] && leq[j * n + i] {
                report.push(
                    "partial-order",
                    &[elements[i], elements[j]],
                    format!(
                        "covers contain a cycle through {} and {}",
                        elements[i], elements[j]
                    ),
                );
            }
        }
    }
    if !report.is_ok() {
        return Err(LatticeError::NotAPartialOrder(report));
    }

    let mut report = ValidationReport::ok();
    for x in 0..n {
        if !leq[bottom * n + x] {
            report.push(
                "bounded",
                &[elements[x]],
                format!("bottom {} is not <= {}", elements[bottom], elements[x]),
            );
        }
    }
    for x in 0..n {
        if !leq[x * n + top] {
            report.push(
                "bounded",
                &[elements[x]],
                format!("{} is not <= top {}", elements[x], elements[top]),
            );
        }
    }
    if !report.is_ok() {
        return Err(LatticeError::NotBounded(report));
    }

    // Unique meet and join for every pair; cache while checking.
    let mut report = ValidationReport::ok();
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for i in 0..n {
        for j in i..n {
            match bound_of(&leq, n, i, j, true) {
                Some(m) => {
                    meet[i * n + j] = m;
                    meet[j * n + i] = m;
                }
                None => report.push(
                    "unique-meet-join",
                    &[elements[i], elements[j]],
                    format!(
                        "({}, {}) has no greatest lower bound",
                        elements[i], elements[j]
                    ),
                ),
            }
            match bound_of(&leq, n, i, j, false) {
                Some(m) => {
                    join[i * n + j] = m;
                    join[j * n + i] = m;
                }
                None => report.push(
                    "unique-meet-join",
                    &[elements[i], elements[j]],
                    format!(
                        "({}, {}) has no least upper bound",
                        elements[i], elements[j]
                    ),
                ),
            }
        }
    }
    if !report.is_ok() {
        return Err(LatticeError::NotALattice(report));
    }

    Ok(FiniteBoundedLattice {
        name: name.to_string(),
        elements: elements.iter().map(|e| e.to_string()).collect(),
        index,
        bottom,
        top,
        covers: cover_idx,
        leq,
        meet,
        join,
    })
}

/// Greatest lower bound (`lower = true`) or least upper bound of `(i, j)`,
/// if it exists. A greatest/least element of a bound set is unique by
/// antisymmetry, so "exists" is the only question.
fn bound_of(leq: &[bool], n: usize, i: usize, j: usize, lower: bool) -> Option<usize> {
    let le = |a: usize, b: usize| leq[a * n + b];
    let in_set = |z: usize| {
        if lower {
            le(z, i) && le(z, j)
        } else {
            le(i, z) && le(j, z)
        }
    };
    'candidates: for z in 0..n {
        if !in_set(z) {
            continue;
        }
        for w in 0..n {
            if in_set(w) {
                let dominated = if lower { le(w, z) } else { le(z, w) };
                if !dominated {
                    continue 'candidates;
                }
            }
        }
        return Some(z);
    }
    None
}
