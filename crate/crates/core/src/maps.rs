//! Maps between lattices: monotonicity, composition, retraction pairs, and
//! boundary conditions.
//!
//! A retraction pair links a big lattice L to a small one M: a monotone
//! `r: L -> M` with a monotone `s: M -> L` such that `r(s(m)) = m` for every
//! m. That identity forces s to be an order embedding. The two boundary
//! conditions — `r(x) = bottom(M)` iff `x = bottom(L)`, and the same at the
//! top — are tracked as status, never as validity: pairs violating them are
//! legal values (the extension machinery probes exactly those).

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{is_name, FiniteBoundedLattice};
use crate::report::ValidationReport;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("invalid map name {0:?}")]
    InvalidName(String),
    #[error("unknown element: {0}")]
    UnknownElement(String),
    #[error("map is not total: no image for {0}")]
    NotTotal(String),
    #[error("duplicate entry for {0}")]
    DuplicateEntry(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("map is not monotone: {0}")]
    NotMonotone(ValidationReport),
    #[error("not a retraction pair: {0}")]
    NotRetraction(ValidationReport),
    #[error("{what}: size {requested} out of bounds [{min}, {max}]")]
    SizeLimitExceeded {
        what: &'static str,
        requested: usize,
        min: usize,
        max: usize,
    },
}

pub(crate) fn same_lattice(a: &Arc<FiniteBoundedLattice>, b: &Arc<FiniteBoundedLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A total map between two lattices, not necessarily monotone.
///
/// `images[i]` is the codomain index of the image of domain element `i`.
/// Totality and element resolution are enforced here; monotonicity is a
/// check ([`check_monotone`]) or a refinement ([`MonotoneMap`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapTable {
    name: String,
    domain: Arc<FiniteBoundedLattice>,
    codomain: Arc<FiniteBoundedLattice>,
    images: Vec<usize>,
}

impl MapTable {
    pub fn new(
        name: &str,
        domain: Arc<FiniteBoundedLattice>,
        codomain: Arc<FiniteBoundedLattice>,
        entries: &[(&str, &str)],
    ) -> Result<Self, MapError> {
        if !is_name(name) {
            return Err(MapError::InvalidName(name.to_string()));
        }
        let mut images: Vec<Option<usize>> = vec![None; domain.len()];
        for (x, y) in entries {
            let xi = domain
                .index_of(x)
                .map_err(|_| MapError::UnknownElement(x.to_string()))?;
            let yi = codomain
                .index_of(y)
                .map_err(|_| MapError::UnknownElement(y.to_string()))?;
            if images[xi].is_some() {
                return Err(MapError::DuplicateEntry(x.to_string()));
            }
            images[xi] = Some(yi);
        }
        let mut resolved = Vec::with_capacity(domain.len());
        for (i, img) in images.into_iter().enumerate() {
            match img {
                Some(y) => resolved.push(y),
                None => return Err(MapError::NotTotal(domain.element(i).to_string())),
            }
        }
        Ok(MapTable {
            name: name.to_string(),
            domain,
            codomain,
            images: resolved,
        })
    }

    /// Build directly from codomain indices, one per domain element in
    /// declaration order.
    pub fn from_images(
        name: &str,
        domain: Arc<FiniteBoundedLattice>,
        codomain: Arc<FiniteBoundedLattice>,
        images: Vec<usize>,
    ) -> Result<Self, MapError> {
        if !is_name(name) {
            return Err(MapError::InvalidName(name.to_string()));
        }
        if images.len() != domain.len() {
            return Err(MapError::NotTotal(format!(
                "{} images for {} elements",
                images.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&y| y >= codomain.len()) {
            return Err(MapError::UnknownElement(format!("index {bad}")));
        }
        Ok(MapTable {
            name: name.to_string(),
            domain,
            codomain,
            images,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Arc<FiniteBoundedLattice> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteBoundedLattice> {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, x: &str) -> Result<&str, MapError> {
        let i = self
            .domain
            .index_of(x)
            .map_err(|_| MapError::UnknownElement(x.to_string()))?;
        Ok(self.codomain.element(self.images[i]))
    }
}

/// Exhaustive monotonicity check: for every ordered pair `x <= y` in the
/// domain, the images must satisfy `f(x) <= f(y)`. Violations are collected
/// in declaration-order scan, so the first one is the smallest witness.
pub fn check_monotone(f: &MapTable) -> ValidationReport {
    let mut report = ValidationReport::ok();
    let (dom, cod) = (f.domain(), f.codomain());
    for i in 0..dom.len() {
        for j in 0..dom.len() {
            if dom.leq_idx(i, j) && !cod.leq_idx(f.apply_idx(i), f.apply_idx(j)) {
                report.push(
                    "monotone",
                    &[dom.element(i), dom.element(j)],
                    format!(
                        "{} <= {} but {}({}) = {} is not <= {}({}) = {}",
                        dom.element(i),
                        dom.element(j),
                        f.name(),
                        dom.element(i),
                        cod.element(f.apply_idx(i)),
                        f.name(),
                        dom.element(j),
                        cod.element(f.apply_idx(j)),
                    ),
                );
            }
        }
    }
    report
}

/// A map validated to be order-preserving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    table: MapTable,
}

impl MonotoneMap {
    pub fn new(table: MapTable) -> Result<Self, MapError> {
        let report = check_monotone(&table);
        if report.is_ok() {
            Ok(MonotoneMap { table })
        } else {
            Err(MapError::NotMonotone(report))
        }
    }

    /// The identity on `l`, named `id_<lattice>`.
    pub fn identity(l: &Arc<FiniteBoundedLattice>) -> Self {
        let table = MapTable::from_images(
            &format!("id_{}", l.name()),
            Arc::clone(l),
            Arc::clone(l),
            (0..l.len()).collect(),
        )
        .expect("identity map is total");
        MonotoneMap { table }
    }

    pub fn table(&self) -> &MapTable {
        &self.table
    }
}

impl std::ops::Deref for MonotoneMap {
    type Target = MapTable;

    fn deref(&self) -> &MapTable {
        &self.table
    }
}

/// `f` then `g`. Requires `codomain(f) = domain(g)`; monotone maps compose to
/// a monotone map, so no recheck is needed.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap, MapError> {
    if !same_lattice(f.codomain(), g.domain()) {
        return Err(MapError::DomainMismatch(format!(
            "cannot compose {}: {} -> {} with {}: {} -> {}",
            f.name(),
            f.domain().name(),
            f.codomain().name(),
            g.name(),
            g.domain().name(),
            g.codomain().name(),
        )));
    }
    let images = f.images().iter().map(|&i| g.apply_idx(i)).collect();
    let table = MapTable::from_images(
        &format!("{}_then_{}", f.name(), g.name()),
        Arc::clone(f.domain()),
        Arc::clone(g.codomain()),
        images,
    )
    .expect("composition of total maps is total");
    Ok(MonotoneMap { table })
}

/// Check that `(r, s)` form a retraction pair: both monotone and
/// `r(s(m)) = m` for every element of the small lattice. Reported rules:
/// `r-monotone`, `s-monotone`, `retraction-identity`.
pub fn check_retraction_pair(r: &MapTable, s: &MapTable) -> Result<ValidationReport, MapError> {
    check_pair_shapes(r, s)?;
    let mut report = ValidationReport::ok();
    for v in check_monotone(r).violations {
        report.violations.push(crate::report::Violation {
            rule: "r-monotone".to_string(),
            ..v
        });
    }
    for v in check_monotone(s).violations {
        report.violations.push(crate::report::Violation {
            rule: "s-monotone".to_string(),
            ..v
        });
    }
    let m = s.domain();
    for i in 0..m.len() {
        let back = r.apply_idx(s.apply_idx(i));
        if back != i {
            report.push(
                "retraction-identity",
                &[m.element(i)],
                format!(
                    "r(s({})) = {} but a retraction must return {}",
                    m.element(i),
                    m.element(back),
                    m.element(i)
                ),
            );
        }
    }
    Ok(report)
}

fn check_pair_shapes(r: &MapTable, s: &MapTable) -> Result<(), MapError> {
    if !same_lattice(r.domain(), s.codomain()) || !same_lattice(r.codomain(), s.domain()) {
        return Err(MapError::DomainMismatch(format!(
            "retraction pair needs r: L -> M and s: M -> L, got r: {} -> {} and s: {} -> {}",
            r.domain().name(),
            r.codomain().name(),
            s.domain().name(),
            s.codomain().name(),
        )));
    }
    Ok(())
}

/// The two boundary conditions on `r: L -> M`, checked independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryReport {
    /// `r(x) = bottom(M)` if and only if `x = bottom(L)`.
    pub zero: ValidationReport,
    /// `r(x) = top(M)` if and only if `x = top(L)`.
    pub one: ValidationReport,
}

impl BoundaryReport {
    pub fn all_ok(&self) -> bool {
        self.zero.is_ok() && self.one.is_ok()
    }
}

/// Check both boundary conditions on `r`. Each direction of each "iff" is
/// labeled in the violation message.
pub fn check_boundary_conditions(r: &MapTable) -> BoundaryReport {
    let (l, m) = (r.domain(), r.codomain());
    let mut zero = ValidationReport::ok();
    let mut one = ValidationReport::ok();
    for x in 0..l.len() {
        let fx = r.apply_idx(x);
        if fx == m.bottom_idx() && x != l.bottom_idx() {
            zero.push(
                "boundary-zero",
                &[l.element(x)],
                format!(
                    "r({}) = {} (bottom of {}) but {} is not the bottom of {}",
                    l.element(x),
                    m.bottom(),
                    m.name(),
                    l.element(x),
                    l.name()
                ),
            );
        }
        if x == l.bottom_idx() && fx != m.bottom_idx() {
            zero.push(
                "boundary-zero",
                &[l.element(x)],
                format!(
                    "r maps the bottom {} to {}, not to the bottom of {}",
                    l.element(x),
                    m.element(fx),
                    m.name()
                ),
            );
        }
        if fx == m.top_idx() && x != l.top_idx() {
            one.push(
                "boundary-one",
                &[l.element(x)],
                format!(
                    "r({}) = {} (top of {}) but {} is not the top of {}",
                    l.element(x),
                    m.top(),
                    m.name(),
                    l.element(x),
                    l.name()
                ),
            );
        }
        if x == l.top_idx() && fx != m.top_idx() {
            one.push(
                "boundary-one",
                &[l.element(x)],
                format!(
                    "r maps the top {} to {}, not to the top of {}",
                    l.element(x),
                    m.element(fx),
                    m.name()
                ),
            );
        }
    }
    BoundaryReport { zero, one }
}

/// Meet/join preservation of a single map; an optional strictness check,
/// never a requirement of retraction pairs. Rules: `meet-homomorphism`,
/// `join-homomorphism`.
pub fn check_lattice_homomorphism(f: &MapTable) -> ValidationReport {
    let (dom, cod) = (f.domain(), f.codomain());
    let mut report = ValidationReport::ok();
    for i in 0..dom.len() {
        for j in 0..dom.len() {
            let of_meet = f.apply_idx(dom.meet_idx(i, j));
            let meet_of = cod.meet_idx(f.apply_idx(i), f.apply_idx(j));
            if of_meet != meet_of {
                report.push(
                    "meet-homomorphism",
                    &[dom.element(i), dom.element(j)],
                    format!(
                        "{n}({x} meet {y}) = {a} but {n}({x}) meet {n}({y}) = {b}",
                        n = f.name(),
                        x = dom.element(i),
                        y = dom.element(j),
                        a = cod.element(of_meet),
                        b = cod.element(meet_of),
                    ),
                );
            }
            let of_join = f.apply_idx(dom.join_idx(i, j));
            let join_of = cod.join_idx(f.apply_idx(i), f.apply_idx(j));
            if of_join != join_of {
                report.push(
                    "join-homomorphism",
                    &[dom.element(i), dom.element(j)],
                    format!(
                        "{n}({x} join {y}) = {a} but {n}({x}) join {n}({y}) = {b}",
                        n = f.name(),
                        x = dom.element(i),
                        y = dom.element(j),
                        a = cod.element(of_join),
                        b = cod.element(join_of),
                    ),
                );
            }
        }
    }
    report
}

/// A validated retraction pair. Shapes and `r(s(m)) = m` are construction
/// invariants; the boundary conditions are recorded as status flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionPair {
    r: MonotoneMap,
    s: MonotoneMap,
    boundary_zero_ok: bool,
    boundary_one_ok: bool,
}

impl RetractionPair {
    pub fn new(r: MonotoneMap, s: MonotoneMap) -> Result<Self, MapError> {
        let report = check_retraction_pair(r.table(), s.table())?;
        if !report.is_ok() {
            return Err(MapError::NotRetraction(report));
        }
        let boundary = check_boundary_conditions(r.table());
        Ok(RetractionPair {
            r,
            s,
            boundary_zero_ok: boundary.zero.is_ok(),
            boundary_one_ok: boundary.one.is_ok(),
        })
    }

    pub fn r(&self) -> &MonotoneMap {
        &self.r
    }

    pub fn s(&self) -> &MonotoneMap {
        &self.s
    }

    /// The big lattice L (domain of r).
    pub fn big(&self) -> &Arc<FiniteBoundedLattice> {
        self.r.domain()
    }

    /// The small lattice M (domain of s).
    pub fn small(&self) -> &Arc<FiniteBoundedLattice> {
        self.s.domain()
    }

    pub fn boundary_zero_ok(&self) -> bool {
        self.boundary_zero_ok
    }

    pub fn boundary_one_ok(&self) -> bool {
        self.boundary_one_ok
    }

    pub fn boundary_ok(&self) -> bool {
        self.boundary_zero_ok && self.boundary_one_ok
    }
}

/// Enumerate every retraction pair between `l` and `m`: each order embedding
/// `s: M -> L` paired with each monotone `r: L -> M` satisfying
/// `r(s(m)) = m`. With `require_boundary`, only pairs satisfying both
/// boundary conditions are kept.
///
/// The search assigns images in declaration order and prunes on the embedding
/// and monotonicity constraints incrementally; `r(s(m)) = m` fixes r on the
/// image of s. Output is sorted by (s table, r table), pairs named
/// `s{i}`/`r{i}` after sorting, so the result is deterministic.
pub fn enumerate_retraction_pairs(
    l: &Arc<FiniteBoundedLattice>,
    m: &Arc<FiniteBoundedLattice>,
    require_boundary: bool,
    max_size: usize,
) -> Result<Vec<RetractionPair>, MapError> {
    for lat in [l, m] {
        if lat.len() > max_size {
            return Err(MapError::SizeLimitExceeded {
                what: "retraction-pair enumeration",
                requested: lat.len(),
                min: 1,
                max: max_size,
            });
        }
    }

    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut s_images = vec![usize::MAX; m.len()];
    let mut used = vec![false; l.len()];
    embed(l, m, 0, &mut s_images, &mut used, &mut |s_now| {
        collect_retractions(l, m, s_now, require_boundary, &mut found);
    });

    found.sort_unstable();
    let mut out = Vec::with_capacity(found.len());
    for (i, (s_img, r_img)) in found.into_iter().enumerate() {
        let s_table = MapTable::from_images(
            &format!("s{i}"),
            Arc::clone(m),
            Arc::clone(l),
            s_img,
        )
        .expect("enumerated s is total");
        let r_table = MapTable::from_images(
            &format!("r{i}"),
            Arc::clone(l),
            Arc::clone(m),
            r_img,
        )
        .expect("enumerated r is total");
        let pair = RetractionPair::new(
            MonotoneMap::new(r_table).expect("enumerated r is monotone"),
            MonotoneMap::new(s_table).expect("enumerated s is monotone"),
        )
        .expect("enumerated pair satisfies r(s(m)) = m");
        debug_assert!(!require_boundary || pair.boundary_ok());
        out.push(pair);
    }
    Ok(out)
}

/// Backtracking over order embeddings of `m` into `l`: image assignments are
/// injective and must reflect the order in both directions against every
/// already-assigned element.
fn embed(
    l: &FiniteBoundedLattice,
    m: &FiniteBoundedLattice,
    k: usize,
    s_images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    emit: &mut impl FnMut(&[usize]),
) {
    if k == m.len() {
        emit(s_images);
        return;
    }
    'candidates: for cand in 0..l.len() {
        if used[cand] {
            continue;
        }
        for (j, &sj) in s_images.iter().enumerate().take(k) {
            if m.leq_idx(j, k) != l.leq_idx(sj, cand) || m.leq_idx(k, j) != l.leq_idx(cand, sj) {
                continue 'candidates;
            }
        }
        s_images[k] = cand;
        used[cand] = true;
        embed(l, m, k + 1, s_images, used, emit);
        used[cand] = false;
    }
}

/// For a fixed embedding, enumerate the monotone `r: L -> M` with
/// `r(s(m)) = m`, pruning non-monotone prefixes and (optionally) boundary
/// violations.
fn collect_retractions(
    l: &FiniteBoundedLattice,
    m: &FiniteBoundedLattice,
    s_images: &[usize],
    require_boundary: bool,
    found: &mut Vec<(Vec<usize>, Vec<usize>)>,
) {
    let mut forced: Vec<Option<usize>> = vec![None; l.len()];
    for (j, &sx) in s_images.iter().enumerate() {
        forced[sx] = Some(j);
    }
    let mut r_images = vec![usize::MAX; l.len()];
    descend(l, m, 0, &forced, require_boundary, &mut r_images, &mut |r| {
        found.push((s_images.to_vec(), r.to_vec()));
    });
}

fn descend(
    l: &FiniteBoundedLattice,
    m: &FiniteBoundedLattice,
    x: usize,
    forced: &[Option<usize>],
    require_boundary: bool,
    r_images: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if x == l.len() {
        emit(r_images);
        return;
    }
    let candidates: Vec<usize> = match forced[x] {
        Some(v) => vec![v],
        None => (0..m.len()).collect(),
    };
    'candidates: for c in candidates {
        if require_boundary {
            if (c == m.bottom_idx()) != (x == l.bottom_idx()) {
                continue;
            }
            if (c == m.top_idx()) != (x == l.top_idx()) {
                continue;
            }
        }
        for (y, &ry) in r_images.iter().enumerate().take(x) {
            if (l.leq_idx(y, x) && !m.leq_idx(ry, c)) || (l.leq_idx(x, y) && !m.leq_idx(c, ry)) {
                continue 'candidates;
            }
        }
        r_images[x] = c;
        descend(l, m, x + 1, forced, require_boundary, r_images, emit);
    }
    r_images[x] = usize::MAX;
}
