//! Binary operator tables on a lattice and the two axiom families checked
//! against them.
//!
//! A quasi-overlap is commutative, hits bottom exactly when some argument is
//! bottom, hits top exactly when both arguments are top, and is increasing in
//! the second argument. A quasi-grouping mirrors it: bottom exactly when both
//! arguments are bottom, top exactly when some argument is top. All checks
//! are exhaustive; per failed axiom the report keeps the lexicographically
//! smallest witness (element declaration order), and both directions of each
//! "iff" axiom are labeled in the witness text.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{is_name, FiniteBoundedLattice};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("invalid operator name {0:?}")]
    InvalidName(String),
    #[error("unknown element: {0}")]
    UnknownElement(String),
    #[error("operator table is not total: no value for {0}")]
    NotTotal(String),
    #[error("duplicate entry for {0}")]
    DuplicateEntry(String),
    #[error("{what}: size {requested} out of bounds [{min}, {max}]")]
    SizeLimitExceeded {
        what: &'static str,
        requested: usize,
        min: usize,
        max: usize,
    },
}

/// Which axiom family a table is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    QuasiOverlap,
    QuasiGrouping,
}

impl OperatorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OperatorKind::QuasiOverlap => "quasi-overlap",
            OperatorKind::QuasiGrouping => "quasi-grouping",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The four axioms shared (up to bottom/top duality) by both families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Commutativity,
    /// Value is bottom iff some argument (overlap) / both arguments
    /// (grouping) are bottom.
    ZeroCondition,
    /// Value is top iff both arguments (overlap) / some argument (grouping)
    /// are top.
    OneCondition,
    /// Increasing in the second argument.
    Increasingness,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::Commutativity,
        Axiom::ZeroCondition,
        Axiom::OneCondition,
        Axiom::Increasingness,
    ];

    fn ordinal(self) -> usize {
        match self {
            Axiom::Commutativity => 0,
            Axiom::ZeroCondition => 1,
            Axiom::OneCondition => 2,
            Axiom::Increasingness => 3,
        }
    }

    /// Short code used in reports: QO1..QO4 / QG1..QG4.
    pub fn code(self, kind: OperatorKind) -> &'static str {
        const QO: [&str; 4] = ["QO1", "QO2", "QO3", "QO4"];
        const QG: [&str; 4] = ["QG1", "QG2", "QG3", "QG4"];
        match kind {
            OperatorKind::QuasiOverlap => QO[self.ordinal()],
            OperatorKind::QuasiGrouping => QG[self.ordinal()],
        }
    }
}

/// Counterexample to one axiom: the input tuple, the table values involved,
/// and what was expected of them (with the violated "iff" direction named).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpWitness {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub expected: String,
}

impl fmt::Display for OpWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}): {}", self.inputs.join(", "), self.expected)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub pass: bool,
    pub witness: Option<OpWitness>,
}

/// Outcome of checking one table against one axiom family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub kind: OperatorKind,
    /// One verdict per axiom, in `Axiom::ALL` order.
    pub verdicts: Vec<AxiomVerdict>,
    /// Derived note: monotonicity in the first argument, computed
    /// exhaustively whenever commutativity holds (it then must agree with
    /// the second-argument verdict), `None` otherwise.
    pub first_argument_monotone: Option<bool>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict(&self, axiom: Axiom) -> &AxiomVerdict {
        &self.verdicts[axiom.ordinal()]
    }

    pub fn failed(&self) -> impl Iterator<Item = &AxiomVerdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }
}

/// A total binary operation on a lattice, stored row-major by declaration
/// order: `entries[x * n + y]` is the index of `op(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTable {
    name: String,
    lattice: Arc<FiniteBoundedLattice>,
    entries: Vec<usize>,
}

impl OperatorTable {
    /// Build from `(x, y, value)` cells; all `n*n` pairs must appear exactly
    /// once. The first missing pair (row-major) is named in `NotTotal`.
    pub fn new(
        name: &str,
        lattice: Arc<FiniteBoundedLattice>,
        cells: &[(&str, &str, &str)],
    ) -> Result<Self, OperatorError> {
        if !is_name(name) {
            return Err(OperatorError::InvalidName(name.to_string()));
        }
        let n = lattice.len();
        let resolve = |e: &str| {
            lattice
                .index_of(e)
                .map_err(|_| OperatorError::UnknownElement(e.to_string()))
        };
        let mut grid: Vec<Option<usize>> = vec![None; n * n];
        for (x, y, z) in cells {
            let (xi, yi, zi) = (resolve(x)?, resolve(y)?, resolve(z)?);
            if grid[xi * n + yi].is_some() {
                return Err(OperatorError::DuplicateEntry(format!("({x}, {y})")));
            }
            grid[xi * n + yi] = Some(zi);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (pos, cell) in grid.into_iter().enumerate() {
            match cell {
                Some(z) => entries.push(z),
                None => {
                    return Err(OperatorError::NotTotal(format!(
                        "({}, {})",
                        lattice.element(pos / n),
                        lattice.element(pos % n)
                    )))
                }
            }
        }
        Ok(OperatorTable {
            name: name.to_string(),
            lattice,
            entries,
        })
    }

    /// Build directly from a row-major index table.
    pub fn from_entries(
        name: &str,
        lattice: Arc<FiniteBoundedLattice>,
        entries: Vec<usize>,
    ) -> Result<Self, OperatorError> {
        if !is_name(name) {
            return Err(OperatorError::InvalidName(name.to_string()));
        }
        let n = lattice.len();
        if entries.len() != n * n {
            return Err(OperatorError::NotTotal(format!(
                "{} entries for a {n} x {n} table",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&z| z >= n) {
            return Err(OperatorError::UnknownElement(format!("index {bad}")));
        }
        Ok(OperatorTable {
            name: name.to_string(),
            lattice,
            entries,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Arc<FiniteBoundedLattice> {
        &self.lattice
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn apply_idx(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.lattice.len() + j]
    }

    pub fn apply(&self, x: &str, y: &str) -> Result<&str, OperatorError> {
        let xi = self
            .lattice
            .index_of(x)
            .map_err(|_| OperatorError::UnknownElement(x.to_string()))?;
        let yi = self
            .lattice
            .index_of(y)
            .map_err(|_| OperatorError::UnknownElement(y.to_string()))?;
        Ok(self.lattice.element(self.apply_idx(xi, yi)))
    }

    pub fn renamed(mut self, name: &str) -> Result<Self, OperatorError> {
        if !is_name(name) {
            return Err(OperatorError::InvalidName(name.to_string()));
        }
        self.name = name.to_string();
        Ok(self)
    }
}

/// The cached meet table as an operator named `meet`.
pub fn canonical_meet(l: &Arc<FiniteBoundedLattice>) -> OperatorTable {
    table_of(l, "meet", |i, j| l.meet_idx(i, j))
}

/// The cached join table as an operator named `join`.
pub fn canonical_join(l: &Arc<FiniteBoundedLattice>) -> OperatorTable {
    table_of(l, "join", |i, j| l.join_idx(i, j))
}

fn table_of(
    l: &Arc<FiniteBoundedLattice>,
    name: &str,
    f: impl Fn(usize, usize) -> usize,
) -> OperatorTable {
    let n = l.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(f(i, j));
        }
    }
    OperatorTable::from_entries(name, Arc::clone(l), entries).expect("canonical table is total")
}

/// Check a table against the quasi-overlap axioms.
pub fn check_quasi_overlap(op: &OperatorTable) -> AxiomReport {
    check_axioms(op, OperatorKind::QuasiOverlap)
}

/// Check a table against the quasi-grouping axioms.
pub fn check_quasi_grouping(op: &OperatorTable) -> AxiomReport {
    check_axioms(op, OperatorKind::QuasiGrouping)
}

/// Exhaustive checker shared by both families; `kind` selects which bound
/// plays which role in the zero/one conditions.
fn check_axioms(op: &OperatorTable, kind: OperatorKind) -> AxiomReport {
    let l = op.lattice();
    let n = l.len();
    let (bot, top) = (l.bottom_idx(), l.top_idx());
    let name = |i: usize| l.element(i).to_string();

    let mut commutativity: Option<OpWitness> = None;
    'comm: for i in 0..n {
        for j in 0..n {
            if op.apply_idx(i, j) != op.apply_idx(j, i) {
                commutativity = Some(OpWitness {
                    inputs: vec![name(i), name(j)],
                    outputs: vec![name(op.apply_idx(i, j)), name(op.apply_idx(j, i))],
                    expected: format!(
                        "{op}({x}, {y}) = {u} differs from {op}({y}, {x}) = {v}",
                        op = op.name(),
                        x = name(i),
                        y = name(j),
                        u = name(op.apply_idx(i, j)),
                        v = name(op.apply_idx(j, i)),
                    ),
                });
                break 'comm;
            }
        }
    }

    // Zero condition. Overlap: value = bottom iff some argument is bottom.
    // Grouping: value = bottom iff both arguments are bottom.
    let mut zero: Option<OpWitness> = None;
    'zero: for i in 0..n {
        for j in 0..n {
            let v = op.apply_idx(i, j);
            let args_at_bottom = match kind {
                OperatorKind::QuasiOverlap => i == bot || j == bot,
                OperatorKind::QuasiGrouping => i == bot && j == bot,
            };
            if (v == bot) != args_at_bottom {
                let expected = if v == bot {
                    format!(
                        "{op}({x}, {y}) = {b} (the bottom) although {req} \
                         [value-to-arguments direction]",
                        op = op.name(),
                        x = name(i),
                        y = name(j),
                        b = name(bot),
                        req = match kind {
                            OperatorKind::QuasiOverlap => "neither argument is the bottom",
                            OperatorKind::QuasiGrouping => "not both arguments are the bottom",
                        },
                    )
                } else {
                    format!(
                        "{req} but {op}({x}, {y}) = {v}, not the bottom {b} \
                         [arguments-to-value direction]",
                        op = op.name(),
                        x = name(i),
                        y = name(j),
                        v = name(v),
                        b = name(bot),
                        req = match kind {
                            OperatorKind::QuasiOverlap => "an argument is the bottom",
                            OperatorKind::QuasiGrouping => "both arguments are the bottom",
                        },
                    )
                };
                zero = Some(OpWitness {
                    inputs: vec![name(i), name(j)],
                    outputs: vec![name(v)],
                    expected,
                });
                break 'zero;
            }
        }
    }

    // One condition. Overlap: value = top iff both arguments are top.
    // Grouping: value = top iff some argument is top.
    let mut one: Option<OpWitness> = None;
    'one: for i in 0..n {
        for j in 0..n {
            let v = op.apply_idx(i, j);
            let args_at_top = match kind {
                OperatorKind::QuasiOverlap => i == top && j == top,
                OperatorKind::QuasiGrouping => i == top || j == top,
            };
            if (v == top) != args_at_top {
                let expected = if v == top {
                    format!(
                        "{op}({x}, {y}) = {t} (the top) although {req} \
                         [value-to-arguments direction]",
                        op = op.name(),
                        x = name(i),
                        y = name(j),
                        t = name(top),
                        req = match kind {
                            OperatorKind::QuasiOverlap => "not both arguments are the top",
                            OperatorKind::QuasiGrouping => "neither argument is the top",
                        },
                    )
                } else {
                    format!(
                        "{req} but {op}({x}, {y}) = {v}, not the top {t} \
                         [arguments-to-value direction]",
                        op = op.name(),
                        x = name(i),
                        y = name(j),
                        v = name(v),
                        t = name(top),
                        req = match kind {
                            OperatorKind::QuasiOverlap => "both arguments are the top",
                            OperatorKind::QuasiGrouping => "an argument is the top",
                        },
                    )
                };
                one = Some(OpWitness {
                    inputs: vec![name(i), name(j)],
                    outputs: vec![name(v)],
                    expected,
                });
                break 'one;
            }
        }
    }

    // Increasingness in the second argument, over all triples.
    let mut increasing: Option<OpWitness> = None;
    'inc: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if l.leq_idx(y, z) {
                    let (u, v) = (op.apply_idx(x, y), op.apply_idx(x, z));
                    if !l.leq_idx(u, v) {
                        increasing = Some(OpWitness {
                            inputs: vec![name(x), name(y), name(z)],
                            outputs: vec![name(u), name(v)],
                            expected: format!(
                                "{y} <= {z} but {op}({x}, {y}) = {u} is not <= {op}({x}, {z}) = {v}",
                                op = op.name(),
                                x = name(x),
                                y = name(y),
                                z = name(z),
                                u = name(u),
                                v = name(v),
                            ),
                        });
                        break 'inc;
                    }
                }
            }
        }
    }

    let first_argument_monotone = if commutativity.is_none() {
        let mut ok = true;
        'first: for y in 0..n {
            for x in 0..n {
                for z in 0..n {
                    if l.leq_idx(x, z) && !l.leq_idx(op.apply_idx(x, y), op.apply_idx(z, y)) {
                        ok = false;
                        break 'first;
                    }
                }
            }
        }
        Some(ok)
    } else {
        None
    };

    let verdict = |axiom: Axiom, witness: Option<OpWitness>| AxiomVerdict {
        axiom,
        pass: witness.is_none(),
        witness,
    };
    AxiomReport {
        kind,
        verdicts: vec![
            verdict(Axiom::Commutativity, commutativity),
            verdict(Axiom::ZeroCondition, zero),
            verdict(Axiom::OneCondition, one),
            verdict(Axiom::Increasingness, increasing),
        ],
        first_argument_monotone,
    }
}

/// Enumerate every quasi-overlap table on `l`, sorted by row-major table
/// order and named `qo{i}`. Hard cap `|L| <= 5`.
pub fn enumerate_quasi_overlaps(
    l: &Arc<FiniteBoundedLattice>,
) -> Result<Vec<OperatorTable>, OperatorError> {
    enumerate_tables(l, OperatorKind::QuasiOverlap)
}

/// Enumerate every quasi-grouping table on `l`, sorted by row-major table
/// order and named `qg{i}`. Hard cap `|L| <= 5`.
pub fn enumerate_quasi_groupings(
    l: &Arc<FiniteBoundedLattice>,
) -> Result<Vec<OperatorTable>, OperatorError> {
    enumerate_tables(l, OperatorKind::QuasiGrouping)
}

/// Backtracking search over the cells not forced by the zero/one conditions.
///
/// The pruning is sound and lossless: both "if" directions force the
/// bottom-argument row/column (overlap) or top-argument row/column
/// (grouping) plus the far corner, and both "only if" directions restrict
/// every remaining cell to non-extremal values. Commutativity is built in by
/// filling unordered pairs, monotonicity is checked incrementally, and every
/// candidate still runs through the full checker before being emitted.
fn enumerate_tables(
    l: &Arc<FiniteBoundedLattice>,
    kind: OperatorKind,
) -> Result<Vec<OperatorTable>, OperatorError> {
    let n = l.len();
    if n > 5 {
        return Err(OperatorError::SizeLimitExceeded {
            what: "operator enumeration",
            requested: n,
            min: 1,
            max: 5,
        });
    }
    let (bot, top) = (l.bottom_idx(), l.top_idx());
    let mut grid: Vec<Option<usize>> = vec![None; n * n];
    // Forced cells per the arguments-to-value directions.
    match kind {
        OperatorKind::QuasiOverlap => {
            for x in 0..n {
                grid[bot * n + x] = Some(bot);
                grid[x * n + bot] = Some(bot);
            }
            grid[top * n + top] = Some(top);
        }
        OperatorKind::QuasiGrouping => {
            for x in 0..n {
                grid[top * n + x] = Some(top);
                grid[x * n + top] = Some(top);
            }
            grid[bot * n + bot] = Some(bot);
        }
    }
    let mut cells = Vec::new();
    for i in 0..n {
        for j in i..n {
            if grid[i * n + j].is_none() {
                cells.push((i, j));
            }
        }
    }
    let values: Vec<usize> = (0..n).filter(|&v| v != bot && v != top).collect();

    let mut out = Vec::new();
    fill(l, kind, &cells, &values, 0, &mut grid, &mut out);
    out.sort_unstable();

    let mut tables = Vec::with_capacity(out.len());
    let prefix = match kind {
        OperatorKind::QuasiOverlap => "qo",
        OperatorKind::QuasiGrouping => "qg",
    };
    for (i, entries) in out.into_iter().enumerate() {
        tables.push(OperatorTable::from_entries(
            &format!("{prefix}{i}"),
            Arc::clone(l),
            entries,
        )?);
    }
    Ok(tables)
}

fn fill(
    l: &Arc<FiniteBoundedLattice>,
    kind: OperatorKind,
    cells: &[(usize, usize)],
    values: &[usize],
    next: usize,
    grid: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = l.len();
    if next == cells.len() {
        let entries: Vec<usize> = grid.iter().map(|c| c.expect("grid is full")).collect();
        let table = OperatorTable::from_entries("candidate", Arc::clone(l), entries.clone())
            .expect("grid is a total table");
        if check_axioms(&table, kind).all_pass() {
            out.push(entries);
        }
        return;
    }
    let (i, j) = cells[next];
    'values: for &v in values {
        // Second-argument monotonicity against every already-known entry of
        // the two rows this symmetric assignment touches.
        for (a, b) in [(i, j), (j, i)] {
            for y in 0..n {
                if let Some(w) = grid[a * n + y] {
                    if (l.leq_idx(y, b) && !l.leq_idx(w, v))
                        || (l.leq_idx(b, y) && !l.leq_idx(v, w))
                    {
                        continue 'values;
                    }
                }
            }
            if i == j {
                break; // one row to check
            }
        }
        grid[i * n + j] = Some(v);
        grid[j * n + i] = Some(v);
        fill(l, kind, cells, values, next + 1, grid, out);
        grid[i * n + j] = None;
        grid[j * n + i] = None;
    }
}
