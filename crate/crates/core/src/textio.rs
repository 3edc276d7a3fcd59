//! Line-oriented text formats for lattices, maps, and operator tables, plus
//! a workspace that resolves cross-references by name.
//!
//! Parsing is strict: directives appear in a fixed order, every row has a
//! fixed shape, and anything after `end` is an error. `#` starts a comment
//! that runs to the end of the line; blank lines are skipped. All syntax
//! errors carry the 1-based physical line number. Serialization is
//! canonical — covers in stored order, map rows in domain declaration order,
//! operator rows row-major — so `parse . serialize` is the identity and
//! `serialize . parse` is the identity on canonical text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{build_lattice, is_name, FiniteBoundedLattice, LatticeError};
use crate::maps::{MapError, MapTable};
use crate::operators::{OperatorError, OperatorTable};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown reference {token:?}")]
    UnknownReference { line: usize, token: String },
    #[error("line {line}: duplicate entry for {token}")]
    DuplicateEntry { line: usize, token: String },
    #[error("incomplete table: no value for {0}")]
    NotTotal(String),
    #[error("name {0:?} is already taken in this workspace")]
    DuplicateName(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Named collections the parsers resolve references against. Names are
/// unique per kind.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    lattices: BTreeMap<String, Arc<FiniteBoundedLattice>>,
    maps: BTreeMap<String, MapTable>,
    operators: BTreeMap<String, OperatorTable>,
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_lattice(
        &mut self,
        l: FiniteBoundedLattice,
    ) -> Result<Arc<FiniteBoundedLattice>, TextError> {
        if self.lattices.contains_key(l.name()) {
            return Err(TextError::DuplicateName(l.name().to_string()));
        }
        let l = Arc::new(l);
        self.lattices.insert(l.name().to_string(), Arc::clone(&l));
        Ok(l)
    }

    pub fn add_map(&mut self, m: MapTable) -> Result<&MapTable, TextError> {
        if self.maps.contains_key(m.name()) {
            return Err(TextError::DuplicateName(m.name().to_string()));
        }
        let name = m.name().to_string();
        Ok(self.maps.entry(name).or_insert(m))
    }

    pub fn add_operator(&mut self, o: OperatorTable) -> Result<&OperatorTable, TextError> {
        if self.operators.contains_key(o.name()) {
            return Err(TextError::DuplicateName(o.name().to_string()));
        }
        let name = o.name().to_string();
        Ok(self.operators.entry(name).or_insert(o))
    }

    pub fn lattice(&self, name: &str) -> Option<&Arc<FiniteBoundedLattice>> {
        self.lattices.get(name)
    }

    pub fn map(&self, name: &str) -> Option<&MapTable> {
        self.maps.get(name)
    }

    pub fn operator(&self, name: &str) -> Option<&OperatorTable> {
        self.operators.get(name)
    }
}

/// Comment-stripping, blank-skipping token reader over physical lines.
struct Reader<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
    /// Line number of the most recently returned content line.
    last_line: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            lines: text.lines().enumerate(),
            last_line: 0,
        }
    }

    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.lines.by_ref() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            self.last_line = i + 1;
            return Some((i + 1, content.split_whitespace().collect()));
        }
        None
    }

    fn expect_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), TextError> {
        self.next_tokens().ok_or_else(|| TextError::Syntax {
            line: self.last_line + 1,
            message: format!("expected {what}, found end of input"),
        })
    }

    fn expect_end_of_input(&mut self) -> Result<(), TextError> {
        match self.next_tokens() {
            None => Ok(()),
            Some((line, _)) => Err(TextError::Syntax {
                line,
                message: "unexpected content after `end`".to_string(),
            }),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parse one `lattice ... end` block. Structural failures (unknown bounds,
/// order violations, and so on) surface as the wrapped construction errors;
/// shape failures carry line numbers.
pub fn parse_lattice(text: &str) -> Result<FiniteBoundedLattice, TextError> {
    let mut rd = Reader::new(text);

    let (line, header) = rd.expect_tokens("`lattice <name>`")?;
    let name = match header.as_slice() {
        ["lattice", name] => *name,
        _ => return Err(syntax(line, "expected `lattice <name>`")),
    };

    let (line, elems) = rd.expect_tokens("`elements <e1> <e2> ...`")?;
    let elements: Vec<&str> = match elems.as_slice() {
        ["elements", rest @ ..] if !rest.is_empty() => rest.to_vec(),
        _ => return Err(syntax(line, "expected `elements <e1> <e2> ...`")),
    };

    let (line, bot) = rd.expect_tokens("`bottom <element>`")?;
    let bottom = match bot.as_slice() {
        ["bottom", b] => *b,
        _ => return Err(syntax(line, "expected `bottom <element>`")),
    };

    let (line, top_tokens) = rd.expect_tokens("`top <element>`")?;
    let top = match top_tokens.as_slice() {
        ["top", t] => *t,
        _ => return Err(syntax(line, "expected `top <element>`")),
    };

    let (line, covers_header) = rd.expect_tokens("`covers`")?;
    if covers_header.as_slice() != ["covers"] {
        return Err(syntax(line, "expected `covers`"));
    }

    let mut covers: Vec<(&str, &str)> = Vec::new();
    loop {
        let (line, row) = rd.expect_tokens("a cover row `<lo> <hi>` or `end`")?;
        match row.as_slice() {
            ["end"] => break,
            [lo, hi] => covers.push((*lo, *hi)),
            _ => return Err(syntax(line, "expected a cover row `<lo> <hi>` or `end`")),
        }
    }
    rd.expect_end_of_input()?;

    Ok(build_lattice(name, &elements, bottom, top, &covers)?)
}

/// Parse one `map ... end` block, resolving the two lattices by name in the
/// workspace. Monotonicity is a property checked later, not a parse
/// precondition, so the raw table is returned.
pub fn parse_map(text: &str, ws: &Workspace) -> Result<MapTable, TextError> {
    let mut rd = Reader::new(text);

    let (line, header) = rd.expect_tokens("`map <name> from <lattice> to <lattice>`")?;
    let (name, dom_name, cod_name) = match header.as_slice() {
        ["map", name, "from", dom, "to", cod] => (*name, *dom, *cod),
        _ => {
            return Err(syntax(
                line,
                "expected `map <name> from <lattice> to <lattice>`",
            ))
        }
    };
    if !is_name(name) {
        return Err(syntax(line, format!("invalid map name {name:?}")));
    }
    let domain = ws.lattice(dom_name).ok_or_else(|| TextError::UnknownReference {
        line,
        token: dom_name.to_string(),
    })?;
    let codomain = ws.lattice(cod_name).ok_or_else(|| TextError::UnknownReference {
        line,
        token: cod_name.to_string(),
    })?;

    let mut images: Vec<Option<usize>> = vec![None; domain.len()];
    loop {
        let (line, row) = rd.expect_tokens("a row `<x> -> <y>` or `end`")?;
        match row.as_slice() {
            ["end"] => break,
            [x, "->", y] => {
                let xi = domain.index_of(x).map_err(|_| TextError::UnknownReference {
                    line,
                    token: x.to_string(),
                })?;
                let yi = codomain
                    .index_of(y)
                    .map_err(|_| TextError::UnknownReference {
                        line,
                        token: y.to_string(),
                    })?;
                if images[xi].is_some() {
                    return Err(TextError::DuplicateEntry {
                        line,
                        token: x.to_string(),
                    });
                }
                images[xi] = Some(yi);
            }
            _ => return Err(syntax(line, "expected a row `<x> -> <y>` or `end`")),
        }
    }
    rd.expect_end_of_input()?;

    let mut resolved = Vec::with_capacity(domain.len());
    for (i, img) in images.into_iter().enumerate() {
        match img {
            Some(y) => resolved.push(y),
            None => return Err(TextError::NotTotal(domain.element(i).to_string())),
        }
    }
    Ok(MapTable::from_images(
        name,
        Arc::clone(domain),
        Arc::clone(codomain),
        resolved,
    )?)
}

/// Parse one `operator ... end` block, resolving the lattice by name in the
/// workspace. All `n * n` argument pairs must appear exactly once.
pub fn parse_operator(text: &str, ws: &Workspace) -> Result<OperatorTable, TextError> {
    let mut rd = Reader::new(text);

    let (line, header) = rd.expect_tokens("`operator <name> on <lattice>`")?;
    let (name, lat_name) = match header.as_slice() {
        ["operator", name, "on", lat] => (*name, *lat),
        _ => return Err(syntax(line, "expected `operator <name> on <lattice>`")),
    };
    if !is_name(name) {
        return Err(syntax(line, format!("invalid operator name {name:?}")));
    }
    let lattice = ws.lattice(lat_name).ok_or_else(|| TextError::UnknownReference {
        line,
        token: lat_name.to_string(),
    })?;
    let n = lattice.len();

    let mut grid: Vec<Option<usize>> = vec![None; n * n];
    loop {
        let (line, row) = rd.expect_tokens("a row `<x> <y> -> <z>` or `end`")?;
        match row.as_slice() {
            ["end"] => break,
            [x, y, "->", z] => {
                let resolve = |e: &str| {
                    lattice.index_of(e).map_err(|_| TextError::UnknownReference {
                        line,
                        token: e.to_string(),
                    })
                };
                let (xi, yi, zi) = (resolve(x)?, resolve(y)?, resolve(z)?);
                if grid[xi * n + yi].is_some() {
                    return Err(TextError::DuplicateEntry {
                        line,
                        token: format!("({x}, {y})"),
                    });
                }
                grid[xi * n + yi] = Some(zi);
            }
            _ => return Err(syntax(line, "expected a row `<x> <y> -> <z>` or `end`")),
        }
    }
    rd.expect_end_of_input()?;

    let mut entries = Vec::with_capacity(n * n);
    for (pos, cell) in grid.into_iter().enumerate() {
        match cell {
            Some(z) => entries.push(z),
            None => {
                return Err(TextError::NotTotal(format!(
                    "({}, {})",
                    lattice.element(pos / n),
                    lattice.element(pos % n)
                )))
            }
        }
    }
    Ok(OperatorTable::from_entries(
        name,
        Arc::clone(lattice),
        entries,
    )?)
}

/// Canonical text for a lattice: covers in stored order, one per line.
pub fn serialize_lattice(l: &FiniteBoundedLattice) -> String {
    let mut out = String::new();
    writeln!(out, "lattice {}", l.name()).unwrap();
    writeln!(out, "elements {}", l.elements().join(" ")).unwrap();
    writeln!(out, "bottom {}", l.bottom()).unwrap();
    writeln!(out, "top {}", l.top()).unwrap();
    writeln!(out, "covers").unwrap();
    for &(lo, hi) in l.covers() {
        writeln!(out, "{} {}", l.element(lo), l.element(hi)).unwrap();
    }
    writeln!(out, "end").unwrap();
    out
}

/// Canonical text for a map: one row per domain element, declaration order.
pub fn serialize_map(m: &MapTable) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "map {} from {} to {}",
        m.name(),
        m.domain().name(),
        m.codomain().name()
    )
    .unwrap();
    for (i, &y) in m.images().iter().enumerate() {
        writeln!(out, "{} -> {}", m.domain().element(i), m.codomain().element(y)).unwrap();
    }
    writeln!(out, "end").unwrap();
    out
}

/// Canonical text for an operator: `n * n` rows, row-major.
pub fn serialize_operator(o: &OperatorTable) -> String {
    let l = o.lattice();
    let n = l.len();
    let mut out = String::new();
    writeln!(out, "operator {} on {}", o.name(), l.name()).unwrap();
    for x in 0..n {
        for y in 0..n {
            writeln!(
                out,
                "{} {} -> {}",
                l.element(x),
                l.element(y),
                l.element(o.apply_idx(x, y))
            )
            .unwrap();
        }
    }
    writeln!(out, "end").unwrap();
    out
}
