//! `overlat` — check lattice files, test operator tables against the
//! quasi-overlap / quasi-grouping axioms, validate retraction pairs, lift
//! operators along them, and enumerate all small instances.
//!
//! Exit codes partition outcomes: 0 every check passed, 1 a checked
//! property failed (counterexamples printed one per line, deterministic),
//! 2 usage or input error (message on stderr). `--json` replaces the human
//! lines with one JSON object carrying the same verdicts and witnesses.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use overlat_core::fixtures::{
    make_boolean, make_chain, make_diamond_m3, make_pentagon_n5, make_product,
};
use overlat_core::{
    check_boundary_conditions, check_lattice_homomorphism, check_quasi_grouping,
    check_quasi_overlap, check_retraction_pair, enumerate_quasi_groupings,
    enumerate_quasi_overlaps, enumerate_retraction_pairs, extend_grouping, extend_overlap,
    parse_lattice, parse_map, parse_operator, serialize_lattice, serialize_operator,
    verify_theorem, FiniteBoundedLattice, LatticeError, MapTable, MonotoneMap, OperatorKind,
    OperatorTable, RetractionPair, TextError, Workspace, DEFAULT_MAX_ELEMENTS,
};

use report::Report;

#[derive(Parser)]
#[command(
    name = "overlat",
    version,
    about = "Check, lift, and enumerate binary operators on finite bounded lattices"
)]
struct Cli {
    /// Emit one JSON object instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,

    /// Largest lattice the enumerators and generators will accept.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_size: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice file: partial order, bounds, meets and joins.
    CheckLattice { file: PathBuf },

    /// Check an operator table against one axiom family.
    CheckOperator {
        /// Lattice file the table lives on.
        #[arg(long)]
        lattice: PathBuf,
        /// Operator file to check.
        #[arg(long)]
        operator: PathBuf,
        #[arg(long)]
        kind: Kind,
    },

    /// Check that r and s form a monotone retraction pair.
    CheckRetraction {
        /// Larger lattice file (domain of r).
        #[arg(long)]
        big: PathBuf,
        /// Smaller lattice file (codomain of r).
        #[arg(long)]
        small: PathBuf,
        /// Map file for r: big -> small.
        #[arg(long)]
        r: PathBuf,
        /// Map file for s: small -> big.
        #[arg(long)]
        s: PathBuf,
        /// Also require r to hit bottom/top only at bottom/top.
        #[arg(long)]
        boundary: bool,
        /// Also check that r preserves meets and joins.
        #[arg(long)]
        strict_homomorphism: bool,
    },

    /// Lift an operator from the small lattice to the big one and write it.
    Extend {
        #[arg(long)]
        big: PathBuf,
        #[arg(long)]
        small: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        s: PathBuf,
        /// Operator file on the small lattice.
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        kind: Kind,
        /// Output file for the lifted operator.
        #[arg(short, long)]
        out: PathBuf,
    },

    /// Run the full pipeline: preconditions, lift, axioms on the lift,
    /// restriction identity.
    VerifyTheorem {
        #[arg(long)]
        big: PathBuf,
        #[arg(long)]
        small: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        kind: Kind,
    },

    /// List every retraction pair between two lattice files.
    EnumerateRetractions {
        #[arg(long)]
        big: PathBuf,
        #[arg(long)]
        small: PathBuf,
        /// Keep only pairs whose r respects both boundaries.
        #[arg(long)]
        boundary: bool,
    },

    /// List every table on a lattice satisfying one axiom family.
    EnumerateOperators {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        kind: Kind,
    },

    /// Print a standard lattice in canonical file form.
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
}

#[derive(Subcommand)]
enum GenWhat {
    /// Total order with n elements e0 < e1 < ... .
    Chain { n: usize },
    /// Boolean lattice with k atoms (bitstring elements).
    Boolean { k: usize },
    /// The five-element diamond M3.
    Diamond,
    /// The five-element pentagon N5.
    Pentagon,
    /// Component-wise product of two lattice files.
    Product { a: PathBuf, b: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    QuasiOverlap,
    QuasiGrouping,
}

impl Kind {
    fn as_str(self) -> &'static str {
        OperatorKind::from(self).as_str()
    }
}

impl From<Kind> for OperatorKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::QuasiOverlap => OperatorKind::QuasiOverlap,
            Kind::QuasiGrouping => OperatorKind::QuasiGrouping,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let json = cli.json;
    let max_size = cli.max_size;
    match cli.command {
        Command::CheckLattice { file } => check_lattice(&file, json),
        Command::CheckOperator {
            lattice,
            operator,
            kind,
        } => check_operator(&lattice, &operator, kind, json),
        Command::CheckRetraction {
            big,
            small,
            r,
            s,
            boundary,
            strict_homomorphism,
        } => check_retraction(&big, &small, &r, &s, boundary, strict_homomorphism, json),
        Command::Extend {
            big,
            small,
            r,
            s,
            op,
            kind,
            out,
        } => extend(&big, &small, &r, &s, &op, kind, &out, json),
        Command::VerifyTheorem {
            big,
            small,
            r,
            s,
            op,
            kind,
        } => verify(&big, &small, &r, &s, &op, kind, json),
        Command::EnumerateRetractions {
            big,
            small,
            boundary,
        } => enumerate_retractions(&big, &small, boundary, json, max_size),
        Command::EnumerateOperators { lattice, kind } => {
            enumerate_operators(&lattice, kind, json, max_size)
        }
        Command::Gen { what } => gen(what, json, max_size),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_lattice(path: &Path) -> Result<FiniteBoundedLattice> {
    parse_lattice(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_lattice_into(ws: &mut Workspace, path: &Path) -> Result<Arc<FiniteBoundedLattice>> {
    let l = load_lattice(path)?;
    ws.add_lattice(l)
        .with_context(|| format!("in {}", path.display()))
}

fn load_map(ws: &Workspace, path: &Path) -> Result<MapTable> {
    parse_map(&read(path)?, ws).with_context(|| format!("in {}", path.display()))
}

fn load_operator(ws: &Workspace, path: &Path) -> Result<OperatorTable> {
    parse_operator(&read(path)?, ws).with_context(|| format!("in {}", path.display()))
}

fn inputs(parts: &[&dyn std::fmt::Display]) -> Vec<String> {
    parts.iter().map(|p| p.to_string()).collect()
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

/// Structural order failures exit 1 with their witnesses; malformed files
/// exit 2.
fn check_lattice(file: &Path, json: bool) -> Result<i32> {
    let mut rep = Report::new("check-lattice", vec![path_str(file)]);
    let text = read(file)?;
    match parse_lattice(&text) {
        Ok(l) => {
            for rule in ["partial-order", "bounded", "unique-meet-join"] {
                rep.pass(rule);
            }
            rep.result(format!("lattice {} with {} elements", l.name(), l.len()));
            Ok(rep.finish(json))
        }
        Err(TextError::Lattice(e)) => {
            let empty = overlat_core::ValidationReport::ok();
            match &e {
                LatticeError::NotAPartialOrder(v) => rep.rules(&["partial-order"], v),
                LatticeError::NotBounded(v) => {
                    rep.rules(&["partial-order"], &empty);
                    rep.rules(&["bounded"], v);
                }
                LatticeError::NotALattice(v) => {
                    rep.rules(&["partial-order", "bounded"], &empty);
                    rep.rules(&["unique-meet-join"], v);
                }
                other => bail!("in {}: {other}", file.display()),
            }
            Ok(rep.finish(json))
        }
        Err(other) => Err(other).with_context(|| format!("in {}", file.display())),
    }
}

fn check_operator(lattice: &Path, operator: &Path, kind: Kind, json: bool) -> Result<i32> {
    let mut ws = Workspace::new();
    load_lattice_into(&mut ws, lattice)?;
    let op = load_operator(&ws, operator)?;
    let axioms = match kind.into() {
        OperatorKind::QuasiOverlap => check_quasi_overlap(&op),
        OperatorKind::QuasiGrouping => check_quasi_grouping(&op),
    };
    let mut rep = Report::new(
        "check-operator",
        inputs(&[&path_str(lattice), &path_str(operator), &kind.as_str()]),
    );
    rep.axioms("", &axioms);
    if let Some(note) = axioms.first_argument_monotone {
        rep.result(format!("first-argument-monotone {note}"));
    }
    Ok(rep.finish(json))
}

/// Load big/small/r/s and check the maps point the way the flags claim.
fn load_pair_tables(
    big: &Path,
    small: &Path,
    r: &Path,
    s: &Path,
) -> Result<(MapTable, MapTable)> {
    let mut ws = Workspace::new();
    let big_l = load_lattice_into(&mut ws, big)?;
    let small_l = load_lattice_into(&mut ws, small)?;
    let r_map = load_map(&ws, r)?;
    let s_map = load_map(&ws, s)?;
    if r_map.domain().name() != big_l.name() || r_map.codomain().name() != small_l.name() {
        bail!(
            "map {} goes from {} to {}, expected {} to {}",
            r_map.name(),
            r_map.domain().name(),
            r_map.codomain().name(),
            big_l.name(),
            small_l.name(),
        );
    }
    if s_map.domain().name() != small_l.name() || s_map.codomain().name() != big_l.name() {
        bail!(
            "map {} goes from {} to {}, expected {} to {}",
            s_map.name(),
            s_map.domain().name(),
            s_map.codomain().name(),
            small_l.name(),
            big_l.name(),
        );
    }
    Ok((r_map, s_map))
}

const RETRACTION_RULES: [&str; 3] = ["r-monotone", "s-monotone", "retraction-identity"];

#[allow(clippy::too_many_arguments)]
fn check_retraction(
    big: &Path,
    small: &Path,
    r: &Path,
    s: &Path,
    boundary: bool,
    strict_homomorphism: bool,
    json: bool,
) -> Result<i32> {
    let (r_map, s_map) = load_pair_tables(big, small, r, s)?;
    let mut rep = Report::new(
        "check-retraction",
        inputs(&[&path_str(big), &path_str(small), &path_str(r), &path_str(s)]),
    );
    let laws = check_retraction_pair(&r_map, &s_map).expect("lattice wiring checked at load");
    rep.rules(&RETRACTION_RULES, &laws);
    if boundary {
        let b = check_boundary_conditions(&r_map);
        rep.rules(&["boundary-zero"], &b.zero);
        rep.rules(&["boundary-one"], &b.one);
    }
    if strict_homomorphism {
        let h = check_lattice_homomorphism(&r_map);
        rep.rules(&["meet-homomorphism", "join-homomorphism"], &h);
    }
    Ok(rep.finish(json))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    big: &Path,
    small: &Path,
    r: &Path,
    s: &Path,
    op: &Path,
    kind: Kind,
    out: &Path,
    json: bool,
) -> Result<i32> {
    let (r_map, s_map) = load_pair_tables(big, small, r, s)?;
    let mut ws = Workspace::new();
    ws.add_lattice((**r_map.codomain()).clone())?;
    let source = load_operator(&ws, op)?;
    let mut rep = Report::new(
        "extend",
        inputs(&[
            &path_str(big),
            &path_str(small),
            &path_str(r),
            &path_str(s),
            &path_str(op),
            &kind.as_str(),
            &path_str(out),
        ]),
    );
    let laws = check_retraction_pair(&r_map, &s_map).expect("lattice wiring checked at load");
    rep.rules(&RETRACTION_RULES, &laws);
    if !laws.is_ok() {
        return Ok(rep.finish(json));
    }
    let pair = RetractionPair::new(
        MonotoneMap::new(r_map).expect("monotonicity just checked"),
        MonotoneMap::new(s_map).expect("monotonicity just checked"),
    )
    .expect("retraction laws just checked");
    let lifted = match kind.into() {
        OperatorKind::QuasiOverlap => extend_overlap(&pair, &source)?,
        OperatorKind::QuasiGrouping => extend_grouping(&pair, &source)?,
    };
    fs::write(out, serialize_operator(&lifted))
        .with_context(|| format!("cannot write {}", out.display()))?;
    rep.result(format!("wrote {} to {}", lifted.name(), out.display()));
    Ok(rep.finish(json))
}

fn verify(
    big: &Path,
    small: &Path,
    r: &Path,
    s: &Path,
    op: &Path,
    kind: Kind,
    json: bool,
) -> Result<i32> {
    let (r_map, s_map) = load_pair_tables(big, small, r, s)?;
    let mut ws = Workspace::new();
    ws.add_lattice((**r_map.codomain()).clone())?;
    let source = load_operator(&ws, op)?;
    let result = verify_theorem(&r_map, &s_map, &source, kind.into())?;
    let mut rep = Report::new(
        "verify-theorem",
        inputs(&[
            &path_str(big),
            &path_str(small),
            &path_str(r),
            &path_str(s),
            &path_str(op),
            &kind.as_str(),
        ]),
    );
    rep.rules(&RETRACTION_RULES, &result.preconditions.retraction);
    rep.rules(&["boundary-zero"], &result.preconditions.boundary.zero);
    rep.rules(&["boundary-one"], &result.preconditions.boundary.one);
    rep.axioms("source-", &result.preconditions.source_axioms);
    rep.axioms("extension-", &result.axiom_report);
    rep.rules(&["extension-identity"], &result.identity_report);
    rep.result(format!("outcome {}", result.outcome));
    Ok(rep.finish(json))
}

fn enumerate_retractions(
    big: &Path,
    small: &Path,
    boundary: bool,
    json: bool,
    max_size: usize,
) -> Result<i32> {
    let mut ws = Workspace::new();
    let big_l = load_lattice_into(&mut ws, big)?;
    let small_l = load_lattice_into(&mut ws, small)?;
    let pairs = enumerate_retraction_pairs(&big_l, &small_l, boundary, max_size)?;
    let mut rep = Report::new(
        "enumerate-retractions",
        inputs(&[&path_str(big), &path_str(small)]),
    );
    for p in &pairs {
        let s_part: Vec<String> = (0..small_l.len())
            .map(|x| format!("{}->{}", small_l.element(x), big_l.element(p.s().apply_idx(x))))
            .collect();
        let r_part: Vec<String> = (0..big_l.len())
            .map(|x| format!("{}->{}", big_l.element(x), small_l.element(p.r().apply_idx(x))))
            .collect();
        rep.result(format!("s: {}  r: {}", s_part.join(" "), r_part.join(" ")));
    }
    rep.result(format!("total {}", pairs.len()));
    Ok(rep.finish(json))
}

fn enumerate_operators(lattice: &Path, kind: Kind, json: bool, max_size: usize) -> Result<i32> {
    let mut ws = Workspace::new();
    let l = load_lattice_into(&mut ws, lattice)?;
    if l.len() > max_size {
        bail!(
            "operator enumeration: size {} out of bounds [1, {max_size}]",
            l.len()
        );
    }
    let tables = match kind.into() {
        OperatorKind::QuasiOverlap => enumerate_quasi_overlaps(&l)?,
        OperatorKind::QuasiGrouping => enumerate_quasi_groupings(&l)?,
    };
    let mut rep = Report::new(
        "enumerate-operators",
        inputs(&[&path_str(lattice), &kind.as_str()]),
    );
    for t in &tables {
        let row: Vec<&str> = t.entries().iter().map(|&z| l.element(z)).collect();
        rep.result(format!("{}: {}", t.name(), row.join(" ")));
    }
    rep.result(format!("total {}", tables.len()));
    Ok(rep.finish(json))
}

fn gen(what: GenWhat, json: bool, max_size: usize) -> Result<i32> {
    let (l, args) = match what {
        GenWhat::Chain { n } => (make_chain(n)?, vec!["chain".to_string(), n.to_string()]),
        GenWhat::Boolean { k } => (make_boolean(k)?, vec!["boolean".to_string(), k.to_string()]),
        GenWhat::Diamond => (make_diamond_m3(), vec!["diamond".to_string()]),
        GenWhat::Pentagon => (make_pentagon_n5(), vec!["pentagon".to_string()]),
        GenWhat::Product { a, b } => {
            let l = make_product(&load_lattice(&a)?, &load_lattice(&b)?)?;
            (l, vec!["product".to_string(), path_str(&a), path_str(&b)])
        }
    };
    if l.len() > max_size {
        bail!("generated lattice: size {} out of bounds [1, {max_size}]", l.len());
    }
    let text = serialize_lattice(&l);
    if json {
        let mut rep = Report::new("gen", args);
        rep.result(text);
        Ok(rep.finish(true))
    } else {
        print!("{text}");
        Ok(0)
    }
}
