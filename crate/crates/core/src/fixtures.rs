//! Standard lattice generators: chains, Boolean cubes, the diamond M3, the
//! pentagon N5, and binary products.
//!
//! Element naming is deterministic: `e0..e{n-1}` for chains, fixed-width
//! bit-strings for Boolean cubes, and `(a_b)` for product elements (the file
//! format's token charset has no comma, so `_` separates the components).

use crate::lattice::{build_lattice, FiniteBoundedLattice, LatticeError, DEFAULT_MAX_ELEMENTS};

/// Total order `e0 < e1 < ... < e{n-1}`, named `C{n}`. Requires `2 <= n <= 64`.
pub fn make_chain(n: usize) -> Result<FiniteBoundedLattice, LatticeError> {
    if !(2..=DEFAULT_MAX_ELEMENTS).contains(&n) {
        return Err(LatticeError::SizeLimitExceeded {
            what: "chain",
            requested: n,
            min: 2,
            max: DEFAULT_MAX_ELEMENTS,
        });
    }
    let elements: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = elements.iter().map(String::as_str).collect();
    let covers: Vec<(&str, &str)> = (0..n - 1).map(|i| (refs[i], refs[i + 1])).collect();
    build_lattice(&format!("C{n}"), &refs, refs[0], refs[n - 1], &covers)
}

/// Boolean cube of `k` bits ordered bitwise, named `B{k}`. Elements are
/// `k`-wide bit-strings in numeric order; covers flip a single 0 to 1.
/// Requires `1 <= k <= 4`.
pub fn make_boolean(k: usize) -> Result<FiniteBoundedLattice, LatticeError> {
    if !(1..=4).contains(&k) {
        return Err(LatticeError::SizeLimitExceeded {
            what: "boolean",
            requested: k,
            min: 1,
            max: 4,
        });
    }
    let n = 1usize << k;
    let elements: Vec<String> = (0..n).map(|v| format!("{v:0k$b}", k = k)).collect();
    let refs: Vec<&str> = elements.iter().map(String::as_str).collect();
    let mut covers = Vec::new();
    for v in 0..n {
        for bit in 0..k {
            if v & (1 << bit) == 0 {
                covers.push((refs[v], refs[v | (1 << bit)]));
            }
        }
    }
    build_lattice(&format!("B{k}"), &refs, refs[0], refs[n - 1], &covers)
}

/// The diamond M3: three pairwise-incomparable atoms between bottom and top.
/// The smallest non-distributive modular lattice.
pub fn make_diamond_m3() -> FiniteBoundedLattice {
    build_lattice(
        "M3",
        &["0", "p", "q", "r", "1"],
        "0",
        "1",
        &[
            ("0", "p"),
            ("0", "q"),
            ("0", "r"),
            ("p", "1"),
            ("q", "1"),
            ("r", "1"),
        ],
    )
    .expect("M3 is a valid lattice")
}

/// The pentagon N5: `0 < a < c < 1` with `b` comparable only to the bounds.
/// The smallest non-modular lattice.
pub fn make_pentagon_n5() -> FiniteBoundedLattice {
    build_lattice(
        "N5",
        &["0", "a", "b", "c", "1"],
        "0",
        "1",
        &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "1"), ("c", "1")],
    )
    .expect("N5 is a valid lattice")
}

/// Componentwise product of two lattices, named `<A>x<B>`; elements are
/// `(a_b)` in row-major declaration order (`a` outer, `b` inner). The result
/// is capped at 64 elements.
pub fn make_product(
    a: &FiniteBoundedLattice,
    b: &FiniteBoundedLattice,
) -> Result<FiniteBoundedLattice, LatticeError> {
    let n = a.len().saturating_mul(b.len());
    if n > DEFAULT_MAX_ELEMENTS {
        return Err(LatticeError::SizeLimitExceeded {
            what: "product",
            requested: n,
            min: 1,
            max: DEFAULT_MAX_ELEMENTS,
        });
    }
    let pair_name = |x: &str, y: &str| format!("({x}_{y})");
    let mut elements = Vec::with_capacity(n);
    for x in a.elements() {
        for y in b.elements() {
            elements.push(pair_name(x, y));
        }
    }
    let refs: Vec<&str> = elements.iter().map(String::as_str).collect();
    let at = |i: usize, j: usize| refs[i * b.len() + j];
    // Covers move one coordinate along one of the component covers; the
    // closure of these is exactly the componentwise order.
    let mut covers = Vec::new();
    for &(lo, hi) in a.covers() {
        for j in 0..b.len() {
            covers.push((at(lo, j), at(hi, j)));
        }
    }
    for i in 0..a.len() {
        for &(lo, hi) in b.covers() {
            covers.push((at(i, lo), at(i, hi)));
        }
    }
    build_lattice(
        &format!("{}x{}", a.name(), b.name()),
        &refs,
        at(a.bottom_idx(), b.bottom_idx()),
        at(a.top_idx(), b.top_idx()),
        &covers,
    )
}

/// The fixed fixture corpus used by the exhaustive suites:
/// C2..C6, B1..B3, M3, N5, and C3xC3.
pub fn corpus() -> Vec<FiniteBoundedLattice> {
    let mut out: Vec<FiniteBoundedLattice> =
        (2..=6).map(|n| make_chain(n).unwrap()).collect();
    out.extend((1..=3).map(|k| make_boolean(k).unwrap()));
    out.push(make_diamond_m3());
    out.push(make_pentagon_n5());
    let c3 = make_chain(3).unwrap();
    out.push(make_product(&c3, &c3).unwrap());
    out
}
