//! Finite quasigroups as Cayley tables.
//!
//! A quasigroup is a set where both division equations solve uniquely, which
//! for a finite multiplication table is exactly the Latin-square property.
//! This module holds the generic table type, the Steiner quasigroup attached
//! to a triple system (product of `x ≠ y` is the third point of their block,
//! `x·x = x`), its inverse, the three commutative quasigroups of order 3,
//! and principal isotopes.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::perm;
use crate::sts::{StsError, TripleSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuasigroupError {
    #[error("table has {got} cells, expected {expected}")]
    CellsLength { expected: usize, got: usize },
    #[error("cell ({row},{col}) holds {value}, out of range for order {order}")]
    CellOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("permutation size {got} does not match table order {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("map is not a permutation of 0..{order}")]
    NotPermutation { order: usize },
    #[error("table is not a Latin square: {0}")]
    NotLatin(LatinViolation),
    #[error("not a Steiner quasigroup: {0}")]
    NotSteiner(NotSteinerReason),
    #[error(transparent)]
    Sts(#[from] StsError),
}

/// A single violated Latin-square constraint.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LatinViolation {
    #[error("symbol {symbol} repeated in row {row}")]
    RepeatedInRow { row: usize, symbol: usize },
    #[error("symbol {symbol} repeated in column {col}")]
    RepeatedInColumn { col: usize, symbol: usize },
}

/// First failed precondition of the Steiner-quasigroup correspondence.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum NotSteinerReason {
    #[error("not idempotent: {x}·{x} = {got}")]
    NotIdempotent { x: usize, got: usize },
    #[error("not commutative at ({x},{y})")]
    NotCommutative { x: usize, y: usize },
    #[error("not totally symmetric: {x}·({x}·{y}) ≠ {y}")]
    NotTotallySymmetric { x: usize, y: usize },
}

/// Outcome of a Latin-square scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LatinReport {
    pub violations: Vec<LatinViolation>,
}

impl LatinReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite binary operation as an order-`n` multiplication table.
///
/// Row `x` lists `x·0 … x·(n-1)`. The type does not enforce the Latin
/// property; use [`is_latin`] / [`CayleyTable::latin_report`] to check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl CayleyTable {
    /// Builds a table from row-major cells, checking shape and entry range.
    pub fn new(order: usize, cells: Vec<usize>) -> Result<Self, QuasigroupError> {
        if cells.len() != order * order {
            return Err(QuasigroupError::CellsLength {
                expected: order * order,
                got: cells.len(),
            });
        }
        for (i, &v) in cells.iter().enumerate() {
            if v >= order {
                return Err(QuasigroupError::CellOutOfRange {
                    row: i / order,
                    col: i % order,
                    value: v,
                    order,
                });
            }
        }
        Ok(CayleyTable { order, cells, labels: None })
    }

    /// Builds a table by evaluating `f` on every ordered pair.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let v = f(x, y);
                debug_assert!(v < order);
                cells.push(v);
            }
        }
        CayleyTable { order, cells, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.cells[x * self.order..(x + 1) * self.order]
    }

    /// The product `x·y`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    /// Solves `a·z = b` for `z`, if a solution exists in this row.
    pub fn left_div(&self, a: usize, b: usize) -> Option<usize> {
        self.row(a).iter().position(|&v| v == b)
    }

    /// Solves `z·b = a` for `z`, if a solution exists in this column.
    pub fn right_div(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.order).find(|&z| self.mul(z, b) == a)
    }

    /// Scans every row and column for repeated symbols.
    pub fn latin_report(&self) -> LatinReport {
        let n = self.order;
        let mut violations = Vec::new();
        let mut seen = vec![false; n];
        for row in 0..n {
            seen.fill(false);
            for col in 0..n {
                let v = self.mul(row, col);
                if seen[v] {
                    violations.push(LatinViolation::RepeatedInRow { row, symbol: v });
                } else {
                    seen[v] = true;
                }
            }
        }
        for col in 0..n {
            seen.fill(false);
            for row in 0..n {
                let v = self.mul(row, col);
                if seen[v] {
                    violations.push(LatinViolation::RepeatedInColumn { col, symbol: v });
                } else {
                    seen[v] = true;
                }
            }
        }
        LatinReport { violations }
    }

    pub fn is_latin(&self) -> bool {
        self.latin_report().is_ok()
    }
}

/// Latin-square check as a standalone report.
pub fn is_latin(t: &CayleyTable) -> LatinReport {
    t.latin_report()
}

/// The Steiner quasigroup of a triple system: `x·y` is the third point of
/// the block containing `{x, y}`, and `x·x = x`.
pub fn steiner_quasigroup(ts: &TripleSystem) -> CayleyTable {
    let n = ts.n();
    let mut cells: Vec<usize> = (0..n * n).map(|i| i / n).collect(); // diagonal x·x = x
    for &[a, b, c] in ts.blocks() {
        for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
            cells[x * n + y] = z;
            cells[y * n + x] = z;
        }
    }
    CayleyTable { order: n, cells, labels: None }
}

/// Recovers the triple system of a Steiner quasigroup, with blocks
/// `{x, y, x·y}`. Fails if the table is not Latin, idempotent, commutative,
/// and totally symmetric, naming the first violated condition.
pub fn sts_from_quasigroup(t: &CayleyTable) -> Result<TripleSystem, QuasigroupError> {
    if let Some(&v) = t.latin_report().violations.first() {
        return Err(QuasigroupError::NotLatin(v));
    }
    let n = t.order();
    for x in 0..n {
        let got = t.mul(x, x);
        if got != x {
            return Err(QuasigroupError::NotSteiner(NotSteinerReason::NotIdempotent { x, got }));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if t.mul(x, y) != t.mul(y, x) {
                return Err(QuasigroupError::NotSteiner(NotSteinerReason::NotCommutative { x, y }));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if t.mul(x, t.mul(x, y)) != y {
                return Err(QuasigroupError::NotSteiner(
                    NotSteinerReason::NotTotallySymmetric { x, y },
                ));
            }
        }
    }
    let mut triples = BTreeSet::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let mut b = [x, y, t.mul(x, y)];
            b.sort_unstable();
            triples.insert(b);
        }
    }
    Ok(TripleSystem::new(n, triples.into_iter().collect())?)
}

/// The cyclic group of order 3 over `{0,1,2}` with identity 0.
pub fn z3() -> CayleyTable {
    CayleyTable::from_fn(3, |x, y| (x + y) % 3)
}

/// The Steiner quasigroup of order 3: `x∗y = -x - y (mod 3)`, idempotent.
pub fn k3() -> CayleyTable {
    CayleyTable::from_fn(3, |x, y| (6 - x - y) % 3)
}

/// The commutative order-3 quasigroup without idempotents:
/// `x⋄y = -x - y - 1 (mod 3)`.
pub fn q3() -> CayleyTable {
    CayleyTable::from_fn(3, |x, y| (5 - x - y) % 3)
}

/// A principal isotopism `(φ1, φ2)`: the isotope satisfies
/// `φ1(α) ∗ φ2(β) = α·β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalIsotopism {
    phi1: Vec<usize>,
    phi2: Vec<usize>,
}

impl PrincipalIsotopism {
    pub fn new(phi1: Vec<usize>, phi2: Vec<usize>) -> Result<Self, QuasigroupError> {
        if phi1.len() != phi2.len() {
            return Err(QuasigroupError::SizeMismatch { expected: phi1.len(), got: phi2.len() });
        }
        if !perm::is_permutation(&phi1) || !perm::is_permutation(&phi2) {
            return Err(QuasigroupError::NotPermutation { order: phi1.len() });
        }
        Ok(PrincipalIsotopism { phi1, phi2 })
    }

    pub fn order(&self) -> usize {
        self.phi1.len()
    }

    pub fn phi1(&self) -> &[usize] {
        &self.phi1
    }

    pub fn phi2(&self) -> &[usize] {
        &self.phi2
    }
}

/// The principal isotope of `t`: `u ∗ v = φ1⁻¹(u) · φ2⁻¹(v)`.
pub fn principal_isotope(
    t: &CayleyTable,
    iso: &PrincipalIsotopism,
) -> Result<CayleyTable, QuasigroupError> {
    if iso.order() != t.order() {
        return Err(QuasigroupError::SizeMismatch { expected: t.order(), got: iso.order() });
    }
    let inv1 = perm::invert(&iso.phi1);
    let inv2 = perm::invert(&iso.phi2);
    Ok(CayleyTable::from_fn(t.order(), |u, v| t.mul(inv1[u], inv2[v])))
}
