//! Steiner triple systems and block orientations.
//!
//! A Steiner triple system on `n` points is a family of 3-element blocks in
//! which every pair of distinct points lies in exactly one block; it exists
//! iff `n ≡ 1, 3 (mod 6)`. Orienting a system picks one of the two cyclic
//! orders on every block, which induces the antisymmetric orientation
//! function on ordered pairs of distinct points.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by system construction, orientation, and point lookups.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StsError {
    #[error("no Steiner triple system on {n} points: n must satisfy n ≡ 1 or 3 (mod 6) and n ≥ 3")]
    NotAdmissible { n: usize },
    #[error("orientation bit vector has length {got}, expected {expected} (one bit per block)")]
    BitLength { expected: usize, got: usize },
    #[error("orientation function is undefined on the diagonal (point {point})")]
    Diagonal { point: usize },
    #[error("point {point} out of range for a system on {n} points")]
    OutOfRange { point: usize, n: usize },
    #[error("invalid triple system: {0}")]
    Invalid(Violation),
}

/// A single violated triple-system invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("pair ({a},{b}) covered twice")]
    PairCoveredTwice { a: usize, b: usize },
    #[error("pair ({a},{b}) uncovered")]
    PairUncovered { a: usize, b: usize },
    #[error("block count {got}, expected n(n-1)/6 = {expected}")]
    BlockCount { expected: usize, got: usize },
    #[error("block {block} contains point {point}, out of range for n = {n}")]
    PointOutOfRange { block: usize, point: usize, n: usize },
    #[error("block {block} has a repeated point")]
    RepeatedPoint { block: usize },
}

/// Outcome of checking the triple-system invariants on a block list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StsValidation {
    pub violations: Vec<Violation>,
}

impl StsValidation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sign of an ordered pair under an orientation function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl core::fmt::Display for Sign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// A Steiner triple system in canonical form.
///
/// Blocks are stored as sorted triples `(a < b < c)` and the block list is
/// sorted lexicographically, so equal systems compare equal and orientation
/// bit vectors are well defined. Construction validates the pair-coverage
/// invariant; a value of this type is always a valid system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    n: usize,
    blocks: Vec<[usize; 3]>,
    // pair -> index of the unique block containing it, row-major n*n
    pair_block: Vec<usize>,
}

impl TripleSystem {
    /// Builds a system from raw blocks, canonicalizing their order.
    pub fn new(n: usize, blocks: Vec<[usize; 3]>) -> Result<Self, StsError> {
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable();
        let report = validate_blocks(n, &blocks);
        if let Some(v) = report.violations.into_iter().next() {
            return Err(StsError::Invalid(v));
        }
        let mut pair_block = vec![usize::MAX; n * n];
        for (idx, b) in blocks.iter().enumerate() {
            for (x, y) in [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])] {
                pair_block[x * n + y] = idx;
                pair_block[y * n + x] = idx;
            }
        }
        Ok(TripleSystem { n, blocks, pair_block })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[[usize; 3]] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the unique block containing the pair `{a, b}`.
    pub fn block_of_pair(&self, a: usize, b: usize) -> Result<usize, StsError> {
        if a >= self.n {
            return Err(StsError::OutOfRange { point: a, n: self.n });
        }
        if b >= self.n {
            return Err(StsError::OutOfRange { point: b, n: self.n });
        }
        if a == b {
            return Err(StsError::Diagonal { point: a });
        }
        Ok(self.pair_block[a * self.n + b])
    }

    /// Re-runs the invariant check on the stored blocks.
    pub fn validate(&self) -> StsValidation {
        validate_blocks(self.n, &self.blocks)
    }

    /// Attaches an orientation bit vector, one bit per block in canonical
    /// order. Bit 0 selects the ascending cyclic order `(a,b,c)`, bit 1 the
    /// reversed one `(a,c,b)`.
    pub fn orient(&self, bits: &[bool]) -> Result<OrientedTripleSystem, StsError> {
        if bits.len() != self.blocks.len() {
            return Err(StsError::BitLength {
                expected: self.blocks.len(),
                got: bits.len(),
            });
        }
        Ok(OrientedTripleSystem {
            base: self.clone(),
            orientation: bits.to_vec(),
        })
    }

    /// Number of distinct orientations, exactly `2^b`.
    pub fn count_orientations(&self) -> BigUint {
        BigUint::from(1u8) << self.blocks.len()
    }
}

/// An oriented Steiner triple system: a base system plus a chosen cyclic
/// order on each block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedTripleSystem {
    base: TripleSystem,
    orientation: Vec<bool>,
}

impl OrientedTripleSystem {
    pub fn base(&self) -> &TripleSystem {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn orientation(&self) -> &[bool] {
        &self.orientation
    }

    /// The `k`-th block in its chosen cyclic order.
    pub fn oriented_block(&self, k: usize) -> [usize; 3] {
        let [a, b, c] = self.base.blocks[k];
        if self.orientation[k] {
            [a, c, b]
        } else {
            [a, b, c]
        }
    }

    /// Orientation function value on the ordered pair `(a, b)`, `+1` iff
    /// `(a, b)` is a forward edge of the cyclic order of its block.
    pub fn orientation_value(&self, a: usize, b: usize) -> Result<Sign, StsError> {
        let k = self.base.block_of_pair(a, b)?;
        let cyc = self.oriented_block(k);
        let forward = [(cyc[0], cyc[1]), (cyc[1], cyc[2]), (cyc[2], cyc[0])];
        if forward.contains(&(a, b)) {
            Ok(Sign::Plus)
        } else {
            Ok(Sign::Minus)
        }
    }
}

/// True if a Steiner triple system on `n` points exists.
pub fn is_admissible(n: usize) -> bool {
    n >= 3 && (n % 6 == 1 || n % 6 == 3)
}

/// Deterministic construction of a Steiner triple system on `n` points,
/// via the Bose construction for `n ≡ 3 (mod 6)` and the Skolem
/// construction for `n ≡ 1 (mod 6)`.
pub fn construct_sts(n: usize) -> Result<TripleSystem, StsError> {
    if !is_admissible(n) {
        return Err(StsError::NotAdmissible { n });
    }
    let blocks = if n % 6 == 3 { bose_blocks(n) } else { skolem_blocks(n) };
    TripleSystem::new(n, blocks)
}

/// Checks the pair-coverage and block-count invariants on a raw block list,
/// reporting every violation instead of failing fast.
pub fn validate_blocks(n: usize, blocks: &[[usize; 3]]) -> StsValidation {
    let mut violations = Vec::new();
    let mut usable = Vec::with_capacity(blocks.len());
    for (i, b) in blocks.iter().enumerate() {
        let mut ok = true;
        for &p in b {
            if p >= n {
                violations.push(Violation::PointOutOfRange { block: i, point: p, n });
                ok = false;
            }
        }
        if ok && (b[0] == b[1] || b[0] == b[2] || b[1] == b[2]) {
            violations.push(Violation::RepeatedPoint { block: i });
            ok = false;
        }
        if ok {
            usable.push(*b);
        }
    }

    let mut cover = vec![0usize; n * n];
    for b in &usable {
        for (x, y) in [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])] {
            let (x, y) = if x < y { (x, y) } else { (y, x) };
            cover[x * n + y] += 1;
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            match cover[a * n + b] {
                0 => violations.push(Violation::PairUncovered { a, b }),
                1 => {}
                _ => violations.push(Violation::PairCoveredTwice { a, b }),
            }
        }
    }

    let expected = n * (n.saturating_sub(1)) / 6;
    if blocks.len() != expected {
        violations.push(Violation::BlockCount { expected, got: blocks.len() });
    }
    StsValidation { violations }
}

/// Bose construction for `n = 6k + 3`: points are `Z_m × {0,1,2}` with
/// `m = 2k + 1` odd, coded as `level * m + x`. Uses the idempotent
/// commutative quasigroup `x ∘ y = (x + y)/2 (mod m)`.
fn bose_blocks(n: usize) -> Vec<[usize; 3]> {
    let m = n / 3;
    let half = m.div_ceil(2); // inverse of 2 mod m
    let mut blocks = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..m {
        blocks.push([x, m + x, 2 * m + x]);
    }
    for x in 0..m {
        for y in (x + 1)..m {
            let w = (x + y) * half % m;
            for i in 0..3 {
                blocks.push([i * m + x, i * m + y, ((i + 1) % 3) * m + w]);
            }
        }
    }
    blocks
}

/// Skolem construction for `n = 6k + 1`: points are `Z_m × {0,1,2} ∪ {∞}`
/// with `m = 2k`, coded as `level * m + x` and `∞ = n - 1`. Uses the
/// half-idempotent commutative quasigroup obtained from `Z_m` addition by
/// renaming the symbols so that `i ∘ i = i` for `i < k`.
fn skolem_blocks(n: usize) -> Vec<[usize; 3]> {
    let k = n / 6;
    let m = 2 * k;
    let inf = 3 * m;
    // rename: even residue 2i -> i, odd residue 2i+1 -> k+i
    let mut rename = vec![0usize; m];
    for i in 0..k {
        rename[2 * i] = i;
        rename[2 * i + 1] = k + i;
    }
    let halfq = |x: usize, y: usize| rename[(x + y) % m];

    let mut blocks = Vec::with_capacity(n * (n - 1) / 6);
    for i in 0..k {
        blocks.push([i, m + i, 2 * m + i]);
    }
    for i in 0..k {
        for j in 0..3 {
            blocks.push([inf, j * m + (k + i), ((j + 1) % 3) * m + i]);
        }
    }
    for x in 0..m {
        for y in (x + 1)..m {
            let w = halfq(x, y);
            for j in 0..3 {
                blocks.push([j * m + x, j * m + y, ((j + 1) % 3) * m + w]);
            }
        }
    }
    blocks
}
