//! Exhaustive verification of quasigroup identities.
//!
//! Every check here evaluates its defining equation over all variable
//! assignments of a finite table and returns either `holds` or the first
//! lexicographic witness. Inverse-type properties are searched by pinning
//! the candidate partner of each element with a single probe and then
//! verifying it globally; regular permutations are enumerated from the fact
//! that such a permutation is determined by its value at one point.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::extension::ExtensionTable;
use crate::perm;
use crate::quasigroup::{CayleyTable, LatinViolation};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LawsError {
    #[error("table is not a Latin square: {0}")]
    NotLatin(LatinViolation),
}

fn require_latin(t: &CayleyTable) -> Result<(), LawsError> {
    match t.latin_report().violations.first() {
        Some(&v) => Err(LawsError::NotLatin(v)),
        None => Ok(()),
    }
}

/// Identifier of one defining equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LawId {
    Idempotent,
    Commutative,
    Associative,
    Flexible,
    LeftAlternative,
    RightAlternative,
    SemiSymmetric,
    LeftBol,
    RightBol,
    Moufang,
    LeftNuclearSquare,
    MiddleNuclearSquare,
    RightNuclearSquare,
}

impl LawId {
    pub const ALL: [LawId; 13] = [
        LawId::Idempotent,
        LawId::Commutative,
        LawId::Associative,
        LawId::Flexible,
        LawId::LeftAlternative,
        LawId::RightAlternative,
        LawId::SemiSymmetric,
        LawId::LeftBol,
        LawId::RightBol,
        LawId::Moufang,
        LawId::LeftNuclearSquare,
        LawId::MiddleNuclearSquare,
        LawId::RightNuclearSquare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawId::Idempotent => "idempotent",
            LawId::Commutative => "commutative",
            LawId::Associative => "associative",
            LawId::Flexible => "flexible",
            LawId::LeftAlternative => "left_alternative",
            LawId::RightAlternative => "right_alternative",
            LawId::SemiSymmetric => "semi_symmetric",
            LawId::LeftBol => "left_bol",
            LawId::RightBol => "right_bol",
            LawId::Moufang => "moufang",
            LawId::LeftNuclearSquare => "left_nuclear_square",
            LawId::MiddleNuclearSquare => "middle_nuclear_square",
            LawId::RightNuclearSquare => "right_nuclear_square",
        }
    }

    /// Number of universally quantified variables in the equation.
    pub fn arity(self) -> usize {
        match self {
            LawId::Idempotent => 1,
            LawId::Commutative
            | LawId::Flexible
            | LawId::LeftAlternative
            | LawId::RightAlternative
            | LawId::SemiSymmetric => 2,
            _ => 3,
        }
    }
}

impl core::fmt::Display for LawId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for LawId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        LawId::ALL
            .into_iter()
            .find(|law| law.name() == s)
            .ok_or(())
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: LawId,
    pub holds: bool,
    /// First lexicographic variable assignment violating the law.
    pub witness: Option<Vec<usize>>,
}

/// Both sides of the defining equation of `law` at an assignment.
/// Unused trailing variables are ignored.
fn law_sides(t: &CayleyTable, law: LawId, x: usize, y: usize, z: usize) -> (usize, usize) {
    let m = |a, b| t.mul(a, b);
    match law {
        LawId::Idempotent => (m(x, x), x),
        LawId::Commutative => (m(x, y), m(y, x)),
        LawId::Associative => (m(m(x, y), z), m(x, m(y, z))),
        LawId::Flexible => (m(x, m(y, x)), m(m(x, y), x)),
        LawId::LeftAlternative => (m(x, m(x, y)), m(m(x, x), y)),
        LawId::RightAlternative => (m(m(y, x), x), m(y, m(x, x))),
        LawId::SemiSymmetric => (m(x, m(y, x)), y),
        LawId::LeftBol => (m(x, m(y, m(x, z))), m(m(x, m(y, x)), z)),
        LawId::RightBol => (m(m(m(x, y), z), y), m(x, m(m(y, z), y))),
        LawId::LeftNuclearSquare => (m(m(x, x), m(y, z)), m(m(m(x, x), y), z)),
        LawId::MiddleNuclearSquare => (m(x, m(m(y, y), z)), m(m(x, m(y, y)), z)),
        LawId::RightNuclearSquare => (m(x, m(y, m(z, z))), m(m(x, y), m(z, z))),
        LawId::Moufang => unreachable!("moufang is checked as the two Bol laws"),
    }
}

fn exhaustive_check(t: &CayleyTable, law: LawId) -> LawReport {
    let n = t.order();
    let arity = law.arity();
    let (ys, zs) = (if arity >= 2 { n } else { 1 }, if arity >= 3 { n } else { 1 });
    for x in 0..n {
        for y in 0..ys {
            for z in 0..zs {
                let (lhs, rhs) = law_sides(t, law, x, y, z);
                if lhs != rhs {
                    let mut witness = vec![x];
                    if arity >= 2 {
                        witness.push(y);
                    }
                    if arity >= 3 {
                        witness.push(z);
                    }
                    return LawReport { law, holds: false, witness: Some(witness) };
                }
            }
        }
    }
    LawReport { law, holds: true, witness: None }
}

/// Evaluates the defining equation of `law` over every assignment.
/// A table that satisfies both Bol identities is Moufang, so `Moufang`
/// reports the first violation of either.
pub fn check_law(t: &CayleyTable, law: LawId) -> Result<LawReport, LawsError> {
    require_latin(t)?;
    let report = match law {
        LawId::Moufang => {
            let left = exhaustive_check(t, LawId::LeftBol);
            let inner = if left.holds { exhaustive_check(t, LawId::RightBol) } else { left };
            LawReport { law: LawId::Moufang, holds: inner.holds, witness: inner.witness }
        }
        _ => exhaustive_check(t, law),
    };
    Ok(report)
}

/// Runs every law in declaration order.
pub fn check_all_laws(t: &CayleyTable) -> Result<Vec<LawReport>, LawsError> {
    LawId::ALL.into_iter().map(|law| check_law(t, law)).collect()
}

/// Which inverse-type bijection is searched for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InverseKind {
    /// `ι(x)·(x·y) = y`
    LeftInverse,
    /// `(y·x)·ι(x) = y`
    RightInverse,
    /// `(x·y)·κ(x) = y`
    LeftCross,
    /// `κ(x)·(y·x) = y`
    RightCross,
}

impl InverseKind {
    pub const ALL: [InverseKind; 4] = [
        InverseKind::LeftInverse,
        InverseKind::RightInverse,
        InverseKind::LeftCross,
        InverseKind::RightCross,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InverseKind::LeftInverse => "left_inverse",
            InverseKind::RightInverse => "right_inverse",
            InverseKind::LeftCross => "left_cross",
            InverseKind::RightCross => "right_cross",
        }
    }
}

impl core::fmt::Display for InverseKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A total inverse-type witness: `mapping[x]` is the partner of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMap {
    pub kind: InverseKind,
    pub mapping: Vec<usize>,
}

/// Result of an inverse-witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseSearch {
    Found(WitnessMap),
    /// `x` has no valid partner: the pinned `candidate` fails at `failing_y`.
    Absent { x: usize, candidate: usize, failing_y: usize },
}

impl InverseSearch {
    pub fn found(&self) -> Option<&WitnessMap> {
        match self {
            InverseSearch::Found(w) => Some(w),
            InverseSearch::Absent { .. } => None,
        }
    }
}

/// Searches for the bijection of an inverse-type property.
///
/// For each `x` the only possible partner is pinned by the defining
/// equation at the probe `y = 0` via quasigroup division, then verified
/// against every `y`; in a quasigroup the partner, when it exists, is
/// unique, and a total partner map is automatically a bijection.
pub fn find_inverse_witness(t: &CayleyTable, kind: InverseKind) -> Result<InverseSearch, LawsError> {
    require_latin(t)?;
    let n = t.order();
    let mut mapping = Vec::with_capacity(n);
    for x in 0..n {
        let candidate = pin_candidate(t, kind, x);
        for y in 0..n {
            if !relation_holds(t, kind, x, candidate, y) {
                return Ok(InverseSearch::Absent { x, candidate, failing_y: y });
            }
        }
        mapping.push(candidate);
    }
    debug_assert!(perm::is_permutation(&mapping));
    Ok(InverseSearch::Found(WitnessMap { kind, mapping }))
}

fn pin_candidate(t: &CayleyTable, kind: InverseKind, x: usize) -> usize {
    // Latin property guarantees the divisions below succeed.
    match kind {
        InverseKind::LeftInverse => t.right_div(0, t.mul(x, 0)),
        InverseKind::RightInverse => t.left_div(t.mul(0, x), 0),
        InverseKind::LeftCross => t.left_div(t.mul(x, 0), 0),
        InverseKind::RightCross => t.right_div(0, t.mul(0, x)),
    }
    .expect("table verified Latin")
}

fn relation_holds(t: &CayleyTable, kind: InverseKind, x: usize, partner: usize, y: usize) -> bool {
    match kind {
        InverseKind::LeftInverse => t.mul(partner, t.mul(x, y)) == y,
        InverseKind::RightInverse => t.mul(t.mul(y, x), partner) == y,
        InverseKind::LeftCross => t.mul(t.mul(x, y), partner) == y,
        InverseKind::RightCross => t.mul(partner, t.mul(y, x)) == y,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Side {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(()),
        }
    }
}

/// The group of left- or right-regular permutations of a quasigroup:
/// bijections with `λ(xy) = λ(x)·y`, respectively `ρ(xy) = x·ρ(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularPermutationGroup {
    pub side: Side,
    /// Member permutations, sorted lexicographically.
    pub elements: Vec<Vec<usize>>,
    pub cyclic: bool,
}

impl RegularPermutationGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Orbit partition of the group action, each orbit sorted, orbits
    /// ordered by smallest member.
    pub fn orbits(&self, n: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.elements.iter().map(|g| g[x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &m in &orbit {
                seen[m] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }
}

/// Enumerates all regular permutations of `t` on the given side.
///
/// A regular permutation is determined by its value at the base point 0:
/// each of the `n` candidate images yields one candidate permutation, which
/// is then verified against the defining relation on all pairs.
pub fn regular_permutations(
    t: &CayleyTable,
    side: Side,
) -> Result<RegularPermutationGroup, LawsError> {
    require_latin(t)?;
    let n = t.order();
    let mut elements = Vec::new();
    for c in 0..n {
        let candidate: Vec<usize> = match side {
            // λ = L_c ∘ L_0⁻¹
            Side::Left => (0..n)
                .map(|z| t.mul(c, t.left_div(0, z).expect("table verified Latin")))
                .collect(),
            // ρ = R_c ∘ R_0⁻¹
            Side::Right => (0..n)
                .map(|z| t.mul(t.right_div(z, 0).expect("table verified Latin"), c))
                .collect(),
        };
        let regular = (0..n).all(|x| {
            (0..n).all(|y| match side {
                Side::Left => candidate[t.mul(x, y)] == t.mul(candidate[x], y),
                Side::Right => candidate[t.mul(x, y)] == t.mul(x, candidate[y]),
            })
        });
        if regular {
            elements.push(candidate);
        }
    }
    elements.sort_unstable();
    let cyclic = is_cyclic(&elements, n);
    Ok(RegularPermutationGroup { side, elements, cyclic })
}

/// True if some member generates the whole set by composition.
fn is_cyclic(elements: &[Vec<usize>], n: usize) -> bool {
    let id = perm::identity(n);
    elements.iter().any(|g| {
        let mut seen = 1usize;
        let mut acc = g.clone();
        while acc != id {
            acc = perm::compose(g, &acc);
            seen += 1;
            if seen > elements.len() {
                return false;
            }
        }
        seen == elements.len()
    })
}

/// Orbit partition of the regular-permutation group of an extension table,
/// compared against the congruence classes of the projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub side: Side,
    pub orbits: Vec<Vec<usize>>,
    pub matches_congruence_classes: bool,
}

/// Computes the regular orbits of an extension table. Extension tables are
/// Latin by construction, so this cannot fail.
pub fn regular_orbits(e: &ExtensionTable, side: Side) -> OrbitReport {
    let group = regular_permutations(e.table(), side).expect("extension tables are Latin");
    let orbits = group.orbits(e.order());
    let matches_congruence_classes = orbits == e.congruence_classes();
    OrbitReport { side, orbits, matches_congruence_classes }
}
