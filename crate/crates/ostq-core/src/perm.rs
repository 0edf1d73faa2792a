//! Small permutation helpers shared by the table modules.

use alloc::vec;
use alloc::vec::Vec;

/// True if `p` maps `0..p.len()` bijectively onto itself.
pub(crate) fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Inverse of a permutation. Caller guarantees `p` is a permutation.
pub(crate) fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Composition `a ∘ b` (apply `b` first, then `a`).
pub(crate) fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&v| a[v]).collect()
}

pub(crate) fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_round_trips() {
        let p = vec![2, 0, 3, 1];
        assert!(is_permutation(&p));
        assert_eq!(compose(&p, &invert(&p)), identity(4));
        assert_eq!(compose(&invert(&p), &p), identity(4));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(!is_permutation(&[0, 0, 1]));
        assert!(!is_permutation(&[0, 3]));
    }
}
