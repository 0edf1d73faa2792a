//! Shared test oracles, kept independent of the library's verification
//! paths: the homomorphism checks and searches here re-derive everything
//! from raw table lookups.

// not every test binary uses every oracle
#![allow(dead_code)]

use ostq_core::CayleyTable;

/// Orientation bit vector for a system with `b` blocks from the bits of
/// `index` (bit `k` orients block `k`).
pub fn orientation_bits(b: usize, index: u64) -> Vec<bool> {
    (0..b).map(|k| (index >> k) & 1 == 1).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Independent exhaustive homomorphism check of `map` on every product.
pub fn is_homomorphism(src: &CayleyTable, dst: &CayleyTable, map: &[usize]) -> bool {
    let n = src.order();
    if dst.order() != n || map.len() != n {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| map[src.mul(x, y)] == dst.mul(map[x], map[y])))
}

/// Brute-force isomorphism search over all bijections, with prefix pruning:
/// a partial assignment is abandoned as soon as some product among assigned
/// elements maps inconsistently.
pub fn find_isomorphism(src: &CayleyTable, dst: &CayleyTable) -> Option<Vec<usize>> {
    let n = src.order();
    if dst.order() != n {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(src: &CayleyTable, dst: &CayleyTable, map: &[usize], depth: usize) -> bool {
        for y in 0..=depth {
            for (a, b) in [(depth, y), (y, depth)] {
                let p = src.mul(a, b);
                if p <= depth && dst.mul(map[a], map[b]) != map[p] {
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(
        src: &CayleyTable,
        dst: &CayleyTable,
        map: &mut [usize],
        used: &mut [bool],
        depth: usize,
    ) -> bool {
        if depth == src.order() {
            return true;
        }
        for image in 0..src.order() {
            if used[image] {
                continue;
            }
            map[depth] = image;
            used[image] = true;
            if consistent(src, dst, map, depth) && backtrack(src, dst, map, used, depth + 1) {
                return true;
            }
            used[image] = false;
        }
        map[depth] = usize::MAX;
        false
    }

    if backtrack(src, dst, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

pub fn latin_by_hand(t: &CayleyTable) -> bool {
    let n = t.order();
    let mut ok = true;
    for i in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for j in 0..n {
            row[t.mul(i, j)] = true;
            col[t.mul(j, i)] = true;
        }
        ok &= row.iter().all(|&b| b) && col.iter().all(|&b| b);
    }
    ok
}
