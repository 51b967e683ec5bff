//! Canonical forms of loop tables under relabelings fixing the identity.
//!
//! The canonical form is the lexicographically least row-major serialization
//! over all `(n−1)!` relabelings that fix `0`. Row 0 is the identity for
//! every relabeling, so the search is driven by row 1: if element `a` is
//! renamed `1`, the least possible row 1 walks the cycles of the left
//! translation `L_a`, starting with the cycle through `0` and then taking
//! the remaining cycles by ascending length. Only relabelings realizing the
//! least row 1 are expanded, and each is compared row by row against the
//! best serialization so far.

use std::cmp::Ordering;

use serde::Serialize;

use crate::table::{ElementId, LoopTable, IDENTITY};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        (self.0.len() as f64).sqrt() as usize
    }

    /// The canonical representative as a table.
    pub fn to_table(&self) -> LoopTable {
        LoopTable::from_cells_unchecked(self.order(), self.0.clone())
    }

    /// 64-bit FNV-1a digest, used for file names.
    pub fn digest(&self) -> u64 {
        crate::table::fnv1a(&self.0)
    }
}

/// Cycle lengths of a permutation given as a row: the cycle through `0`
/// first, then the others in ascending order.
pub(crate) fn cycle_type(row: &[u8]) -> Vec<u8> {
    let n = row.len();
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = row[k] as usize;
            len += 1;
        }
        lens.push(len as u8);
    }
    lens[1..].sort_unstable();
    lens
}

/// The least row a permutation of the given cycle type can take once its
/// cycles are laid out on consecutive labels.
pub(crate) fn row_form(cycle_type: &[u8]) -> Vec<u8> {
    let mut row = Vec::new();
    let mut start = 0u8;
    for &len in cycle_type {
        for k in 0..len {
            row.push(if k + 1 == len { start } else { start + k + 1 });
        }
        start += len;
    }
    row
}

/// All cycle types a non-identity left translation of an order-`n` loop can
/// have: no fixed points, so every cycle has length at least 2.
pub(crate) fn translation_cycle_types(n: usize) -> Vec<Vec<u8>> {
    fn rest(remaining: usize, min: usize, acc: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for len in min.max(2)..=remaining {
            acc.push(len as u8);
            rest(remaining - len, len, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for first in 2..=n {
        let mut acc = vec![first as u8];
        rest(n - first, 2, &mut acc, &mut out);
    }
    out.sort_by_key(|t| row_form(t));
    out
}

struct Best {
    cells: Vec<u8>,
    perm: Vec<ElementId>,
}

/// Canonical form together with a relabeling (`perm[old] = new`) that maps
/// `q` onto it.
pub fn canonical_labeling(q: &LoopTable) -> (CanonicalForm, Vec<ElementId>) {
    let n = q.order();
    if n <= 2 {
        let perm: Vec<ElementId> = (0..n).collect();
        return (CanonicalForm(q.cells().to_vec()), perm);
    }
    let forms: Vec<Vec<u8>> = (0..n).map(|a| row_form(&cycle_type(q.row(a)))).collect();
    let least = (1..n).map(|a| &forms[a]).min().expect("n > 2").clone();
    let mut best: Option<Best> = None;
    for a in 1..n {
        if forms[a] != least {
            continue;
        }
        let mut perm = vec![usize::MAX; n];
        let mut inv = Vec::with_capacity(n);
        // the cycle through 0 is forced: 0, a, a·a, a·(a·a), ...
        let mut k = IDENTITY;
        loop {
            perm[k] = inv.len();
            inv.push(k);
            k = q.mul(a, k);
            if k == IDENTITY {
                break;
            }
        }
        expand(q, a, &mut perm, &mut inv, &mut best);
    }
    let best = best.expect("at least one relabeling");
    (CanonicalForm(best.cells), best.perm)
}

/// Lays out the remaining cycles of `L_a`, shortest first, trying every
/// choice of cycle and starting point among the shortest.
fn expand(
    q: &LoopTable,
    a: ElementId,
    perm: &mut Vec<ElementId>,
    inv: &mut Vec<ElementId>,
    best: &mut Option<Best>,
) {
    let n = q.order();
    if inv.len() == n {
        consider(q, perm, inv, best);
        return;
    }
    let mut shortest = usize::MAX;
    let mut starts = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if perm[s] != usize::MAX || seen[s] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            cycle.push(k);
            k = q.mul(a, k);
        }
        match cycle.len().cmp(&shortest) {
            Ordering::Less => {
                shortest = cycle.len();
                starts = cycle;
            }
            Ordering::Equal => starts.extend(cycle),
            Ordering::Greater => {}
        }
    }
    for &s in &starts {
        let mark = inv.len();
        let mut k = s;
        loop {
            perm[k] = inv.len();
            inv.push(k);
            k = q.mul(a, k);
            if k == s {
                break;
            }
        }
        expand(q, a, perm, inv, best);
        for &old in &inv[mark..] {
            perm[old] = usize::MAX;
        }
        inv.truncate(mark);
    }
}

fn consider(q: &LoopTable, perm: &[ElementId], inv: &[ElementId], best: &mut Option<Best>) {
    let n = q.order();
    let mut row = vec![0u8; n];
    let mut cells = Vec::with_capacity(n * n);
    let mut deciding = best.is_none();
    for i in 0..n {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = perm[q.mul(inv[i], inv[j])] as u8;
        }
        if !deciding {
            let old = &best.as_ref().unwrap().cells[i * n..(i + 1) * n];
            match row.as_slice().cmp(old) {
                Ordering::Greater => return,
                Ordering::Less => deciding = true,
                Ordering::Equal => {}
            }
        }
        cells.extend_from_slice(&row);
    }
    if deciding {
        *best = Some(Best { cells, perm: perm.to_vec() });
    }
}

pub fn canonical_form(q: &LoopTable) -> CanonicalForm {
    canonical_labeling(q).0
}

/// An isomorphism `q1 → q2` as `map[x] = image of x`, when one exists.
pub fn are_isomorphic(q1: &LoopTable, q2: &LoopTable) -> Option<Vec<ElementId>> {
    if q1.order() != q2.order() {
        return None;
    }
    let (c1, p1) = canonical_labeling(q1);
    let (c2, p2) = canonical_labeling(q2);
    if c1 != c2 {
        return None;
    }
    let mut inv2 = vec![0; p2.len()];
    for (old, &new) in p2.iter().enumerate() {
        inv2[new] = old;
    }
    Some(p1.iter().map(|&c| inv2[c]).collect())
}

/// Checks that `map` is a bijection carrying products of `q1` to `q2`.
pub fn is_isomorphism(q1: &LoopTable, q2: &LoopTable, map: &[ElementId]) -> bool {
    let n = q1.order();
    if q2.order() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..n).all(|x| (0..n).all(|y| map[q1.mul(x, y)] == q2.mul(map[x], map[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;
    use proptest::prelude::*;

    /// Oracle: minimum over every relabeling fixing 0, by brute force.
    fn brute_canonical(q: &LoopTable) -> Vec<u8> {
        let n = q.order();
        let mut rest: Vec<usize> = (1..n).collect();
        let mut best: Option<Vec<u8>> = None;
        permute(&mut rest, 0, &mut |p| {
            let mut perm = vec![0];
            perm.extend_from_slice(p);
            let r = q.relabel(&perm).cells().to_vec();
            if best.as_ref().map_or(true, |b| r < *b) {
                best = Some(r);
            }
        });
        best.unwrap()
    }

    fn permute(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == xs.len() {
            f(xs);
            return;
        }
        for i in k..xs.len() {
            xs.swap(k, i);
            permute(xs, k + 1, f);
            xs.swap(k, i);
        }
    }

    #[test]
    fn matches_brute_force_on_small_tables() {
        let mut tables: Vec<LoopTable> = (1..=8).flat_map(groups::abelian_groups).collect();
        tables.push(groups::symmetric3());
        tables.push(
            LoopTable::parse("5\n0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3\n").unwrap(),
        );
        for q in &tables {
            let (c, perm) = canonical_labeling(q);
            assert_eq!(c.bytes(), brute_canonical(q).as_slice(), "order {}", q.order());
            assert_eq!(q.relabel(&perm).cells(), c.bytes());
        }
    }

    #[test]
    fn trivial_loop_is_its_own_form() {
        let t = LoopTable::trivial();
        assert_eq!(canonical_form(&t).bytes(), t.cells());
    }

    #[test]
    fn z9_and_z3xz3_differ() {
        assert!(are_isomorphic(&groups::cyclic(9), &groups::z3xz3()).is_none());
        let map = are_isomorphic(&groups::z3xz3(), &groups::z3xz3()).unwrap();
        assert!(is_isomorphism(&groups::z3xz3(), &groups::z3xz3(), &map));
    }

    #[test]
    fn cycle_types_cover_partitions() {
        // n = 6: first cycle 6 | 4+2 | 3+3 | 2+4, 2+2+2
        assert_eq!(translation_cycle_types(6).len(), 5);
        assert_eq!(row_form(&[3, 2]), vec![1, 2, 0, 4, 3]);
    }

    proptest! {
        #[test]
        fn relabelings_share_canonical_form(seed in any::<u64>(), which in 0usize..13) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut tables: Vec<LoopTable> = (1..=9).flat_map(groups::abelian_groups).collect();
            tables.push(groups::symmetric3());
            let q = &tables[which % tables.len()];
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut rest: Vec<usize> = (1..q.order()).collect();
            rest.shuffle(&mut rng);
            let mut perm = vec![0];
            perm.extend(rest);
            let r = q.relabel(&perm);
            prop_assert_eq!(canonical_form(q), canonical_form(&r));
            let map = are_isomorphic(q, &r).unwrap();
            prop_assert!(is_isomorphism(q, &r, &map));
        }
    }
}
