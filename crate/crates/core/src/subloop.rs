//! Subloops, the main diagonal, involutions and square roots.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::power::ElementSet;
use crate::table::{ElementId, LoopTable, IDENTITY};

/// Orders above this are refused by [`all_subloops`] unless a larger bound is
/// passed explicitly.
pub const DEFAULT_SUBLOOP_BOUND: usize = 12;

/// A multiplicatively closed subset containing the identity. In a finite
/// quasigroup such a subset is closed under both divisions as well.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subloop {
    carrier: Vec<ElementId>,
    generator: Option<ElementId>,
}

impl Subloop {
    fn from_set(set: ElementSet, generator: Option<ElementId>) -> Self {
        Subloop { carrier: set.iter().collect(), generator }
    }

    pub fn carrier(&self) -> &[ElementId] {
        &self.carrier
    }

    pub fn generator(&self) -> Option<ElementId> {
        self.generator
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.carrier.binary_search(&x).is_ok()
    }

    pub fn as_set(&self) -> ElementSet {
        self.carrier.iter().copied().collect()
    }

    /// The subloop as a table of its own, relabeled along the sorted carrier.
    pub fn to_table(&self, q: &LoopTable) -> LoopTable {
        let k = self.carrier.len();
        let index = |v: ElementId| self.carrier.binary_search(&v).expect("closed subset");
        let mut cells = Vec::with_capacity(k * k);
        for &a in &self.carrier {
            for &b in &self.carrier {
                cells.push(index(q.mul(a, b)) as u8);
            }
        }
        LoopTable::from_cells_unchecked(k, cells)
    }
}

/// Smallest mul-closed set containing `seed` and `e`.
pub fn closure(q: &LoopTable, seed: ElementSet) -> ElementSet {
    let mut set = seed;
    set.insert(IDENTITY);
    loop {
        let next = set.union(set.product(set, q));
        if next == set {
            return set;
        }
        set = next;
    }
}

/// The subloop `⟨x⟩` generated by `x`.
pub fn monogenic_subloop(q: &LoopTable, x: ElementId) -> Subloop {
    Subloop::from_set(closure(q, ElementSet::singleton(x)), Some(x))
}

/// Every subloop of `q`, smallest first.
///
/// Closes all one- and two-generator subsets, then joins pairs of found
/// subloops until nothing new appears. Refuses orders above `bound`.
pub fn all_subloops(q: &LoopTable, bound: usize) -> Result<Vec<Subloop>> {
    let n = q.order();
    if n > bound {
        return Err(Error::OrderTooLarge { order: n, cap: bound });
    }
    let mut found: Vec<(ElementSet, Option<ElementId>)> = Vec::new();
    let push = |set: ElementSet, generator: Option<ElementId>, found: &mut Vec<_>| {
        if !found.iter().any(|(s, _)| *s == set) {
            found.push((set, generator));
        }
    };
    for x in 0..n {
        push(closure(q, ElementSet::singleton(x)), Some(x), &mut found);
    }
    for x in 1..n {
        for y in x + 1..n {
            let seed: ElementSet = [x, y].into_iter().collect();
            push(closure(q, seed), None, &mut found);
        }
    }
    let mut start = 0;
    while start < found.len() {
        let end = found.len();
        for i in 0..end {
            for j in start.max(i + 1)..end {
                let joined = closure(q, found[i].0.union(found[j].0));
                push(joined, None, &mut found);
            }
        }
        start = end;
    }
    let mut out: Vec<Subloop> =
        found.into_iter().map(|(s, g)| Subloop::from_set(s, g)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.carrier.cmp(&b.carrier)));
    Ok(out)
}

/// Number of times each element occurs on the main diagonal, indexed by element.
pub fn diagonal_stats(q: &LoopTable) -> Vec<usize> {
    let mut counts = vec![0; q.order()];
    for x in q.elements() {
        counts[q.square(x)] += 1;
    }
    counts
}

/// Some `x ≠ e` squares to `e`.
pub fn has_nontrivial_involution(q: &LoopTable) -> bool {
    (1..q.order()).any(|x| q.square(x) == IDENTITY)
}

/// The inverse of the squaring map, indexed by element, when squaring is a
/// bijection.
pub fn square_root_map(q: &LoopTable) -> Result<Vec<ElementId>> {
    let n = q.order();
    let mut root = vec![usize::MAX; n];
    for x in q.elements() {
        let s = q.square(x);
        if root[s] != usize::MAX {
            return Err(Error::NoSquareRoot { order: n });
        }
        root[s] = x;
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    /// Brute-force oracle: every subset containing `e` that is mul-closed.
    fn subloops_by_subsets(q: &LoopTable) -> Vec<usize> {
        let n = q.order();
        let mut sizes = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let set = ElementSet::from_iter((0..n).filter(|i| mask & (1 << i) != 0));
            if set.product(set, q) == set {
                sizes.push(set.len());
            }
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn subloops_of_z3xz3() {
        let q = groups::z3xz3();
        let sizes: Vec<usize> = all_subloops(&q, DEFAULT_SUBLOOP_BOUND)
            .unwrap()
            .iter()
            .map(Subloop::len)
            .collect();
        assert_eq!(sizes, vec![1, 3, 3, 3, 3, 9]);
        assert_eq!(sizes, subloops_by_subsets(&q));
    }

    #[test]
    fn subloops_agree_with_subset_oracle() {
        for n in 1..=9 {
            for g in groups::abelian_groups(n) {
                let sizes: Vec<usize> =
                    all_subloops(&g, 12).unwrap().iter().map(Subloop::len).collect();
                assert_eq!(sizes, subloops_by_subsets(&g), "order {n}");
            }
        }
        let s3 = groups::symmetric3();
        let sizes: Vec<usize> = all_subloops(&s3, 12).unwrap().iter().map(Subloop::len).collect();
        assert_eq!(sizes, subloops_by_subsets(&s3));
    }

    #[test]
    fn trivial_and_bound() {
        let t = LoopTable::trivial();
        let subs = all_subloops(&t, DEFAULT_SUBLOOP_BOUND).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].carrier(), &[0]);
        assert_eq!(monogenic_subloop(&t, 0).len(), 1);
        assert!(matches!(
            all_subloops(&groups::cyclic(13), DEFAULT_SUBLOOP_BOUND),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn diagonal_and_square_roots() {
        let z4 = groups::cyclic(4);
        assert_eq!(diagonal_stats(&z4)[0], 2);
        assert!(has_nontrivial_involution(&z4));
        assert!(matches!(square_root_map(&z4), Err(Error::NoSquareRoot { order: 4 })));
        assert!(has_nontrivial_involution(&groups::cyclic(2)));
        assert_eq!(diagonal_stats(&LoopTable::trivial()), vec![1]);

        let z9 = groups::cyclic(9);
        let root = square_root_map(&z9).unwrap();
        assert_eq!(root[0], 0);
        for x in z9.elements() {
            assert_eq!(z9.square(root[x]), x);
        }
        assert!(!has_nontrivial_involution(&z9));
    }
}
