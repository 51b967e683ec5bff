//! Right-associated powers and bracketing analysis.
//!
//! `x^k` always means the right-associated term `x(x(⋯(x·e)⋯))`. Whether the
//! power is *well defined* is decided by collecting the value of every
//! bracketing of `k` copies of `x` into a bit set.

use serde::Serialize;

use crate::subloop::monogenic_subloop;
use crate::table::{ElementId, LoopTable, IDENTITY};

/// A set of elements of a table of order at most 32.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn singleton(x: ElementId) -> Self {
        ElementSet(1 << x)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn insert(&mut self, x: ElementId) {
        self.0 |= 1 << x;
    }

    pub fn contains(self, x: ElementId) -> bool {
        self.0 & (1 << x) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The sole member, if the set is a singleton.
    pub fn single(self) -> Option<ElementId> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = ElementId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// `{a·b : a ∈ self, b ∈ other}`.
    pub fn product(self, other: Self, q: &LoopTable) -> Self {
        let mut out = ElementSet::EMPTY;
        for a in self.iter() {
            for b in other.iter() {
                out.insert(q.mul(a, b));
            }
        }
        out
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// The right-associated power `x^k`. Negative exponents are powers of the
/// right inverse: `x^{-k} = (x^{-1})^k`.
pub fn rpow(q: &LoopTable, x: ElementId, k: i64) -> ElementId {
    let base = if k < 0 { q.inverse(x) } else { x };
    let mut acc = IDENTITY;
    for _ in 0..k.unsigned_abs() {
        acc = q.mul(base, acc);
    }
    acc
}

/// Default exponent horizon for a table of the given order.
pub fn default_max_exp(order: usize) -> usize {
    2 * order + 8
}

/// Powers of one element together with the value sets of all bracketings.
#[derive(Clone, Debug, Serialize)]
pub struct PowerProfile {
    pub element: ElementId,
    pub max_exp: usize,
    /// `rpow[k] = x^k` for `0 ≤ k ≤ max_exp`.
    pub rpow: Vec<ElementId>,
    /// Index `k` holds the values of all bracketings of `k` factors; index 0
    /// is the empty product `{e}`.
    pub bracket_sets: Vec<ElementSet>,
    /// Index `k` is true iff `bracket_sets[k]` is a singleton.
    pub well_defined: Vec<bool>,
    pub inverse: ElementId,
    pub subloop_order: usize,
}

impl PowerProfile {
    pub fn rpow(&self, k: usize) -> ElementId {
        self.rpow[k]
    }

    pub fn is_well_defined(&self, k: usize) -> bool {
        self.well_defined[k]
    }

    /// Smallest exponent whose power depends on the bracketing.
    pub fn first_ill_defined(&self) -> Option<usize> {
        (1..=self.max_exp).find(|&k| !self.well_defined[k])
    }

    /// Powers `1..=k` are all well defined.
    pub fn well_defined_through(&self, k: usize) -> bool {
        (1..=k.min(self.max_exp)).all(|j| self.well_defined[j])
    }
}

/// Computes the power profile of `x` up to `max_exp` factors.
///
/// `S_1 = {x}` and `S_k = ⋃_{1≤i<k} S_i · S_{k−i}`, which enumerates the
/// values of every binary bracketing of `k` copies of `x`.
pub fn bracket_sets(q: &LoopTable, x: ElementId, max_exp: usize) -> PowerProfile {
    assert!(max_exp >= 1, "max_exp must be at least 1");
    let mut sets = vec![ElementSet::singleton(IDENTITY), ElementSet::singleton(x)];
    for k in 2..=max_exp {
        let mut s = ElementSet::EMPTY;
        for i in 1..k {
            s = s.union(sets[i].product(sets[k - i], q));
        }
        sets.push(s);
    }
    let mut powers = Vec::with_capacity(max_exp + 1);
    let mut acc = IDENTITY;
    powers.push(acc);
    for _ in 0..max_exp {
        acc = q.mul(x, acc);
        powers.push(acc);
    }
    let well_defined = sets.iter().map(|s| s.len() == 1).collect();
    PowerProfile {
        element: x,
        max_exp,
        rpow: powers,
        bracket_sets: sets,
        well_defined,
        inverse: q.inverse(x),
        subloop_order: monogenic_subloop(q, x).len(),
    }
}

/// Power via the binary decomposition `x^n = x^{a_0}(x^{2a_1}(⋯(x^{2^k a_k})))`
/// over the set bits of `n`, each `x^{2^i}` taken right-associated.
pub fn binary_power(q: &LoopTable, x: ElementId, n: u64) -> ElementId {
    if n == 0 {
        return IDENTITY;
    }
    let top = 63 - n.leading_zeros();
    let mut acc = rpow(q, x, 1i64 << top);
    for bit in (0..top).rev() {
        if n & (1 << bit) != 0 {
            acc = q.mul(rpow(q, x, 1i64 << bit), acc);
        }
    }
    acc
}
