//! Validated multiplication tables of finite loops.
//!
//! Element `0` is always the neutral element. Tables are stored row-major
//! as bytes, so orders are limited to [`MAX_ORDER`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Line, Result};

/// Index of an element in `[0, order)`. Index `0` is the neutral element.
pub type ElementId = usize;

/// The neutral element of every table.
pub const IDENTITY: ElementId = 0;

/// Largest order representable (domains are `u32` bit sets).
pub const MAX_ORDER: usize = 32;

/// A loop multiplication table: a Latin square whose row 0 and column 0 are
/// the identity permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopTable {
    order: usize,
    cells: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl LoopTable {
    /// Builds a table from explicit rows, checking every loop invariant.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Malformed("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, cap: MAX_ORDER });
        }
        let mut cells = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::Malformed(format!("entry {v} out of range in row {i}")));
                }
                cells.push(v as u8);
            }
        }
        Self::from_cells(order, cells)
    }

    /// Builds a table from row-major cells, checking every loop invariant.
    pub fn from_cells(order: usize, cells: Vec<u8>) -> Result<Self> {
        if order == 0 || cells.len() != order * order {
            return Err(Error::Malformed(format!(
                "expected {} cells for order {order}, got {}",
                order * order,
                cells.len()
            )));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, cap: MAX_ORDER });
        }
        if let Some(&v) = cells.iter().find(|&&v| v as usize >= order) {
            return Err(Error::Malformed(format!("entry {v} out of range")));
        }
        let table = LoopTable { order, cells };
        table.validate()?;
        Ok(table)
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        LoopTable { order, cells }
    }

    fn validate(&self) -> Result<()> {
        let n = self.order;
        for i in 0..n {
            let mut seen = 0u64;
            for j in 0..n {
                let v = self.mul(i, j);
                if seen & (1 << v) != 0 {
                    return Err(Error::NotLatin { line: Line::Row, index: i, value: v });
                }
                seen |= 1 << v;
            }
        }
        for j in 0..n {
            let mut seen = 0u64;
            for i in 0..n {
                let v = self.mul(i, j);
                if seen & (1 << v) != 0 {
                    return Err(Error::NotLatin { line: Line::Column, index: j, value: v });
                }
                seen |= 1 << v;
            }
        }
        if (0..n).any(|j| self.mul(IDENTITY, j) != j) {
            return Err(Error::NoIdentity { line: Line::Row });
        }
        if (0..n).any(|i| self.mul(i, IDENTITY) != i) {
            return Err(Error::NoIdentity { line: Line::Column });
        }
        Ok(())
    }

    /// The trivial loop `{e}`.
    pub fn trivial() -> Self {
        LoopTable { order: 1, cells: vec![0] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Row-major cells; entry `i * order + j` is `i·j`.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn row(&self, x: ElementId) -> &[u8] {
        &self.cells[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.cells[x * self.order + y] as usize
    }

    /// The unique `x` with `a·x = b`.
    pub fn ldiv(&self, a: ElementId, b: ElementId) -> ElementId {
        self.row(a)
            .iter()
            .position(|&v| v as usize == b)
            .expect("rows of a loop table are permutations")
    }

    /// The unique `y` with `y·a = b`.
    pub fn rdiv(&self, a: ElementId, b: ElementId) -> ElementId {
        (0..self.order)
            .find(|&y| self.mul(y, a) == b)
            .expect("columns of a loop table are permutations")
    }

    /// The right inverse: the unique `y` with `x·y = e`. In a commutative
    /// loop this is the two-sided inverse.
    pub fn inverse(&self, x: ElementId) -> ElementId {
        self.ldiv(x, IDENTITY)
    }

    pub fn square(&self, x: ElementId) -> ElementId {
        self.mul(x, x)
    }

    pub fn commutativity_witness(&self) -> Option<(ElementId, ElementId)> {
        let n = self.order;
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.mul(x, y) != self.mul(y, x))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    /// First pair `(x, y)` with `x²(yx) != (x²y)x`, scanning `x` then `y`.
    /// Does not require commutativity.
    pub fn jordan_witness(&self) -> Option<(ElementId, ElementId)> {
        let n = self.order;
        for x in 0..n {
            let sq = self.square(x);
            for y in 0..n {
                if self.mul(sq, self.mul(y, x)) != self.mul(self.mul(sq, y), x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Commutative and satisfying `x²(yx) = (x²y)x` for all `x, y`.
    pub fn is_jordan(&self) -> bool {
        self.is_commutative() && self.jordan_witness().is_none()
    }

    pub fn associativity_witness(&self) -> Option<(ElementId, ElementId, ElementId)> {
        let n = self.order;
        for x in 1..n {
            for y in 1..n {
                let xy = self.mul(x, y);
                for z in 1..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Every element satisfies `x·x² = e`.
    pub fn is_exponent3(&self) -> bool {
        self.elements().all(|x| self.mul(x, self.square(x)) == IDENTITY)
    }

    /// The table of the same loop with every element `x` renamed to
    /// `perm[x]`. `perm` must be a permutation fixing `0`.
    pub fn relabel(&self, perm: &[ElementId]) -> LoopTable {
        let n = self.order;
        assert_eq!(perm.len(), n);
        assert_eq!(perm[IDENTITY], IDENTITY, "relabelings must fix the identity");
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[perm[i] * n + perm[j]] = perm[self.mul(i, j)] as u8;
            }
        }
        LoopTable { order: n, cells }
    }

    /// Parses either the `.loop` text format or the JSON form, chosen by the
    /// first non-blank character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_loop(text)
        }
    }

    /// Parses the `.loop` text format: a line with the order `n`, then `n`
    /// lines of `n` whitespace-separated entries.
    pub fn parse_loop(text: &str) -> Result<Self> {
        let (order, rows) = parse_grid(text, |tok, _| {
            tok.parse::<usize>()
                .map_err(|_| Error::Malformed(format!("bad entry {tok:?}")))
        })?;
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, cap: MAX_ORDER });
        }
        Self::from_rows(&rows)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: JsonTable =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        if parsed.table.len() != parsed.order {
            return Err(Error::Malformed(format!(
                "order {} but {} rows",
                parsed.order,
                parsed.table.len()
            )));
        }
        Self::from_rows(&parsed.table)
    }

    /// Serializes in the `.loop` text format, newline-terminated.
    pub fn to_loop_string(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for i in 0..self.order {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let json = JsonTable { order: self.order, table: self.rows() };
        let mut s = serde_json::to_string(&json).expect("table serializes");
        s.push('\n');
        s
    }

    /// 64-bit FNV-1a digest of the row-major cells.
    pub fn digest(&self) -> u64 {
        fnv1a(&self.cells)
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl std::fmt::Display for LoopTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_loop_string())
    }
}

/// Shared reader for the `.loop` grid layout. `entry` converts one token.
pub(crate) fn parse_grid<T>(
    text: &str,
    mut entry: impl FnMut(&str, usize) -> Result<T>,
) -> Result<(usize, Vec<Vec<T>>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Malformed("empty input".into()))?;
    let order: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("bad order line {header:?}")))?;
    if order == 0 {
        return Err(Error::Malformed("order must be positive".into()));
    }
    let mut rows = Vec::with_capacity(order);
    for i in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| Error::Malformed(format!("missing row {i}")))?;
        let row = line
            .split_whitespace()
            .map(|tok| entry(tok, order))
            .collect::<Result<Vec<T>>>()?;
        if row.len() != order {
            return Err(Error::Malformed(format!(
                "row {i} has {} entries, expected {order}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Malformed(format!("trailing content {extra:?}")));
    }
    Ok((order, rows))
}
