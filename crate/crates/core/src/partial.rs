//! Tables with holes.

use crate::error::{Error, Line, Result};
use crate::table::{parse_grid, ElementId, LoopTable, MAX_ORDER};

pub(crate) const HOLE: u8 = u8::MAX;

/// A partially filled multiplication table with per-cell candidate sets.
///
/// Filled cells have singleton candidate sets; holes keep every value not yet
/// used in their row or column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    order: usize,
    cells: Vec<u8>,
    domains: Vec<u32>,
}

impl PartialTable {
    /// An order-`n` table with every cell a hole.
    pub fn empty(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, cap: MAX_ORDER });
        }
        let full = if order == 32 { u32::MAX } else { (1u32 << order) - 1 };
        Ok(PartialTable { order, cells: vec![HOLE; order * order], domains: vec![full; order * order] })
    }

    /// An order-`n` table with row 0 and column 0 filled as the identity.
    pub fn with_identity(order: usize) -> Result<Self> {
        let mut p = Self::empty(order)?;
        for i in 0..order {
            p.set(0, i, i)?;
            if i > 0 {
                p.set(i, 0, i)?;
            }
        }
        Ok(p)
    }

    pub fn from_table(q: &LoopTable) -> Self {
        let n = q.order();
        let mut p = Self::empty(n).expect("valid order");
        p.cells.copy_from_slice(q.cells());
        for (d, &v) in p.domains.iter_mut().zip(q.cells()) {
            *d = 1 << v;
        }
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: ElementId, c: ElementId) -> Option<ElementId> {
        let v = self.cells[r * self.order + c];
        (v != HOLE).then_some(v as usize)
    }

    /// Candidate values of a cell as a bit set.
    pub fn domain(&self, r: ElementId, c: ElementId) -> u32 {
        self.domains[r * self.order + c]
    }

    pub(crate) fn cells_raw(&self) -> &[u8] {
        &self.cells
    }

    pub(crate) fn cell_raw(&self, idx: usize) -> u8 {
        self.cells[idx]
    }

    pub(crate) fn domain_raw(&self, idx: usize) -> u32 {
        self.domains[idx]
    }

    pub(crate) fn domain_mut(&mut self, idx: usize) -> &mut u32 {
        &mut self.domains[idx]
    }

    pub(crate) fn fill_raw(&mut self, idx: usize, v: u8) {
        self.cells[idx] = v;
        self.domains[idx] = 1 << v;
    }

    /// Fills a cell, removing the value from the candidate sets of its row
    /// and column. Refuses values already used in that row or column.
    pub fn set(&mut self, r: ElementId, c: ElementId, v: ElementId) -> Result<()> {
        let n = self.order;
        if r >= n || c >= n || v >= n {
            return Err(Error::Malformed(format!("cell ({r},{c}) = {v} out of range")));
        }
        let idx = r * n + c;
        match self.get(r, c) {
            Some(old) if old == v => return Ok(()),
            Some(old) => {
                return Err(Error::InconsistentPartial(format!(
                    "cell ({r},{c}) already holds {old}, cannot set {v}"
                )))
            }
            None => {}
        }
        if self.domains[idx] & (1 << v) == 0 {
            return Err(Error::InconsistentPartial(format!(
                "value {v} already used in row {r} or column {c}"
            )));
        }
        self.fill_raw(idx, v as u8);
        for k in 0..n {
            if self.cells[r * n + k] == HOLE {
                self.domains[r * n + k] &= !(1 << v);
            }
            if self.cells[k * n + c] == HOLE {
                self.domains[k * n + c] &= !(1 << v);
            }
        }
        Ok(())
    }

    pub fn holes(&self) -> usize {
        self.cells.iter().filter(|&&v| v == HOLE).count()
    }

    pub fn is_complete(&self) -> bool {
        self.holes() == 0
    }

    /// Checks that no row or column repeats a filled value.
    pub fn check_consistent(&self) -> Result<()> {
        let n = self.order;
        for i in 0..n {
            let (mut row, mut col) = (0u32, 0u32);
            for j in 0..n {
                if let Some(v) = self.get(i, j) {
                    if row & (1 << v) != 0 {
                        return Err(Error::NotLatin { line: Line::Row, index: i, value: v });
                    }
                    row |= 1 << v;
                }
                if let Some(v) = self.get(j, i) {
                    if col & (1 << v) != 0 {
                        return Err(Error::NotLatin { line: Line::Column, index: i, value: v });
                    }
                    col |= 1 << v;
                }
            }
        }
        Ok(())
    }

    /// The completed table, validated as a loop.
    pub fn to_loop_table(&self) -> Result<LoopTable> {
        if !self.is_complete() {
            return Err(Error::Malformed(format!("{} holes remain", self.holes())));
        }
        LoopTable::from_cells(self.order, self.cells.clone())
    }

    /// Parses the `.loop` layout with `.` marking holes.
    pub fn parse(text: &str) -> Result<Self> {
        let (order, rows) = parse_grid(text, |tok, _| {
            if tok == "." {
                Ok(None)
            } else {
                tok.parse::<usize>()
                    .map(Some)
                    .map_err(|_| Error::Malformed(format!("bad entry {tok:?}")))
            }
        })?;
        let mut p = Self::empty(order)?;
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if let Some(v) = *v {
                    if v >= order {
                        return Err(Error::Malformed(format!("entry {v} out of range")));
                    }
                    p.cells[i * order + j] = v as u8;
                }
            }
        }
        p.check_consistent()?;
        let cells = std::mem::replace(&mut p.cells, vec![HOLE; order * order]);
        for (idx, v) in cells.into_iter().enumerate() {
            if v != HOLE {
                p.set(idx / order, idx % order, v as usize)?;
            }
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for i in 0..self.order {
            let line: Vec<String> = (0..self.order)
                .map(|j| self.get(i, j).map_or_else(|| ".".to_string(), |v| v.to_string()))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
