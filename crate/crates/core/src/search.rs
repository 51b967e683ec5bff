//! Constraint propagation and backtracking over partial tables.
//!
//! Propagation per filled cell: value elimination along the row and column
//! (with naked and hidden singles), mirroring under commutativity, diagonal
//! transversal elimination, `x·x² = e` forcing, and the Jordan identity
//! `x²(yx) = (x²y)x` which forces the last undetermined cell of an instance.

use serde::Serialize;

use crate::partial::{PartialTable, HOLE};
use crate::table::LoopTable;

/// Which structural constraints the engine propagates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Constraints {
    pub commutative: bool,
    pub jordan: bool,
    /// The main diagonal is a permutation (forced for odd-order commutative loops).
    pub diagonal_transversal: bool,
    /// Every `x` satisfies `x·x² = e`.
    pub exponent3: bool,
}

/// Reason a branch was abandoned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conflict {
    Latin,
    Jordan,
    Diagonal,
    Exponent3,
    Symmetry,
}

/// Prune counts broken down by constraint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneCounts {
    pub latin: u64,
    pub jordan: u64,
    pub diagonal: u64,
    pub exponent3: u64,
    pub symmetry: u64,
}

impl PruneCounts {
    pub fn record(&mut self, c: Conflict) {
        match c {
            Conflict::Latin => self.latin += 1,
            Conflict::Jordan => self.jordan += 1,
            Conflict::Diagonal => self.diagonal += 1,
            Conflict::Exponent3 => self.exponent3 += 1,
            Conflict::Symmetry => self.symmetry += 1,
        }
    }

    pub fn merge(&mut self, other: &PruneCounts) {
        self.latin += other.latin;
        self.jordan += other.jordan;
        self.diagonal += other.diagonal;
        self.exponent3 += other.exponent3;
        self.symmetry += other.symmetry;
    }

    pub fn total(&self) -> u64 {
        self.latin + self.jordan + self.diagonal + self.exponent3 + self.symmetry
    }
}

type Forced = (u8, u8, u8, Conflict);

/// A partial table plus the bookkeeping the propagator needs. Cloned at
/// every branch; never shared.
#[derive(Clone, Debug)]
pub struct Propagator {
    table: PartialTable,
    n: usize,
    cons: Constraints,
    /// `row_pos[r*n + v]` is the column holding `v` in row `r`.
    row_pos: Vec<u8>,
    /// `col_pos[c*n + v]` is the row holding `v` in column `c`.
    col_pos: Vec<u8>,
}

impl Propagator {
    /// Wraps a consistent partial table and propagates its filled cells.
    pub fn new(table: &PartialTable, cons: Constraints) -> Result<Self, Conflict> {
        let n = table.order();
        let mut fresh = PartialTable::empty(n).expect("order already validated");
        if cons.diagonal_transversal {
            // the identity owns value 0 on the diagonal
            for i in 1..n {
                *fresh.domain_mut(i * n + i) &= !1;
            }
        }
        let mut p = Propagator {
            table: fresh,
            n,
            cons,
            row_pos: vec![HOLE; n * n],
            col_pos: vec![HOLE; n * n],
        };
        for r in 0..n {
            for c in 0..n {
                if let Some(v) = table.get(r, c) {
                    p.assign(r, c, v)?;
                }
            }
        }
        Ok(p)
    }

    pub fn table(&self) -> &PartialTable {
        &self.table
    }

    pub fn constraints(&self) -> Constraints {
        self.cons
    }

    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        self.table.get(r, c)
    }

    #[inline]
    fn cell(&self, r: usize, c: usize) -> u8 {
        self.table.cell_raw(r * self.n + c)
    }

    /// Fills `(r, c)` with `v` and propagates to a fixed point.
    pub fn assign(&mut self, r: usize, c: usize, v: usize) -> Result<(), Conflict> {
        let mut queue: Vec<Forced> = vec![(r as u8, c as u8, v as u8, Conflict::Latin)];
        while let Some((r, c, v, why)) = queue.pop() {
            self.place(r as usize, c as usize, v, why, &mut queue)?;
        }
        Ok(())
    }

    /// Removes `v` from the candidates of `(r, c)`, and of its mirror under
    /// commutativity, then propagates.
    pub fn exclude(&mut self, r: usize, c: usize, v: usize) -> Result<(), Conflict> {
        let mut queue: Vec<Forced> = Vec::new();
        let cells = if self.cons.commutative && r != c { vec![(r, c), (c, r)] } else { vec![(r, c)] };
        for (i, j) in cells {
            match self.cell(i, j) {
                HOLE => self.restrict(i, j, !(1u32 << v), Conflict::Latin, &mut queue)?,
                cur if cur as usize == v => return Err(Conflict::Latin),
                _ => {}
            }
        }
        while let Some((r, c, v, why)) = queue.pop() {
            self.place(r as usize, c as usize, v, why, &mut queue)?;
        }
        Ok(())
    }

    fn place(
        &mut self,
        r: usize,
        c: usize,
        v: u8,
        why: Conflict,
        queue: &mut Vec<Forced>,
    ) -> Result<(), Conflict> {
        let n = self.n;
        let cur = self.cell(r, c);
        if cur != HOLE {
            return if cur == v { Ok(()) } else { Err(why) };
        }
        if self.table.domain_raw(r * n + c) & (1 << v) == 0 {
            return Err(why);
        }
        self.fill(r, c, v, queue)?;
        if self.cons.commutative && r != c {
            let mirror = self.cell(c, r);
            if mirror != HOLE {
                if mirror != v {
                    return Err(Conflict::Latin);
                }
            } else {
                if self.table.domain_raw(c * n + r) & (1 << v) == 0 {
                    return Err(Conflict::Latin);
                }
                self.fill(c, r, v, queue)?;
            }
        }
        if r == c {
            if self.cons.diagonal_transversal {
                for k in 0..n {
                    if k != r && self.cell(k, k) == HOLE {
                        self.restrict(k, k, !(1u32 << v), Conflict::Diagonal, queue)?;
                    }
                }
            }
            if self.cons.exponent3 {
                queue.push((r as u8, v, 0, Conflict::Exponent3));
            }
        }
        if self.cons.jordan {
            self.jordan_touch(r, c, queue)?;
        }
        Ok(())
    }

    /// Writes one cell and eliminates its value from row and column peers.
    fn fill(&mut self, r: usize, c: usize, v: u8, queue: &mut Vec<Forced>) -> Result<(), Conflict> {
        let n = self.n;
        if self.row_pos[r * n + v as usize] != HOLE || self.col_pos[c * n + v as usize] != HOLE {
            return Err(Conflict::Latin);
        }
        self.table.fill_raw(r * n + c, v);
        self.row_pos[r * n + v as usize] = c as u8;
        self.col_pos[c * n + v as usize] = r as u8;
        let bit = 1u32 << v;
        for k in 0..n {
            if k != c && self.cell(r, k) == HOLE && self.table.domain_raw(r * n + k) & bit != 0 {
                self.restrict(r, k, !bit, Conflict::Latin, queue)?;
                self.hidden_single_col(k, v, queue)?;
            }
            if k != r && self.cell(k, c) == HOLE && self.table.domain_raw(k * n + c) & bit != 0 {
                self.restrict(k, c, !bit, Conflict::Latin, queue)?;
                self.hidden_single_row(k, v, queue)?;
            }
        }
        Ok(())
    }

    /// Intersects a hole's domain with `mask`; empty is a conflict, a
    /// singleton is queued for assignment.
    fn restrict(
        &mut self,
        r: usize,
        c: usize,
        mask: u32,
        why: Conflict,
        queue: &mut Vec<Forced>,
    ) -> Result<(), Conflict> {
        let d = self.table.domain_mut(r * self.n + c);
        let before = *d;
        *d &= mask;
        let after = *d;
        if after == 0 {
            return Err(why);
        }
        if after != before && after.count_ones() == 1 {
            queue.push((r as u8, c as u8, after.trailing_zeros() as u8, why));
        }
        Ok(())
    }

    fn hidden_single_row(&mut self, r: usize, v: u8, queue: &mut Vec<Forced>) -> Result<(), Conflict> {
        let n = self.n;
        if self.row_pos[r * n + v as usize] != HOLE {
            return Ok(());
        }
        let bit = 1u32 << v;
        let mut spot = None;
        for k in 0..n {
            if self.table.domain_raw(r * n + k) & bit != 0 && self.cell(r, k) == HOLE {
                if spot.is_some() {
                    return Ok(());
                }
                spot = Some(k);
            }
        }
        match spot {
            None => Err(Conflict::Latin),
            Some(k) => {
                queue.push((r as u8, k as u8, v, Conflict::Latin));
                Ok(())
            }
        }
    }

    fn hidden_single_col(&mut self, c: usize, v: u8, queue: &mut Vec<Forced>) -> Result<(), Conflict> {
        let n = self.n;
        if self.col_pos[c * n + v as usize] != HOLE {
            return Ok(());
        }
        let bit = 1u32 << v;
        let mut spot = None;
        for k in 0..n {
            if self.table.domain_raw(k * n + c) & bit != 0 && self.cell(k, c) == HOLE {
                if spot.is_some() {
                    return Ok(());
                }
                spot = Some(k);
            }
        }
        match spot {
            None => Err(Conflict::Latin),
            Some(k) => {
                queue.push((k as u8, c as u8, v, Conflict::Latin));
                Ok(())
            }
        }
    }

    /// Restricts a hole and, under commutativity, its mirror.
    fn restrict_sym(
        &mut self,
        r: usize,
        c: usize,
        mask: u32,
        queue: &mut Vec<Forced>,
    ) -> Result<(), Conflict> {
        if self.cell(r, c) != HOLE {
            return if mask & (1 << self.cell(r, c)) != 0 { Ok(()) } else { Err(Conflict::Jordan) };
        }
        self.restrict(r, c, mask, Conflict::Jordan, queue)?;
        if self.cons.commutative && r != c {
            self.restrict(c, r, mask, Conflict::Jordan, queue)?;
        }
        Ok(())
    }

    /// Re-examines every Jordan instance that reads the freshly filled cell
    /// `(i, j)` or a position lookup in row/column `i` or `j`.
    fn jordan_touch(&mut self, i: usize, j: usize, queue: &mut Vec<Forced>) -> Result<(), Conflict> {
        let n = self.n;
        let mut xs: u32 = (1 << i) | (1 << j);
        for x in 0..n {
            let s = self.cell(x, x);
            if s != HOLE && (s as usize == i || s as usize == j) {
                xs |= 1 << x;
            }
        }
        while xs != 0 {
            let x = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            for y in 1..n {
                self.jordan_instance(x, y, queue)?;
            }
        }
        Ok(())
    }

    /// One instance `x²(yx) = (x²y)x`: with `a = x²`, `b = yx`, `d = a·y`
    /// the cells `(a, b)` and `(d, x)` must agree.
    fn jordan_instance(&mut self, x: usize, y: usize, queue: &mut Vec<Forced>) -> Result<(), Conflict> {
        let n = self.n;
        let a = self.cell(x, x);
        if a == HOLE {
            return Ok(());
        }
        let a = a as usize;
        let b = self.cell(y, x);
        let d = self.cell(a, y);
        match (b != HOLE, d != HOLE) {
            (true, true) => {
                let (b, d) = (b as usize, d as usize);
                let lhs = self.cell(a, b);
                let rhs = self.cell(d, x);
                match (lhs != HOLE, rhs != HOLE) {
                    (true, true) if lhs != rhs => return Err(Conflict::Jordan),
                    (true, true) => {}
                    (true, false) => queue.push((d as u8, x as u8, lhs, Conflict::Jordan)),
                    (false, true) => queue.push((a as u8, b as u8, rhs, Conflict::Jordan)),
                    (false, false) => {
                        let common =
                            self.table.domain_raw(a * n + b) & self.table.domain_raw(d * n + x);
                        self.restrict_sym(a, b, common, queue)?;
                        self.restrict_sym(d, x, common, queue)?;
                    }
                }
            }
            (true, false) => {
                let lhs = self.cell(a, b as usize);
                if lhs != HOLE {
                    // d·x = lhs pins d to the row holding lhs in column x
                    let row = self.col_pos[x * n + lhs as usize];
                    if row != HOLE {
                        queue.push((a as u8, y as u8, row, Conflict::Jordan));
                    }
                }
            }
            (false, true) => {
                let rhs = self.cell(d as usize, x);
                if rhs != HOLE {
                    // a·b = rhs pins b to the column holding rhs in row a
                    let col = self.row_pos[a * n + rhs as usize];
                    if col != HOLE {
                        queue.push((y as u8, x as u8, col, Conflict::Jordan));
                    }
                }
            }
            (false, false) => {}
        }
        Ok(())
    }

    /// First hole in row-major order; only the upper triangle is scanned
    /// under commutativity.
    pub fn next_hole(&self) -> Option<(usize, usize)> {
        let n = self.n;
        for r in 0..n {
            let start = if self.cons.commutative { r } else { 0 };
            for c in start..n {
                if self.cell(r, c) == HOLE {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn row_complete(&self, r: usize) -> bool {
        (0..self.n).all(|c| self.cell(r, c) != HOLE)
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.table.cells_raw()[r * self.n..(r + 1) * self.n]
    }

    pub fn is_complete(&self) -> bool {
        self.next_hole().is_none() && self.table.is_complete()
    }

    /// The completed table, if every cell is filled and it is a valid loop.
    pub fn to_table(&self) -> Option<LoopTable> {
        if !self.table.is_complete() {
            return None;
        }
        LoopTable::from_cells(self.n, self.table.cells_raw().to_vec()).ok()
    }
}

/// Counters collected by a depth-first search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchCounters {
    pub nodes_expanded: u64,
    pub prunes: PruneCounts,
}

impl SearchCounters {
    pub fn merge(&mut self, other: &SearchCounters) {
        self.nodes_expanded += other.nodes_expanded;
        self.prunes.merge(&other.prunes);
    }
}

/// Extra per-node pruning hook, e.g. symmetry breaking. Receives the state
/// after propagation and the set of rows it has already accepted; returns the
/// updated set, or `None` to prune.
pub type NodeFilter<'a> = dyn Fn(&Propagator, u64) -> Option<u64> + Sync + 'a;

/// Depth-first search over the holes of `state`. Calls `emit` for every
/// completed table; `emit` returns `false` to stop the search. Returns
/// `false` if stopped early.
pub fn dfs(
    state: &Propagator,
    accepted: u64,
    filter: Option<&NodeFilter<'_>>,
    counters: &mut SearchCounters,
    emit: &mut dyn FnMut(LoopTable) -> bool,
) -> bool {
    counters.nodes_expanded += 1;
    let Some((r, c)) = state.next_hole() else {
        return match state.to_table() {
            Some(t) => emit(t),
            None => true,
        };
    };
    let mut dom = state.table.domain_raw(r * state.n + c);
    while dom != 0 {
        let v = dom.trailing_zeros() as usize;
        dom &= dom - 1;
        let mut child = state.clone();
        if let Err(why) = child.assign(r, c, v) {
            counters.prunes.record(why);
            continue;
        }
        let accepted = match filter {
            Some(f) => match f(&child, accepted) {
                Some(a) => a,
                None => {
                    counters.prunes.record(Conflict::Symmetry);
                    continue;
                }
            },
            None => accepted,
        };
        if !dfs(&child, accepted, filter, counters, emit) {
            return false;
        }
    }
    true
}

/// Expands `state` until rows `0..=split_row` are complete and returns the
/// frontier nodes in search order, together with the completed tables met on
/// the way.
pub fn frontier(
    state: &Propagator,
    accepted: u64,
    split_row: usize,
    filter: Option<&NodeFilter<'_>>,
    counters: &mut SearchCounters,
) -> (Vec<(Propagator, u64)>, Vec<LoopTable>) {
    let mut nodes = Vec::new();
    let mut done = Vec::new();
    let mut stack = vec![(state.clone(), accepted)];
    // explicit stack, children pushed in reverse to keep search order
    while let Some((node, acc)) = stack.pop() {
        let split_done = (0..=split_row.min(node.n - 1)).all(|r| node.row_complete(r));
        if split_done {
            nodes.push((node, acc));
            continue;
        }
        counters.nodes_expanded += 1;
        let Some((r, c)) = node.next_hole() else {
            if let Some(t) = node.to_table() {
                done.push(t);
            }
            continue;
        };
        let mut dom = node.table.domain_raw(r * node.n + c);
        let mut children = Vec::new();
        while dom != 0 {
            let v = dom.trailing_zeros() as usize;
            dom &= dom - 1;
            let mut child = node.clone();
            if let Err(why) = child.assign(r, c, v) {
                counters.prunes.record(why);
                continue;
            }
            match filter {
                Some(f) => match f(&child, acc) {
                    Some(a) => children.push((child, a)),
                    None => counters.prunes.record(Conflict::Symmetry),
                },
                None => children.push((child, acc)),
            }
        }
        stack.extend(children.into_iter().rev());
    }
    (nodes, done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    fn count(cons: Constraints, n: usize) -> usize {
        let p = Propagator::new(&PartialTable::with_identity(n).unwrap(), cons).unwrap();
        let mut found = 0;
        let mut counters = SearchCounters::default();
        dfs(&p, 0, None, &mut counters, &mut |_| {
            found += 1;
            true
        });
        found
    }

    #[test]
    fn labeled_loop_counts() {
        // reduced Latin squares of orders 1..=6
        let expected = [1, 1, 1, 4, 56, 9408];
        for (n, &e) in (1..=6).zip(expected.iter()) {
            assert_eq!(count(Constraints::default(), n), e, "order {n}");
        }
    }

    #[test]
    fn jordan_forcing_rejects_bad_square() {
        let cons = Constraints { commutative: true, jordan: true, ..Default::default() };
        let z = groups::cyclic(5);
        let p = Propagator::new(&PartialTable::from_table(&z), cons).unwrap();
        assert!(p.to_table().is_some());
    }

    #[test]
    fn exponent3_forces_inverse_cell() {
        let cons = Constraints { commutative: true, exponent3: true, ..Default::default() };
        let mut p = Propagator::new(&PartialTable::with_identity(3).unwrap(), cons).unwrap();
        p.assign(1, 1, 2).unwrap();
        assert_eq!(p.get(1, 2), Some(0));
        assert_eq!(p.to_table().unwrap(), groups::cyclic(3));
    }

    #[test]
    fn diagonal_transversal_rejects_involution() {
        let cons = Constraints { commutative: true, diagonal_transversal: true, ..Default::default() };
        let mut p = Propagator::new(&PartialTable::with_identity(5).unwrap(), cons).unwrap();
        assert_eq!(p.assign(1, 1, 0), Err(Conflict::Latin));
        assert!(p.table().domain(1, 1) & 1 == 0);
    }

    #[test]
    fn exclude_mirrors_and_propagates() {
        let cons = Constraints { commutative: true, ..Default::default() };
        let mut p = Propagator::new(&PartialTable::with_identity(4).unwrap(), cons).unwrap();
        p.exclude(1, 2, 3).unwrap();
        assert_eq!(p.table().domain(2, 1) & (1 << 3), 0);
        // order 3 has a single loop, so its forced cell cannot lose its value
        let mut p = Propagator::new(&PartialTable::with_identity(3).unwrap(), cons).unwrap();
        assert_eq!(p.exclude(1, 2, 0), Err(Conflict::Latin));
    }
}
