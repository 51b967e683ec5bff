//! Standard group tables used as fixtures and reference points.

use crate::table::LoopTable;

/// The cyclic group `Z_n` with `i·j = (i + j) mod n`.
pub fn cyclic(n: usize) -> LoopTable {
    assert!(n >= 1);
    let cells = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u8))
        .collect();
    LoopTable::from_cells_unchecked(n, cells)
}

/// Direct product; the pair `(i, j)` is labeled `i * |b| + j`.
pub fn direct_product(a: &LoopTable, b: &LoopTable) -> LoopTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut cells = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            cells[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u8;
        }
    }
    LoopTable::from_cells_unchecked(n, cells)
}

/// `Z_3 × Z_3`.
pub fn z3xz3() -> LoopTable {
    direct_product(&cyclic(3), &cyclic(3))
}

/// The symmetric group on three letters, the smallest non-commutative group.
pub fn symmetric3() -> LoopTable {
    // 0 = id, 1 = (123), 2 = (132), 3 = (12), 4 = (13), 5 = (23); x·y applies y first.
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let mut cells = vec![0u8; 36];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let comp = [p[q[0]], p[q[1]], p[q[2]]];
            cells[i * 6 + j] = index(comp) as u8;
        }
    }
    LoopTable::from_cells_unchecked(6, cells)
}

/// All abelian groups of order `n` for `n <= 9`, as products of cyclic groups.
pub fn abelian_groups(n: usize) -> Vec<LoopTable> {
    let mut out = vec![cyclic(n)];
    match n {
        4 => out.push(direct_product(&cyclic(2), &cyclic(2))),
        8 => {
            out.push(direct_product(&cyclic(2), &cyclic(4)));
            out.push(direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(2))));
        }
        9 => out.push(z3xz3()),
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid_groups() {
        for n in 1..=9 {
            for g in abelian_groups(n) {
                let checked = LoopTable::from_cells(g.order(), g.cells().to_vec()).unwrap();
                assert!(checked.is_commutative() && checked.is_associative());
            }
        }
        let s3 = LoopTable::from_cells(6, symmetric3().cells().to_vec()).unwrap();
        assert!(s3.is_associative() && !s3.is_commutative());
    }
}
