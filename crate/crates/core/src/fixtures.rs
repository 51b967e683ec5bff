//! Partial and total order-9 tables from the case analysis of Jordan loops
//! of order 9, written with symbolic entries.
//!
//! Exponent-3 labels: `e a a² b b² c c² d d²` are `0..=8`, with `c = ab`
//! and `d = a²b`. Cyclic labels: `x^k` is `k`.

use crate::error::{Error, Result};
use crate::partial::PartialTable;
use crate::table::{ElementId, LoopTable};

pub const E: ElementId = 0;
pub const A: ElementId = 1;
pub const A2: ElementId = 2;
pub const B: ElementId = 3;
pub const B2: ElementId = 4;
pub const C: ElementId = 5;
pub const C2: ElementId = 6;
pub const D: ElementId = 7;
pub const D2: ElementId = 8;

pub const EXPONENT3_NAMES: [&str; 9] = ["e", "a", "a²", "b", "b²", "c", "c²", "d", "d²"];

/// Square of an exponent-3 label: `a ↔ a²`, and so on.
pub fn square_label(v: ElementId) -> ElementId {
    match v {
        0 => 0,
        v if v % 2 == 1 => v + 1,
        v => v - 1,
    }
}

/// Four cyclic blocks on the diagonal, identity row and column.
const TABLE_A: [&str; 9] = [
    "e  a  a2 b  b2 c  c2 d  d2",
    "a  a2 e  .  .  .  .  .  . ",
    "a2 e  a  .  .  .  .  .  . ",
    "b  .  .  b2 e  .  .  .  . ",
    "b2 .  .  e  b  .  .  .  . ",
    "c  .  .  .  .  c2 e  .  . ",
    "c2 .  .  .  .  e  c  .  . ",
    "d  .  .  .  .  .  .  d2 e ",
    "d2 .  .  .  .  .  .  e  d ",
];

/// An off-diagonal block repeating `c`.
const TABLE_B: [&str; 9] = [
    "e  a  a2 b  b2 c  c2 d  d2",
    "a  a2 e  c  .  .  .  .  . ",
    "a2 e  a  .  c  .  .  .  . ",
    "b  c  .  b2 e  .  .  .  . ",
    "b2 .  c  e  b  .  .  .  . ",
    "c  .  .  .  .  c2 e  .  . ",
    "c2 .  .  .  .  e  c  .  . ",
    "d  .  .  .  .  .  .  d2 e ",
    "d2 .  .  .  .  .  .  e  d ",
];

/// A block holding `c` and `c²` in one row; `y` marks `c·b² = c²·b`.
const TABLE_C: [&str; 9] = [
    "e  a  a2 b  b2 c  c2 d  d2",
    "a  a2 e  c  c2 .  .  .  . ",
    "a2 e  a  d  d2 .  .  .  . ",
    "b  c  d  b2 e  .  y  .  . ",
    "b2 c2 d2 e  b  y  .  .  . ",
    "c  .  .  .  y  c2 e  .  . ",
    "c2 .  .  y  .  e  c  .  . ",
    "d  .  .  .  .  .  .  d2 e ",
    "d2 .  .  .  .  .  .  e  d ",
];

/// The admissible block shape, with `x = da` and `y = d²b` left symbolic.
const TABLE_D: [&str; 9] = [
    "e  a  a2 b  b2 c  c2 d  d2",
    "a  a2 e  c  d2 .  x2 x  . ",
    "a2 e  a  d  c2 x  .  .  x2",
    "b  c  d  b2 e  .  y2 .  y ",
    "b2 d2 c2 e  b  y  .  y2 . ",
    "c  .  x  .  y  c2 e  .  . ",
    "c2 x2 .  y2 .  e  c  .  . ",
    "d  x  .  .  y2 .  .  d2 e ",
    "d2 .  x2 y  .  .  .  e  d ",
];

/// The quasigroup completion of Table (D).
const TABLE_E: [&str; 9] = [
    "e  a  a2 b  b2 c  c2 d  d2",
    "a  a2 e  c  d2 d  x2 x  c2",
    "a2 e  a  d  c2 x  d2 c  x2",
    "b  c  d  b2 e  d2 y2 c2 y ",
    "b2 d2 c2 e  b  y  d  y2 c ",
    "c  d  x  d2 y  c2 e  x2 y2",
    "c2 x2 d2 y2 d  e  c  y  x ",
    "d  x  c  c2 y2 x2 y  d2 e ",
    "d2 c2 x2 y  c  y2 x  e  d ",
];

/// Powers of a generator `x` placed by the additive power identities;
/// entries are exponents.
const TABLE_1: [&str; 9] = [
    "0 1 2 3 4 5 6 7 8",
    "1 2 3 4 5 6 7 8 0",
    "2 3 4 5 6 7 8 0 1",
    "3 4 5 . 7 . . . .",
    "4 5 6 7 8 0 1 2 3",
    "5 6 7 . 0 . . . 4",
    "6 7 8 . 1 . . . 5",
    "7 8 0 . 2 . . . .",
    "8 0 1 . 3 4 5 . 7",
];

fn grid(rows: &[&str; 9], symbol: impl Fn(&str) -> Option<ElementId>) -> Result<PartialTable> {
    let mut p = PartialTable::empty(9)?;
    for (r, line) in rows.iter().enumerate() {
        for (c, tok) in line.split_whitespace().enumerate() {
            if tok == "." {
                continue;
            }
            let v = symbol(tok).ok_or_else(|| Error::Malformed(format!("unknown symbol {tok}")))?;
            p.set(r, c, v)?;
        }
    }
    Ok(p)
}

fn exponent3_symbol(tok: &str, x: Option<ElementId>, y: Option<ElementId>) -> Option<ElementId> {
    Some(match tok {
        "x" => x?,
        "x2" => square_label(x?),
        "y" => y?,
        "y2" => square_label(y?),
        _ => EXPONENT3_NAMES.iter().position(|n| n.replace('²', "2") == tok)?,
    })
}

pub fn table_a() -> PartialTable {
    grid(&TABLE_A, |t| exponent3_symbol(t, None, None)).expect("fixture is consistent")
}

pub fn table_b() -> PartialTable {
    grid(&TABLE_B, |t| exponent3_symbol(t, None, None)).expect("fixture is consistent")
}

/// Table (C); with `y = None` the `y` cells stay open.
pub fn table_c(y: Option<ElementId>) -> PartialTable {
    let rows = TABLE_C.map(|r| if y.is_none() { r.replace('y', ".") } else { r.to_string() });
    let rows: [&str; 9] = std::array::from_fn(|i| rows[i].as_str());
    grid(&rows, |t| exponent3_symbol(t, None, y)).expect("fixture is consistent")
}

/// Table (D) with `x` and `y` substituted. Fails when the substitution
/// clashes with the fixed entries.
pub fn table_d(x: ElementId, y: ElementId) -> Result<PartialTable> {
    grid(&TABLE_D, |t| exponent3_symbol(t, Some(x), Some(y)))
}

/// Table (E) with `x` and `y` substituted; not necessarily a loop.
pub fn table_e(x: ElementId, y: ElementId) -> Result<PartialTable> {
    grid(&TABLE_E, |t| exponent3_symbol(t, Some(x), Some(y)))
}

/// Table (F): Table (E) with `x = b`, `y = a`.
pub fn table_f() -> LoopTable {
    table_e(B, A).and_then(|p| p.to_loop_table()).expect("Table (F) is a loop")
}

/// The transcribed partial table of powers of a generator of order 9.
pub fn table_1_transcribed() -> PartialTable {
    grid(&TABLE_1, |t| t.parse().ok()).expect("fixture is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::groups;

    #[test]
    fn table_f_is_z3xz3() {
        let f = table_f();
        assert!(f.is_commutative() && f.is_associative() && f.is_exponent3());
        assert_eq!(canonical_form(&f), canonical_form(&groups::z3xz3()));
        // c = ab and d = a²b
        assert_eq!(f.mul(A, B), C);
        assert_eq!(f.mul(A2, B), D);
    }

    #[test]
    fn fixtures_parse() {
        assert_eq!(table_a().holes(), 81 - 17 - 16);
        assert_eq!(table_b().holes(), table_a().holes() - 4);
        assert_eq!(table_c(None).holes(), table_a().holes() - 8);
        assert_eq!(table_c(Some(A)).holes(), table_a().holes() - 12);
        assert!(table_d(B, A).is_ok());
        assert_eq!(table_1_transcribed().holes(), 20);
    }

    #[test]
    fn table_e_pattern_extends_table_d() {
        for (x, y) in [(B, A), (B2, A), (B, A2), (B2, A2)] {
            let d = table_d(x, y).unwrap();
            let e = table_e(x, y).unwrap();
            for r in 0..9 {
                for c in 0..9 {
                    if let Some(v) = d.get(r, c) {
                        assert_eq!(e.get(r, c), Some(v));
                    }
                }
            }
        }
    }
}
