//! The `.loop` fixtures under tests/data.

use loopforge::groups;
use loopforge::{are_isomorphic, canonical_form, Error, LoopTable};

fn read(name: &str) -> std::result::Result<LoopTable, Error> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    LoopTable::parse(&std::fs::read_to_string(path).unwrap())
}

#[test]
fn groups_parse_to_their_constructions() {
    assert_eq!(read("z9.loop").unwrap(), groups::cyclic(9));
    assert_eq!(canonical_form(&read("z3xz3.loop").unwrap()), canonical_form(&groups::z3xz3()));
    assert_eq!(read("trivial.loop").unwrap(), LoopTable::trivial());
    let s3 = read("s3.loop").unwrap();
    assert!(!s3.is_commutative() && s3.is_associative());
}

#[test]
fn table_f_is_z3xz3() {
    let f = read("table_f.loop").unwrap();
    assert!(are_isomorphic(&f, &groups::z3xz3()).is_some());
    assert!(are_isomorphic(&f, &groups::cyclic(9)).is_none());
}

#[test]
fn corrupt_table_reports_first_repeat() {
    match read("table_f_corrupt.loop") {
        Err(e @ Error::NotLatin { .. }) => assert!(e.to_string().starts_with("NotLatin row 1")),
        other => panic!("expected NotLatin, got {other:?}"),
    }
}

#[test]
fn order_six_fixtures() {
    let j = read("jordan6_nonassociative.loop").unwrap();
    assert!(j.is_jordan() && !j.is_associative());
    let c = read("commutative6_not_jordan.loop").unwrap();
    assert!(c.is_commutative() && !c.is_jordan());
}

#[test]
fn loop_format_round_trips() {
    for name in ["z9.loop", "table_f.loop", "witness12_x6.loop", "s3.loop"] {
        let q = read(name).unwrap();
        assert_eq!(LoopTable::parse(&q.to_loop_string()).unwrap(), q);
        assert_eq!(LoopTable::parse(&q.to_json()).unwrap(), q);
    }
}
