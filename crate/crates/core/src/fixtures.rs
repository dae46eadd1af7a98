//! The small worked databases used throughout the tests and docs.
//!
//! `table1`/`table2` are the originals; the `_d1` and `_d2` variants are the
//! expected results of hiding `C` and `B` respectively.

use crate::model::TransactionDb;

fn db(rows: &[&[&str]]) -> TransactionDb {
    TransactionDb::from_rows(rows).expect("fixture is valid")
}

pub fn table1() -> TransactionDb {
    db(&[
        &["A", "B", "C"],
        &["A", "B", "C"],
        &["A", "B", "C"],
        &["A", "B"],
        &["A"],
        &["A", "C"],
    ])
}

pub fn table2() -> TransactionDb {
    db(&[
        &["A", "B", "C"],
        &["A", "B", "C", "D"],
        &["B", "C", "E"],
        &["A", "C", "D", "E"],
        &["D", "E"],
        &["A", "B"],
    ])
}

pub fn table3_d1() -> TransactionDb {
    db(&[
        &["A", "B"],
        &["A", "B", "C"],
        &["A", "B", "C"],
        &["A", "B"],
        &["A", "C"],
        &["A", "C"],
    ])
}

pub fn table3_d2() -> TransactionDb {
    db(&[
        &["A", "C"],
        &["A", "B", "C"],
        &["A", "B", "C"],
        &["A", "B"],
        &["A", "B"],
        &["A", "C"],
    ])
}

pub fn table4_d1() -> TransactionDb {
    db(&[
        &["A", "B", "C"],
        &["A", "B", "D"],
        &["B", "C", "E"],
        &["A", "C", "D", "E"],
        &["C", "D", "E"],
        &["A", "B"],
    ])
}

pub fn table4_d2() -> TransactionDb {
    db(&[
        &["A", "B", "C"],
        &["A", "C", "D"],
        &["B", "C", "E"],
        &["A", "C", "D", "E"],
        &["B", "D", "E"],
        &["A", "B"],
    ])
}
