//! Plain-text basket files: one transaction per line, items separated by
//! whitespace. Blank lines and lines starting with `#` are skipped; data
//! lines are numbered `1..=N` in file order.

use crate::error::{Error, Result};
use crate::model::{Item, Itemset, Transaction, TransactionDb};

pub fn parse_database(bytes: &[u8]) -> Result<TransactionDb> {
    let text = std::str::from_utf8(bytes).map_err(|_| Error::InvalidUtf8)?;
    let mut transactions = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tid = transactions.len() as u64 + 1;
        let mut items = Itemset::new();
        for token in body.split_whitespace() {
            let item = Item::new(token).map_err(|_| Error::BadToken {
                line: index + 1,
                token: token.to_string(),
            })?;
            if !items.insert(item.clone()) {
                return Err(Error::DuplicateItemInTransaction { tid, item });
            }
        }
        transactions.push(Transaction::new(tid, items));
    }
    TransactionDb::new(transactions)
}

/// Writes each transaction's items in canonical order, space separated, one
/// line per transaction.
pub fn serialize_database(db: &TransactionDb) -> String {
    let mut out = String::new();
    for t in db.transactions() {
        out.push_str(&t.items.join(" "));
        out.push('\n');
    }
    out
}

impl std::str::FromStr for TransactionDb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_database(s.as_bytes())
    }
}
