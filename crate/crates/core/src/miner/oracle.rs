use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{support_count, Thresholds, TransactionDb};

use super::{clears, FrequentSet};

pub const MAX_ORACLE_ALPHABET: usize = 20;

/// Counts every non-empty subset of the alphabet by direct scan. Test oracle
/// for [`frequent_itemsets`](super::frequent_itemsets).
pub fn brute_force_frequent(db: &TransactionDb, th: &Thresholds) -> Result<FrequentSet> {
    let alphabet = db.alphabet();
    if alphabet.len() > MAX_ORACLE_ALPHABET {
        return Err(Error::AlphabetTooLarge(alphabet.len()));
    }
    let n = db.len() as u64;
    let entries: BTreeMap<_, _> = alphabet
        .subsets()
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| {
            let count = support_count(db, &s);
            (s, count)
        })
        .filter(|&(_, c)| clears(c, n, th.min_supp))
        .collect();
    Ok(FrequentSet::new(entries, n, th.min_supp))
}
