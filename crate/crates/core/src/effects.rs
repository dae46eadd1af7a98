//! Side effects of a sanitization, measured by re-mining both databases.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::miner::{strong_rules_counted, RuleSet, ScanCounter};
use crate::model::{Item, Itemset, Rule, TransactionDb};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideEffectReport {
    /// Sensitive rules strong before and not after.
    pub hidden_sensitive: RuleSet,
    /// Sensitive rules strong before and after (hiding failures).
    pub surviving_sensitive: RuleSet,
    /// Non-sensitive rules strong before and not after.
    pub lost_rules: RuleSet,
    /// Rules strong after but not before.
    pub ghost_rules: RuleSet,
    /// Deletions of a sensitive item from a transaction.
    pub moves_applied: usize,
    pub transactions_modified: usize,
    pub support_invariant_ok: bool,
    pub support_before: BTreeMap<Item, u64>,
    pub support_after: BTreeMap<Item, u64>,
    pub scans: ScanCounter,
}

impl SideEffectReport {
    /// Number of sensitive rules no longer strong.
    pub fn rules_pruned(&self) -> usize {
        self.hidden_sensitive.len()
    }
}

/// Occurrence count of each listed item.
pub fn support_profile(db: &TransactionDb, items: &[Item]) -> BTreeMap<Item, u64> {
    items
        .iter()
        .map(|h| (h.clone(), db.support_count(&Itemset::singleton(h.clone()))))
        .collect()
}

/// Compares the strong rules of `before` and `after` at the same thresholds.
pub fn analyze(
    before: &TransactionDb,
    after: &TransactionDb,
    th: &crate::model::Thresholds,
    sensitive: &[Item],
) -> Result<SideEffectReport> {
    if before.len() != after.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} transactions before, {} after",
            before.len(),
            after.len()
        )));
    }
    let mut transactions_modified = 0;
    let mut moves_applied = 0;
    for (b, a) in before.transactions().iter().zip(after.transactions()) {
        if b.tid != a.tid {
            return Err(Error::ShapeMismatch(format!(
                "tid {} paired with tid {}",
                b.tid, a.tid
            )));
        }
        if b.items != a.items {
            transactions_modified += 1;
        }
        moves_applied += sensitive
            .iter()
            .filter(|h| b.items.contains(h) && !a.items.contains(h))
            .count();
    }

    let mut scans = ScanCounter::new();
    let strong_before = strong_rules_counted(before, th, &mut scans);
    let strong_after = strong_rules_counted(after, th, &mut scans);
    let is_sensitive = |r: &Rule| sensitive.iter().any(|h| r.mentions(h));

    let support_before = support_profile(before, sensitive);
    let support_after = support_profile(after, sensitive);

    Ok(SideEffectReport {
        hidden_sensitive: strong_before.filter(|r, _| is_sensitive(r) && !strong_after.contains(r)),
        surviving_sensitive: strong_after
            .filter(|r, _| is_sensitive(r) && strong_before.contains(r)),
        lost_rules: strong_before.filter(|r, _| !is_sensitive(r) && !strong_after.contains(r)),
        ghost_rules: strong_after.filter(|r, _| !strong_before.contains(r)),
        moves_applied,
        transactions_modified,
        support_invariant_ok: support_before == support_after,
        support_before,
        support_after,
        scans,
    })
}
