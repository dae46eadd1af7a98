//! Support-preserving sanitization.
//!
//! For each sensitive item `h`, the strong rules mentioning `h` are joined by
//! antecedent into hiding targets. While a target is still strong, `h` is
//! deleted from a transaction that fully supports the target and added to a
//! transaction that lacks `h` and only partially supports the rest of the
//! target. The number of transactions containing `h` never changes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::miner::{frequent_itemsets, generate_rules, RuleSet, ScanCounter};
use crate::model::{is_strong, rule_stats, Item, Itemset, RuleStats, Thresholds, TransactionDb};
use crate::representative::{join_targets, HidingTarget};
use crate::Rational;

/// One relocation of the sensitive item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub sensitive: Item,
    pub donor_tid: u64,
    pub recipient_tid: u64,
    pub target: HidingTarget,
    pub conf_before: Rational,
    /// Zero when no transaction supports the target's antecedent any more.
    pub conf_after: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SanitizationResult {
    pub transformed: TransactionDb,
    pub moves: Vec<Move>,
    /// Sensitive items that were not large and so were skipped.
    pub dropped_items: Vec<Item>,
    /// Sensitive rules strong in the input that are still strong in
    /// `transformed`, with their final statistics.
    pub unhidden: RuleSet,
    pub scans: ScanCounter,
}

/// Result of sanitizing a database for a single sensitive item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemOutcome {
    pub db: TransactionDb,
    pub moves: Vec<Move>,
    /// Rules of this item's agenda still strong after its moves.
    pub unhidden: RuleSet,
    /// True when `{h}` was not large and nothing was done.
    pub dropped: bool,
}

/// The strong rules mentioning `h` on either side.
pub fn select_sensitive_rules(ar: &RuleSet, h: &Item) -> RuleSet {
    ar.filter(|r, _| r.mentions(h))
}

/// The largest transaction containing the whole target, lowest tid first on
/// ties.
pub fn find_donor(db: &TransactionDb, target: &HidingTarget) -> Option<u64> {
    let full = target.full_itemset();
    db.transactions()
        .iter()
        .filter(|t| t.supports(&full))
        .min_by_key(|t| (std::cmp::Reverse(t.items.len()), t.tid))
        .map(|t| t.tid)
}

/// A transaction without `h` that holds some but not all (possibly none) of
/// the target's other items, preferring the fewest such items, then the
/// lowest tid.
pub fn find_recipient(db: &TransactionDb, target: &HidingTarget) -> Option<u64> {
    let rest = target.full_itemset().without(&target.sensitive);
    db.transactions()
        .iter()
        .filter(|t| !t.items.contains(&target.sensitive) && !t.supports(&rest))
        .min_by_key(|t| (rest.intersection(&t.items).len(), t.tid))
        .map(|t| t.tid)
}

/// Deletes `h` from `donor` and adds it to `recipient`.
pub fn apply_move(
    db: &TransactionDb,
    donor: u64,
    recipient: u64,
    h: &Item,
) -> Result<TransactionDb> {
    let violated = |msg: String| Err(Error::PreconditionViolated(msg));
    if donor == recipient {
        return violated(format!("donor and recipient are both transaction {donor}"));
    }
    let Some(d) = db.get(donor) else {
        return violated(format!("no donor transaction {donor}"));
    };
    let Some(r) = db.get(recipient) else {
        return violated(format!("no recipient transaction {recipient}"));
    };
    if !d.items.contains(h) {
        return violated(format!("donor {donor} does not contain {h}"));
    }
    if d.items.len() == 1 {
        return violated(format!("donor {donor} would become empty"));
    }
    if r.items.contains(h) {
        return violated(format!("recipient {recipient} already contains {h}"));
    }
    db.replace_items(&[
        (donor, d.items.without(h)),
        (recipient, r.items.with(h.clone())),
    ])
}

/// Statistics of the joined target rule, or `None` when nothing supports its
/// antecedent. One database pass.
pub fn target_stats(db: &TransactionDb, target: &HidingTarget) -> Option<RuleStats> {
    rule_stats(db, &target.rule()).ok()
}

fn target_is_strong(stats: Option<&RuleStats>, th: &Thresholds) -> bool {
    stats.is_some_and(|s| is_strong(s, th))
}

/// Sanitizes `db` for one sensitive item, mining its strong rules first.
pub fn hide_item(
    db: &TransactionDb,
    th: &Thresholds,
    h: &Item,
    counter: &mut ScanCounter,
) -> ItemOutcome {
    let fs = frequent_itemsets(db, th, counter);
    let ar = generate_rules(&fs, th);
    let large = fs.contains(&Itemset::singleton(h.clone()));
    hide_item_mined(db, th, h, &ar, large, counter)
}

fn hide_item_mined(
    db: &TransactionDb,
    th: &Thresholds,
    h: &Item,
    ar: &RuleSet,
    large: bool,
    counter: &mut ScanCounter,
) -> ItemOutcome {
    if !large {
        return ItemOutcome {
            db: db.clone(),
            moves: Vec::new(),
            unhidden: RuleSet::default(),
            dropped: true,
        };
    }
    let agenda = select_sensitive_rules(ar, h);
    let mut current = db.clone();
    let mut moves = Vec::new();

    for target in join_targets(&agenda, h) {
        loop {
            let before = target_stats(&current, &target);
            counter.record("confidence");
            // Targets already hidden by earlier moves need no further work.
            if !target_is_strong(before.as_ref(), th) {
                break;
            }
            let donor = find_donor(&current, &target);
            counter.record("donor");
            let recipient = find_recipient(&current, &target);
            counter.record("recipient");
            let (Some(donor), Some(recipient)) = (donor, recipient) else {
                break;
            };
            current = apply_move(&current, donor, recipient, h)
                .expect("donor and recipient satisfy the move preconditions");
            let after = target_stats(&current, &target);
            moves.push(Move {
                sensitive: h.clone(),
                donor_tid: donor,
                recipient_tid: recipient,
                target: target.clone(),
                conf_before: before.expect("strong target has stats").confidence(),
                conf_after: after.map_or(Rational::from_integer(0), |s| s.confidence()),
            });
        }
    }

    let unhidden = still_strong(&current, th, &agenda);
    counter.record("verify");
    ItemOutcome {
        db: current,
        moves,
        unhidden,
        dropped: false,
    }
}

fn still_strong(db: &TransactionDb, th: &Thresholds, rules: &RuleSet) -> RuleSet {
    rules
        .rules()
        .filter_map(|r| {
            let stats = rule_stats(db, r).ok()?;
            is_strong(&stats, th).then(|| (r.clone(), stats))
        })
        .collect()
}

/// Sanitizes for every item of `sensitive` in order, each step working on the
/// previous step's output. Strong rules are re-mined before each item.
pub fn hide_all(
    db: &TransactionDb,
    th: &Thresholds,
    sensitive: &[Item],
) -> Result<SanitizationResult> {
    if sensitive.is_empty() {
        return Err(Error::EmptySensitiveSet);
    }
    let mut seen = BTreeSet::new();
    for h in sensitive {
        if !seen.insert(h) {
            return Err(Error::DuplicateSensitiveItem(h.clone()));
        }
    }

    let mut scans = ScanCounter::new();
    let mut current = db.clone();
    let mut moves = Vec::new();
    let mut dropped_items = Vec::new();
    let mut original_rules = None;

    for h in sensitive {
        let fs = frequent_itemsets(&current, th, &mut scans);
        let ar = generate_rules(&fs, th);
        let large = fs.contains(&Itemset::singleton(h.clone()));
        let outcome = hide_item_mined(&current, th, h, &ar, large, &mut scans);
        original_rules.get_or_insert(ar);
        if outcome.dropped {
            dropped_items.push(h.clone());
        }
        moves.extend(outcome.moves);
        current = outcome.db;
    }

    let original_sensitive = original_rules
        .expect("at least one sensitive item")
        .filter(|r, _| sensitive.iter().any(|h| r.mentions(h)));
    let unhidden = still_strong(&current, th, &original_sensitive);
    scans.record("verify");

    Ok(SanitizationResult {
        transformed: current,
        moves,
        dropped_items,
        unhidden,
        scans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::serialize_database;
    use crate::fixtures;
    use crate::miner::strong_rules;
    use crate::model::Rule;
    use num_rational::Ratio;

    fn th() -> Thresholds {
        Thresholds::parse("33%", "70%").unwrap()
    }

    fn item(s: &str) -> Item {
        Item::new(s).unwrap()
    }

    fn target(h: &str, ant: &[&str], cons: &[&str]) -> HidingTarget {
        HidingTarget {
            sensitive: item(h),
            antecedent: Itemset::of(ant),
            joined_consequent: Itemset::of(cons),
        }
    }

    #[test]
    fn selects_rules_mentioning_item() {
        let t1 = strong_rules(&fixtures::table1(), &th());
        let u = select_sensitive_rules(&t1, &item("C"));
        assert_eq!(u.len(), 8);
        assert!(!u.contains(&Rule::of(&["B"], &["A"])));

        let t2 = strong_rules(&fixtures::table2(), &th());
        let got: Vec<String> = select_sensitive_rules(&t2, &item("C"))
            .rules()
            .map(|r| r.to_string())
            .collect();
        assert_eq!(
            got,
            ["A => C", "B => C", "C => A", "C => B", "A,D => C", "C,D => A"]
        );
        assert!(select_sensitive_rules(&t2, &item("Q")).is_empty());
    }

    #[test]
    fn donors() {
        let c_ab = target("C", &["C"], &["A", "B"]);
        assert_eq!(find_donor(&fixtures::table1(), &c_ab), Some(1));
        assert_eq!(find_donor(&fixtures::table2(), &c_ab), Some(2));
        let c_de = target("C", &["C"], &["D", "B"]);
        assert_eq!(find_donor(&fixtures::table1(), &c_de), None);
    }

    #[test]
    fn recipients() {
        let c_ab = target("C", &["C"], &["A", "B"]);
        assert_eq!(find_recipient(&fixtures::table1(), &c_ab), Some(5));
        assert_eq!(find_recipient(&fixtures::table2(), &c_ab), Some(5));
        let all_c = TransactionDb::from_rows(&[&["A", "C"], &["C"]]).unwrap();
        assert_eq!(find_recipient(&all_c, &c_ab), None);
    }

    #[test]
    fn moves_reproduce_transformed_tables() {
        let c = item("C");
        let d1 = apply_move(&fixtures::table1(), 1, 5, &c).unwrap();
        assert_eq!(d1, fixtures::table3_d1());
        let d1 = apply_move(&fixtures::table2(), 2, 5, &c).unwrap();
        assert_eq!(d1, fixtures::table4_d1());
        assert_eq!(d1.support_count(&Itemset::singleton(c)), 4);
    }

    #[test]
    fn move_preconditions() {
        let db = fixtures::table1();
        let c = item("C");
        let bad = |r: Result<TransactionDb>| matches!(r, Err(Error::PreconditionViolated(_)));
        assert!(bad(apply_move(&db, 1, 1, &c)));
        assert!(bad(apply_move(&db, 4, 5, &c)));
        assert!(bad(apply_move(&db, 1, 2, &c)));
        assert!(bad(apply_move(&db, 1, 99, &c)));
        let single = TransactionDb::from_rows(&[&["C"], &["A"]]).unwrap();
        assert!(bad(apply_move(&single, 1, 2, &c)));
    }

    #[test]
    fn hide_c_in_table1() {
        let mut counter = ScanCounter::new();
        let out = hide_item(&fixtures::table1(), &th(), &item("C"), &mut counter);
        assert_eq!(out.db, fixtures::table3_d1());
        assert_eq!(out.moves.len(), 1);
        let m = &out.moves[0];
        assert_eq!((m.donor_tid, m.recipient_tid), (1, 5));
        assert_eq!(m.target.to_string(), "C => A,B");
        assert_eq!(
            (m.conf_before, m.conf_after),
            (Ratio::new(3, 4), Ratio::new(2, 4))
        );
        let survivors: Vec<String> = out.unhidden.rules().map(|r| r.to_string()).collect();
        assert_eq!(survivors, ["C => A", "B,C => A"]);
        assert!(counter.total() > 0);
    }

    #[test]
    fn hide_c_in_table2() {
        let out = hide_item(
            &fixtures::table2(),
            &th(),
            &item("C"),
            &mut ScanCounter::new(),
        );
        assert_eq!(out.db, fixtures::table4_d1());
        assert_eq!(out.moves.len(), 1);
        assert!(out.unhidden.is_empty());
    }

    #[test]
    fn absent_item_is_dropped() {
        let res = hide_all(&fixtures::table1(), &th(), &[item("D")]).unwrap();
        assert_eq!(res.transformed, fixtures::table1());
        assert_eq!(res.dropped_items, [item("D")]);
        assert!(res.moves.is_empty());
    }

    #[test]
    fn hide_all_fixtures() {
        let cases = [
            (fixtures::table1(), "C", fixtures::table3_d1()),
            (fixtures::table1(), "B", fixtures::table3_d2()),
            (fixtures::table2(), "C", fixtures::table4_d1()),
            (fixtures::table2(), "B", fixtures::table4_d2()),
        ];
        for (db, h, want) in cases {
            let res = hide_all(&db, &th(), &[item(h)]).unwrap();
            assert_eq!(
                serialize_database(&res.transformed),
                serialize_database(&want),
                "{h}"
            );
            let hs = Itemset::of(&[h]);
            assert_eq!(db.support_count(&hs), res.transformed.support_count(&hs));
        }
    }

    #[test]
    fn hide_all_input_errors() {
        let db = fixtures::table1();
        assert_eq!(hide_all(&db, &th(), &[]), Err(Error::EmptySensitiveSet));
        assert_eq!(
            hide_all(&db, &th(), &[item("C"), item("C")]),
            Err(Error::DuplicateSensitiveItem(item("C")))
        );
    }

    #[test]
    fn no_sensitive_rules_is_a_no_op() {
        let db = TransactionDb::from_rows(&[&["A", "B"], &["A", "B"], &["C"]]).unwrap();
        let res = hide_all(&db, &th(), &[item("C")]).unwrap();
        assert_eq!(res.transformed, db);
        assert!(res.moves.is_empty() && res.unhidden.is_empty());
    }
}
