#![allow(dead_code)]

use std::collections::BTreeSet;

use arhide::{
    hider::Move, support_count, Item, Itemset, Rational, Rule, Thresholds, Transaction,
    TransactionDb,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SUPPORTS: [(u64, u64); 3] = [(1, 4), (1, 3), (1, 2)];
pub const CONFIDENCES: [(u64, u64); 3] = [(1, 2), (7, 10), (9, 10)];

pub fn item(name: &str) -> Item {
    Item::new(name).unwrap()
}

pub fn alphabet(size: usize) -> Vec<Item> {
    (0..size)
        .map(|i| item(&((b'A' + i as u8) as char).to_string()))
        .collect()
}

/// Up to `max_items` items and `max_rows` non-empty transactions.
pub fn random_db<R: Rng>(rng: &mut R, max_items: usize, max_rows: usize) -> TransactionDb {
    let items = alphabet(rng.gen_range(1..=max_items));
    let rows = rng.gen_range(1..=max_rows);
    let transactions = (0..rows)
        .map(|i| {
            let mut set = Itemset::new();
            while set.is_empty() {
                for it in &items {
                    if rng.gen_bool(0.5) {
                        set.insert(it.clone());
                    }
                }
            }
            Transaction::new(i as u64 + 1, set)
        })
        .collect();
    TransactionDb::new(transactions).unwrap()
}

pub fn random_thresholds<R: Rng>(rng: &mut R) -> Thresholds {
    let (sn, sd) = *SUPPORTS.choose(rng).unwrap();
    let (cn, cd) = *CONFIDENCES.choose(rng).unwrap();
    Thresholds::new(Rational::new(sn, sd), Rational::new(cn, cd))
}

/// One or two distinct sensitive items drawn from the database alphabet.
pub fn random_sensitive<R: Rng>(rng: &mut R, db: &TransactionDb) -> Vec<Item> {
    let mut pool: Vec<Item> = db.alphabet().iter().cloned().collect();
    pool.shuffle(rng);
    let k = rng.gen_range(1..=pool.len().min(2));
    pool.truncate(k);
    pool
}

/// Strong rules by direct enumeration of every antecedent/consequent split of
/// every subset of the alphabet, decided by integer cross-multiplication.
/// Returns `(rule, count(X∪Y), count(X))`.
pub fn enumerate_strong_rules(db: &TransactionDb, th: &Thresholds) -> BTreeSet<(Rule, u64, u64)> {
    let n = db.len() as u128;
    let (sn, sd) = (*th.min_supp.numer() as u128, *th.min_supp.denom() as u128);
    let (cn, cd) = (*th.min_conf.numer() as u128, *th.min_conf.denom() as u128);
    let items: Vec<Item> = db.alphabet().iter().cloned().collect();
    let m = items.len();
    let mut out = BTreeSet::new();
    // Each item is in the antecedent (1), the consequent (2), or neither (0).
    for code in 0..3usize.pow(m as u32) {
        let mut x = Itemset::new();
        let mut y = Itemset::new();
        let mut rest = code;
        for it in &items {
            match rest % 3 {
                1 => x.insert(it.clone()),
                2 => y.insert(it.clone()),
                _ => false,
            };
            rest /= 3;
        }
        if x.is_empty() || y.is_empty() {
            continue;
        }
        let both = support_count(db, &x.union(&y)) as u128;
        let ante = support_count(db, &x) as u128;
        if ante == 0 {
            continue;
        }
        if both * sd >= sn * n && both * cd >= cn * ante {
            out.insert((Rule::new(x, y).unwrap(), both as u64, ante as u64));
        }
    }
    out
}

/// Replays a move log from `start`, checking that every move was legal and
/// made progress. Returns the final database.
pub fn replay_moves(start: &TransactionDb, moves: &[Move]) -> Result<TransactionDb, String> {
    use arhide::hider::{apply_move, find_donor, find_recipient, target_stats};
    let mut state = start.clone();
    for (i, m) in moves.iter().enumerate() {
        let full = m.target.full_itemset();
        if find_donor(&state, &m.target) != Some(m.donor_tid) {
            return Err(format!(
                "move {i}: donor {} is not the selected donor",
                m.donor_tid
            ));
        }
        if find_recipient(&state, &m.target) != Some(m.recipient_tid) {
            return Err(format!(
                "move {i}: recipient {} is not the selected recipient",
                m.recipient_tid
            ));
        }
        let count_before = support_count(&state, &full);
        let conf_before = target_stats(&state, &m.target).map(|s| s.confidence());
        let next = apply_move(&state, m.donor_tid, m.recipient_tid, &m.sensitive)
            .map_err(|e| format!("move {i}: {e}"))?;
        let count_after = support_count(&next, &full);
        if count_after + 1 != count_before {
            return Err(format!(
                "move {i}: target count {count_before} -> {count_after}"
            ));
        }
        let conf_after =
            target_stats(&next, &m.target).map_or(Rational::from_integer(0), |s| s.confidence());
        if Some(m.conf_before) != conf_before || m.conf_after != conf_after {
            return Err(format!(
                "move {i}: logged confidences disagree with recount"
            ));
        }
        if conf_after > m.conf_before {
            return Err(format!(
                "move {i}: confidence rose {} -> {conf_after}",
                m.conf_before
            ));
        }
        state = next;
    }
    Ok(state)
}
