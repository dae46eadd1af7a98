mod common;

use arhide::effects::analyze;
use arhide::hider::hide_all;
use arhide::miner::{brute_force_frequent, frequent_itemsets, strong_rules, ScanCounter};
use arhide::representative::{cover, covers, representative_set};
use arhide::{
    rule_stats, serialize_database, support_count, Item, Itemset, Rational, Thresholds,
    Transaction, TransactionDb,
};
use proptest::prelude::*;

use common::{enumerate_strong_rules, replay_moves, CONFIDENCES, SUPPORTS};

const ITEMS: usize = 6;

fn arb_db() -> impl Strategy<Value = TransactionDb> {
    prop::collection::vec(1u8..(1 << ITEMS), 1..10).prop_map(|masks| {
        let items = common::alphabet(ITEMS);
        let rows = masks
            .iter()
            .enumerate()
            .map(|(i, mask)| {
                let set: Itemset = items
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, it)| it.clone())
                    .collect();
                Transaction::new(i as u64 + 1, set)
            })
            .collect();
        TransactionDb::new(rows).unwrap()
    })
}

fn arb_thresholds() -> impl Strategy<Value = Thresholds> {
    (0..SUPPORTS.len(), 0..CONFIDENCES.len()).prop_map(|(s, c)| {
        Thresholds::new(
            Rational::new(SUPPORTS[s].0, SUPPORTS[s].1),
            Rational::new(CONFIDENCES[c].0, CONFIDENCES[c].1),
        )
    })
}

fn arb_sensitive() -> impl Strategy<Value = Vec<Item>> {
    prop::sample::subsequence(common::alphabet(ITEMS), 1..=2).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apriori_matches_oracle(db in arb_db(), th in arb_thresholds()) {
        let fs = frequent_itemsets(&db, &th, &mut ScanCounter::new());
        prop_assert_eq!(&fs, &brute_force_frequent(&db, &th).unwrap());
        prop_assert!(fs.is_downward_closed());
    }

    #[test]
    fn rules_match_enumeration(db in arb_db(), th in arb_thresholds()) {
        let rules = strong_rules(&db, &th);
        let got: std::collections::BTreeSet<_> = rules
            .iter()
            .map(|(r, s)| (r.clone(), s.support_count, s.antecedent_count))
            .collect();
        prop_assert_eq!(got, enumerate_strong_rules(&db, &th));
        for (_, s) in rules.iter() {
            prop_assert!(s.confidence() >= s.support());
        }
    }

    #[test]
    fn support_count_is_antitone(db in arb_db(), a in 0u8..64, b in 0u8..64) {
        let items = common::alphabet(ITEMS);
        let pick = |mask: u8| -> Itemset {
            items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, it)| it.clone()).collect()
        };
        let small = pick(a & b);
        let large = pick(a);
        prop_assert!(support_count(&db, &small) >= support_count(&db, &large));
        prop_assert_eq!(support_count(&db, &Itemset::new()), db.len() as u64);
    }

    #[test]
    fn representatives_are_a_minimal_cover(db in arb_db(), th in arb_thresholds()) {
        let ar = strong_rules(&db, &th);
        let rr = representative_set(&ar);
        for r in rr.rules() {
            prop_assert!(!ar.rules().any(|o| o != r && covers(o, r)));
        }
        for r in ar.rules() {
            prop_assert!(rr.rules().any(|b| covers(b, r)));
        }
        // Members of a strong rule's cover are at least as supported and confident.
        for (base, stats) in ar.iter() {
            for member in &cover(base).members {
                let ms = rule_stats(&db, member).unwrap();
                prop_assert!(ms.support() >= stats.support());
                prop_assert!(ms.confidence() >= stats.confidence());
            }
        }
    }

    #[test]
    fn sanitization_invariants(db in arb_db(), th in arb_thresholds(), hs in arb_sensitive()) {
        let res = hide_all(&db, &th, &hs).unwrap();
        let out = &res.transformed;
        prop_assert_eq!(out.len(), db.len());
        prop_assert_eq!(out.occurrences(), db.occurrences());
        for h in &hs {
            let single = Itemset::singleton(h.clone());
            prop_assert_eq!(support_count(out, &single), support_count(&db, &single));
        }
        let replayed = replay_moves(&db, &res.moves).map_err(TestCaseError::fail)?;
        prop_assert_eq!(&replayed, out);

        let again = hide_all(&db, &th, &hs).unwrap();
        prop_assert_eq!(serialize_database(&again.transformed), serialize_database(out));
        prop_assert_eq!(&again.moves, &res.moves);

        let report = analyze(&db, out, &th, &hs).unwrap();
        prop_assert_eq!(&report.surviving_sensitive, &res.unhidden);
        prop_assert!(report.support_invariant_ok);
        // A relayed item (t1 -> t2 -> t3) shows up as one net move in the diff.
        prop_assert!(report.moves_applied <= res.moves.len());
        prop_assert!(report.transactions_modified <= 2 * report.moves_applied);
    }

    #[test]
    fn nothing_sensitive_means_no_change(db in arb_db(), th in arb_thresholds(), hs in arb_sensitive()) {
        let ar = strong_rules(&db, &th);
        prop_assume!(!ar.rules().any(|r| hs.iter().any(|h| r.mentions(h))));
        let res = hide_all(&db, &th, &hs).unwrap();
        prop_assert_eq!(&res.transformed, &db);
        prop_assert!(res.moves.is_empty());
    }
}
