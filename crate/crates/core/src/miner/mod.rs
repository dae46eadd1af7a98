//! Level-wise Apriori mining of large itemsets and strong rule generation.

mod oracle;

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::model::{is_strong, Item, Itemset, Rule, RuleStats, Thresholds, TransactionDb};
use crate::Rational;

pub use oracle::{brute_force_frequent, MAX_ORACLE_ALPHABET};

/// Every itemset whose support clears `min_supp`, with its occurrence count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequentSet {
    entries: BTreeMap<Itemset, u64>,
    n: u64,
    min_supp: Rational,
}

impl FrequentSet {
    pub(crate) fn new(entries: BTreeMap<Itemset, u64>, n: u64, min_supp: Rational) -> Self {
        FrequentSet {
            entries,
            n,
            min_supp,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn min_supp(&self) -> Rational {
        self.min_supp
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, itemset: &Itemset) -> Option<u64> {
        self.entries.get(itemset).copied()
    }

    pub fn contains(&self, itemset: &Itemset) -> bool {
        self.entries.contains_key(itemset)
    }

    /// Entries in canonical itemset order.
    pub fn iter(&self) -> impl Iterator<Item = (&Itemset, u64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    /// True if every non-empty proper subset of every entry is also an entry.
    pub fn is_downward_closed(&self) -> bool {
        self.entries.keys().all(|z| {
            z.subsets()
                .iter()
                .filter(|s| !s.is_empty() && s.len() < z.len())
                .all(|s| self.entries.contains_key(s))
        })
    }
}

pub(crate) fn clears(count: u64, n: u64, min_supp: Rational) -> bool {
    Ratio::new(count, n) >= min_supp
}

/// Number of complete passes over a database, by phase.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanCounter {
    passes: BTreeMap<String, u64>,
}

impl ScanCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, phase: &str) {
        *self.passes.entry(phase.to_string()).or_insert(0) += 1;
    }

    pub fn get(&self, phase: &str) -> u64 {
        self.passes.get(phase).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.passes.values().sum()
    }

    pub fn phases(&self) -> impl Iterator<Item = (&str, u64)> {
        self.passes.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn merge(&mut self, other: &ScanCounter) {
        for (phase, n) in &other.passes {
            *self.passes.entry(phase.clone()).or_insert(0) += n;
        }
    }
}

/// Rules with their statistics, sorted by rule and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<(Rule, RuleStats)>,
}

impl RuleSet {
    pub fn new(mut rules: Vec<(Rule, RuleStats)>) -> Self {
        rules.sort_by(|a, b| a.0.cmp(&b.0));
        rules.dedup_by(|a, b| a.0 == b.0);
        RuleSet { rules }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Rule, RuleStats)> {
        self.rules.iter()
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().map(|(r, _)| r)
    }

    pub fn get(&self, rule: &Rule) -> Option<&RuleStats> {
        self.rules
            .binary_search_by(|(r, _)| r.cmp(rule))
            .ok()
            .map(|i| &self.rules[i].1)
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.get(rule).is_some()
    }

    pub fn filter(&self, mut keep: impl FnMut(&Rule, &RuleStats) -> bool) -> RuleSet {
        RuleSet {
            rules: self
                .rules
                .iter()
                .filter(|(r, s)| keep(r, s))
                .cloned()
                .collect(),
        }
    }
}

impl IntoIterator for RuleSet {
    type Item = (Rule, RuleStats);
    type IntoIter = std::vec::IntoIter<(Rule, RuleStats)>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.into_iter()
    }
}

impl FromIterator<(Rule, RuleStats)> for RuleSet {
    fn from_iter<I: IntoIterator<Item = (Rule, RuleStats)>>(iter: I) -> Self {
        RuleSet::new(iter.into_iter().collect())
    }
}

/// Level-wise Apriori. Each level that has candidates costs one pass over
/// the database, recorded under the `"apriori"` phase.
pub fn frequent_itemsets(
    db: &TransactionDb,
    th: &Thresholds,
    counter: &mut ScanCounter,
) -> FrequentSet {
    let n = db.len() as u64;
    let mut entries = BTreeMap::new();

    let mut singles: BTreeMap<&Item, u64> = BTreeMap::new();
    for t in db.transactions() {
        for item in &t.items {
            *singles.entry(item).or_insert(0) += 1;
        }
    }
    counter.record("apriori");
    let mut level: Vec<Itemset> = singles
        .into_iter()
        .filter(|&(_, c)| clears(c, n, th.min_supp))
        .map(|(item, c)| {
            let set = Itemset::singleton(item.clone());
            entries.insert(set.clone(), c);
            set
        })
        .collect();

    while !level.is_empty() {
        let candidates = candidates(&level, &entries);
        if candidates.is_empty() {
            break;
        }
        let mut counts = vec![0u64; candidates.len()];
        for t in db.transactions() {
            for (c, count) in candidates.iter().zip(counts.iter_mut()) {
                if t.supports(c) {
                    *count += 1;
                }
            }
        }
        counter.record("apriori");
        level = candidates
            .into_iter()
            .zip(counts)
            .filter(|&(_, c)| clears(c, n, th.min_supp))
            .map(|(set, c)| {
                entries.insert(set.clone(), c);
                set
            })
            .collect();
    }
    FrequentSet::new(entries, n, th.min_supp)
}

/// Joins same-size itemsets sharing all but their last item, then drops any
/// candidate with an infrequent immediate subset. `level` is sorted.
fn candidates(level: &[Itemset], frequent: &BTreeMap<Itemset, u64>) -> Vec<Itemset> {
    let mut out = Vec::new();
    for (i, a) in level.iter().enumerate() {
        let a_prefix = a.without(a.last().expect("non-empty"));
        for b in &level[i + 1..] {
            let b_last = b.last().expect("non-empty");
            if b.without(b_last) != a_prefix {
                break;
            }
            let candidate = a.with(b_last.clone());
            let closed = candidate
                .iter()
                .all(|item| frequent.contains_key(&candidate.without(item)));
            if closed {
                out.push(candidate);
            }
        }
    }
    out
}

/// Every strong `X => Z∖X` over the frequent itemsets `Z` with at least two
/// items. Counts come from `fs`; no database pass is made.
pub fn generate_rules(fs: &FrequentSet, th: &Thresholds) -> RuleSet {
    let mut rules = Vec::new();
    for (z, support_count) in fs.iter().filter(|(z, _)| z.len() >= 2) {
        for x in z.subsets() {
            if x.is_empty() || x.len() == z.len() {
                continue;
            }
            let Some(antecedent_count) = fs.get(&x) else {
                continue;
            };
            let stats = RuleStats {
                support_count,
                antecedent_count,
                n: fs.n,
            };
            if antecedent_count > 0 && is_strong(&stats, th) {
                let y = z.difference(&x);
                rules.push((
                    Rule::new(x, y).expect("partition of a frequent itemset"),
                    stats,
                ));
            }
        }
    }
    RuleSet::new(rules)
}

pub fn strong_rules(db: &TransactionDb, th: &Thresholds) -> RuleSet {
    strong_rules_counted(db, th, &mut ScanCounter::new())
}

pub fn strong_rules_counted(
    db: &TransactionDb,
    th: &Thresholds,
    counter: &mut ScanCounter,
) -> RuleSet {
    generate_rules(&frequent_itemsets(db, th, counter), th)
}
