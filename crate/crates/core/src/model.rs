//! Items, itemsets, transactions, thresholds and rules.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// An opaque item token.
///
/// Tokens are non-empty and may not contain whitespace, `#`, `,` or `>`, so
/// that they survive both the basket format and the `X=>Y` rule syntax.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(String);

impl Item {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if Self::is_valid(&name) {
            Ok(Item(name))
        } else {
            Err(Error::InvalidItem(name))
        }
    }

    pub fn is_valid(name: &str) -> bool {
        !name.is_empty()
            && !name
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, '#' | ',' | '>'))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Item {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Item::new(s)
    }
}

/// A duplicate-free set of items.
///
/// Itemsets order by size first and then lexicographically over their sorted
/// items (shortlex), which is the canonical order used for every listing.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Itemset(BTreeSet<Item>);

impl Itemset {
    pub fn new() -> Self {
        Itemset(BTreeSet::new())
    }

    /// Builds an itemset from string tokens, panicking on an invalid token.
    /// Intended for fixtures and tests.
    pub fn of(names: &[&str]) -> Self {
        names
            .iter()
            .map(|n| Item::new(*n).expect("valid item token"))
            .collect()
    }

    /// Parses a comma separated item list such as `A,B`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let mut set = Itemset::new();
        for token in text.split(',') {
            let token = token.trim();
            let item = Item::new(token)?;
            if !set.insert(item.clone()) {
                return Err(Error::InvalidRule(format!("item {item} repeated")));
            }
        }
        Ok(set)
    }

    pub fn singleton(item: Item) -> Self {
        let mut set = Itemset::new();
        set.insert(item);
        set
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: &Item) -> bool {
        self.0.contains(item)
    }

    /// Returns false if the item was already present.
    pub fn insert(&mut self, item: Item) -> bool {
        self.0.insert(item)
    }

    pub fn remove(&mut self, item: &Item) -> bool {
        self.0.remove(item)
    }

    pub fn is_subset(&self, other: &Itemset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.difference(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &Itemset) -> Itemset {
        Itemset(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn without(&self, item: &Item) -> Itemset {
        let mut out = self.clone();
        out.remove(item);
        out
    }

    pub fn with(&self, item: Item) -> Itemset {
        let mut out = self.clone();
        out.insert(item);
        out
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Item> + ExactSizeIterator {
        self.0.iter()
    }

    pub fn first(&self) -> Option<&Item> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Item> {
        self.0.last()
    }

    /// All subsets, including the empty set and `self`. Exponential; callers
    /// bound the size.
    pub fn subsets(&self) -> Vec<Itemset> {
        let items: Vec<&Item> = self.0.iter().collect();
        assert!(items.len() < 64, "itemset too large to enumerate");
        (0u64..(1u64 << items.len()))
            .map(|mask| {
                items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, item)| (*item).clone())
                    .collect()
            })
            .collect()
    }

    /// Items joined by `sep`, in canonical order.
    pub fn join(&self, sep: &str) -> String {
        let names: Vec<&str> = self.0.iter().map(Item::as_str).collect();
        names.join(sep)
    }
}

impl Ord for Itemset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Itemset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Item> for Itemset {
    fn from_iter<I: IntoIterator<Item = Item>>(iter: I) -> Self {
        Itemset(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Itemset {
    type Item = &'a Item;
    type IntoIter = std::collections::btree_set::Iter<'a, Item>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transaction {
    pub tid: u64,
    pub items: Itemset,
}

impl Transaction {
    pub fn new(tid: u64, items: Itemset) -> Self {
        Transaction { tid, items }
    }

    pub fn supports(&self, itemset: &Itemset) -> bool {
        itemset.is_subset(&self.items)
    }
}

/// An ordered list of transactions together with its item alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDb {
    transactions: Vec<Transaction>,
    alphabet: Itemset,
}

impl TransactionDb {
    /// Validates tids (positive, unique) and non-empty transactions.
    pub fn new(transactions: Vec<Transaction>) -> Result<Self> {
        if transactions.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        let mut seen = BTreeSet::new();
        for t in &transactions {
            if t.tid == 0 || !seen.insert(t.tid) {
                return Err(Error::DuplicateTid(t.tid));
            }
            if t.items.is_empty() {
                return Err(Error::EmptyTransaction(t.tid));
            }
        }
        let alphabet = Self::alphabet_of(&transactions);
        Ok(TransactionDb {
            transactions,
            alphabet,
        })
    }

    /// Numbers rows `1..=N` in order. Panics on invalid tokens; meant for
    /// fixtures and tests.
    pub fn from_rows(rows: &[&[&str]]) -> Result<Self> {
        let transactions = rows
            .iter()
            .enumerate()
            .map(|(i, row)| Transaction::new(i as u64 + 1, Itemset::of(row)))
            .collect();
        Self::new(transactions)
    }

    fn alphabet_of(transactions: &[Transaction]) -> Itemset {
        transactions
            .iter()
            .flat_map(|t| t.items.iter().cloned())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn alphabet(&self) -> &Itemset {
        &self.alphabet
    }

    pub fn get(&self, tid: u64) -> Option<&Transaction> {
        self.transactions.iter().find(|t| t.tid == tid)
    }

    /// Total number of item occurrences over all transactions.
    pub fn occurrences(&self) -> usize {
        self.transactions.iter().map(|t| t.items.len()).sum()
    }

    pub fn support_count(&self, itemset: &Itemset) -> u64 {
        support_count(self, itemset)
    }

    /// Replaces the itemsets of existing transactions, keeping order and tids.
    pub(crate) fn replace_items(&self, updates: &[(u64, Itemset)]) -> Result<Self> {
        let mut transactions = self.transactions.clone();
        for (tid, items) in updates {
            let t = transactions
                .iter_mut()
                .find(|t| t.tid == *tid)
                .ok_or_else(|| Error::PreconditionViolated(format!("no transaction {tid}")))?;
            t.items = items.clone();
        }
        Self::new(transactions)
    }
}

/// Number of transactions whose itemset contains `itemset`. The empty set is
/// contained in every transaction.
pub fn support_count(db: &TransactionDb, itemset: &Itemset) -> u64 {
    db.transactions
        .iter()
        .filter(|t| t.supports(itemset))
        .count() as u64
}

/// Minimum support and confidence, kept as exact ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Thresholds {
    pub min_supp: Rational,
    pub min_conf: Rational,
}

impl Thresholds {
    pub fn new(min_supp: Rational, min_conf: Rational) -> Self {
        Thresholds { min_supp, min_conf }
    }

    /// Parses both thresholds with [`parse_fraction`] and requires each to
    /// lie in `[0, 1]`.
    pub fn parse(min_supp: &str, min_conf: &str) -> Result<Self> {
        let check = |text: &str| {
            let value = parse_fraction(text)?;
            if value > Rational::from_integer(1) {
                Err(Error::InvalidThreshold(text.to_string()))
            } else {
                Ok(value)
            }
        };
        Ok(Thresholds::new(check(min_supp)?, check(min_conf)?))
    }
}

/// Parses `33%`, `33.5%`, `0.33`, `1/3` or `1` into an exact ratio.
pub fn parse_fraction(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidThreshold(text.to_string());
    let trimmed = text.trim();
    if let Some(pct) = trimmed.strip_suffix('%') {
        let value = parse_decimal(pct.trim()).ok_or_else(bad)?;
        return Ok(value / Rational::from_integer(100));
    }
    if let Some((num, den)) = trimmed.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(trimmed).ok_or_else(bad)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (whole, frac) = match text.split_once('.') {
        Some((w, f)) => (w, f),
        None => (text, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) || frac.len() > 18 {
        return None;
    }
    let whole: u64 = if whole.is_empty() {
        0
    } else {
        whole.parse().ok()?
    };
    let scale = 10u64.pow(frac.len() as u32);
    let frac: u64 = if frac.is_empty() {
        0
    } else {
        frac.parse().ok()?
    };
    let numerator = whole.checked_mul(scale)?.checked_add(frac)?;
    Some(Rational::new(numerator, scale))
}

/// Renders a ratio as a percentage with three decimals, rounding half to even.
pub fn format_percent(value: Rational) -> String {
    let num = *value.numer() as u128 * 100_000;
    let den = *value.denom() as u128;
    let mut scaled = num / den;
    let rem = num % den;
    match (2 * rem).cmp(&den) {
        Ordering::Greater => scaled += 1,
        Ordering::Equal if scaled % 2 == 1 => scaled += 1,
        _ => {}
    }
    format!("{}.{:03}%", scaled / 1000, scaled % 1000)
}

/// An association rule `antecedent => consequent`.
///
/// Both sides are non-empty and disjoint. Rules order by antecedent, then
/// consequent, using the canonical itemset order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    antecedent: Itemset,
    consequent: Itemset,
}

impl Rule {
    pub fn new(antecedent: Itemset, consequent: Itemset) -> Result<Self> {
        if antecedent.is_empty() {
            return Err(Error::InvalidRule("empty antecedent".into()));
        }
        if consequent.is_empty() {
            return Err(Error::InvalidRule("empty consequent".into()));
        }
        if !antecedent.is_disjoint(&consequent) {
            return Err(Error::InvalidRule(format!(
                "{antecedent} and {consequent} overlap"
            )));
        }
        Ok(Rule {
            antecedent,
            consequent,
        })
    }

    /// Parses the `X=>Y` syntax with comma separated items, e.g. `C=>A,B`.
    pub fn parse(text: &str) -> Result<Self> {
        let (lhs, rhs) = text
            .split_once("=>")
            .ok_or_else(|| Error::InvalidRule(format!("missing '=>' in {text:?}")))?;
        let side = |s: &str, which: &str| {
            if s.trim().is_empty() {
                Err(Error::InvalidRule(format!("empty {which}")))
            } else {
                Itemset::parse_list(s)
            }
        };
        Rule::new(side(lhs, "antecedent")?, side(rhs, "consequent")?)
    }

    /// Fixture helper; panics on invalid input.
    pub fn of(antecedent: &[&str], consequent: &[&str]) -> Self {
        Rule::new(Itemset::of(antecedent), Itemset::of(consequent)).expect("valid rule")
    }

    pub fn antecedent(&self) -> &Itemset {
        &self.antecedent
    }

    pub fn consequent(&self) -> &Itemset {
        &self.consequent
    }

    /// `antecedent ∪ consequent`.
    pub fn itemset(&self) -> Itemset {
        self.antecedent.union(&self.consequent)
    }

    pub fn mentions(&self, item: &Item) -> bool {
        self.antecedent.contains(item) || self.consequent.contains(item)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.antecedent, self.consequent)
    }
}

/// Counts behind a rule's support and confidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleStats {
    /// Transactions containing antecedent ∪ consequent.
    pub support_count: u64,
    /// Transactions containing the antecedent.
    pub antecedent_count: u64,
    /// Database size.
    pub n: u64,
}

impl RuleStats {
    pub fn support(&self) -> Rational {
        Ratio::new(self.support_count, self.n)
    }

    pub fn confidence(&self) -> Rational {
        Ratio::new(self.support_count, self.antecedent_count)
    }

    pub fn support_as<S: Scalar>(&self) -> S {
        S::from_counts(self.support_count, self.n)
    }

    pub fn confidence_as<S: Scalar>(&self) -> S {
        S::from_counts(self.support_count, self.antecedent_count)
    }
}

pub fn rule_stats(db: &TransactionDb, rule: &Rule) -> Result<RuleStats> {
    let mut support_count = 0;
    let mut antecedent_count = 0;
    for t in db.transactions() {
        if t.supports(&rule.antecedent) {
            antecedent_count += 1;
            if t.supports(&rule.consequent) {
                support_count += 1;
            }
        }
    }
    if antecedent_count == 0 {
        return Err(Error::ZeroAntecedentSupport);
    }
    Ok(RuleStats {
        support_count,
        antecedent_count,
        n: db.len() as u64,
    })
}

/// Inclusive exact comparison against both thresholds.
pub fn is_strong(stats: &RuleStats, th: &Thresholds) -> bool {
    stats.support() >= th.min_supp && stats.confidence() >= th.min_conf
}
