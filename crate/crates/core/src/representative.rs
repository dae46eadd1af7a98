//! The cover operator, representative rules, and hiding-target construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::miner::RuleSet;
use crate::model::{Item, Itemset, Rule};

/// All rules derivable from `base` by moving consequent items into the
/// antecedent and dropping consequent items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub base: Rule,
    pub members: BTreeSet<Rule>,
}

/// `{ X∪Z => V : Z, V ⊆ Y, Z ∩ V = ∅, V ≠ ∅ }` for `base = X => Y`.
///
/// Each consequent item goes to `Z`, to `V`, or nowhere, so the cover has
/// `3^m - 2^m` members for `m = |Y|`.
pub fn cover(base: &Rule) -> Cover {
    let y: Vec<&Item> = base.consequent().iter().collect();
    let m = y.len() as u32;
    let mut members = BTreeSet::new();
    for code in 0..3usize.pow(m) {
        let mut z = Itemset::new();
        let mut v = Itemset::new();
        let mut rest = code;
        for item in &y {
            match rest % 3 {
                1 => z.insert((*item).clone()),
                2 => v.insert((*item).clone()),
                _ => false,
            };
            rest /= 3;
        }
        if v.is_empty() {
            continue;
        }
        let member = Rule::new(base.antecedent().union(&z), v).expect("disjoint by construction");
        members.insert(member);
    }
    Cover {
        base: base.clone(),
        members,
    }
}

/// `3^m - 2^m`.
pub fn cover_size(m: u32) -> u64 {
    3u64.pow(m) - 2u64.pow(m)
}

/// Whether `inner` belongs to `cover(outer)`, without building the cover.
pub fn covers(outer: &Rule, inner: &Rule) -> bool {
    outer.antecedent().is_subset(inner.antecedent())
        && inner.consequent().is_subset(outer.consequent())
        && inner.itemset().is_subset(&outer.itemset())
}

/// Members of `ar` that no other member covers.
pub fn representative_set(ar: &RuleSet) -> RuleSet {
    ar.filter(|r, _| !ar.rules().any(|other| other != r && covers(other, r)))
}

/// A joined rule the hider attacks: `antecedent => joined_consequent`, built
/// from sensitive rules sharing one antecedent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HidingTarget {
    pub sensitive: Item,
    pub antecedent: Itemset,
    pub joined_consequent: Itemset,
}

impl HidingTarget {
    pub fn full_itemset(&self) -> Itemset {
        self.antecedent.union(&self.joined_consequent)
    }

    pub fn rule(&self) -> Rule {
        Rule::new(self.antecedent.clone(), self.joined_consequent.clone())
            .expect("target sides are disjoint and non-empty")
    }

    /// True when the antecedent is exactly `{sensitive}`.
    pub fn is_sensitive_alone(&self) -> bool {
        self.antecedent.len() == 1 && self.antecedent.contains(&self.sensitive)
    }
}

impl fmt::Display for HidingTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} => {}", self.antecedent, self.joined_consequent)
    }
}

/// Groups the rules mentioning `h` by antecedent and joins each group's
/// consequents into one target.
///
/// Targets are ordered by descending full-itemset size. Among equal sizes the
/// target whose antecedent is exactly `{h}` comes first, then the rest by
/// canonical antecedent order.
pub fn join_targets(sensitive_rules: &RuleSet, h: &Item) -> Vec<HidingTarget> {
    let mut groups: BTreeMap<&Itemset, Itemset> = BTreeMap::new();
    for rule in sensitive_rules.rules().filter(|r| r.mentions(h)) {
        let joined = groups.entry(rule.antecedent()).or_default();
        *joined = joined.union(rule.consequent());
    }
    let mut targets: Vec<HidingTarget> = groups
        .into_iter()
        .map(|(antecedent, joined_consequent)| HidingTarget {
            sensitive: h.clone(),
            antecedent: antecedent.clone(),
            joined_consequent,
        })
        .collect();
    targets.sort_by(|a, b| {
        b.full_itemset()
            .len()
            .cmp(&a.full_itemset().len())
            .then_with(|| b.is_sensitive_alone().cmp(&a.is_sensitive_alone()))
            .then_with(|| a.antecedent.cmp(&b.antecedent))
    });
    targets
}
