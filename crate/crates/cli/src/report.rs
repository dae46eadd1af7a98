//! Text and JSON renderings of mining and sanitization results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use arhide::effects::SideEffectReport;
use arhide::hider::{Move, SanitizationResult};
use arhide::miner::{RuleSet, ScanCounter};
use arhide::{format_percent, Item, Itemset, Rule, RuleStats};
use serde::Serialize;

fn items(set: &Itemset) -> Vec<String> {
    set.iter().map(|i| i.to_string()).collect()
}

/// `X => Y (supp%, conf%)`.
pub fn rule_line(rule: &Rule, stats: &RuleStats) -> String {
    format!(
        "{rule} ({}, {})",
        format_percent(stats.support()),
        format_percent(stats.confidence())
    )
}

#[derive(Debug, Serialize)]
pub struct RuleJson {
    pub antecedent: Vec<String>,
    pub consequent: Vec<String>,
    pub support: String,
    pub confidence: String,
}

impl RuleJson {
    pub fn new(rule: &Rule, stats: &RuleStats) -> Self {
        RuleJson {
            antecedent: items(rule.antecedent()),
            consequent: items(rule.consequent()),
            support: format!("{}/{}", stats.support_count, stats.n),
            confidence: format!("{}/{}", stats.support_count, stats.antecedent_count),
        }
    }
}

pub fn rules_json(rules: &RuleSet) -> Vec<RuleJson> {
    rules.iter().map(|(r, s)| RuleJson::new(r, s)).collect()
}

#[derive(Debug, Serialize)]
pub struct MineJson {
    pub rules: Vec<RuleJson>,
    pub n: usize,
}

fn support_json(profile: &BTreeMap<Item, u64>) -> BTreeMap<String, u64> {
    profile.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn scans_json(scans: &ScanCounter) -> BTreeMap<String, u64> {
    scans.phases().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Serialize)]
pub struct EvalJson {
    pub rules_pruned: usize,
    pub hidden_sensitive: Vec<RuleJson>,
    pub surviving_sensitive: Vec<RuleJson>,
    pub lost_rules: Vec<RuleJson>,
    pub ghost_rules: Vec<RuleJson>,
    pub moves_applied: usize,
    pub transactions_modified: usize,
    pub support_invariant_ok: bool,
    pub support_before: BTreeMap<String, u64>,
    pub support_after: BTreeMap<String, u64>,
    pub scans: BTreeMap<String, u64>,
}

impl EvalJson {
    pub fn new(report: &SideEffectReport) -> Self {
        EvalJson {
            rules_pruned: report.rules_pruned(),
            hidden_sensitive: rules_json(&report.hidden_sensitive),
            surviving_sensitive: rules_json(&report.surviving_sensitive),
            lost_rules: rules_json(&report.lost_rules),
            ghost_rules: rules_json(&report.ghost_rules),
            moves_applied: report.moves_applied,
            transactions_modified: report.transactions_modified,
            support_invariant_ok: report.support_invariant_ok,
            support_before: support_json(&report.support_before),
            support_after: support_json(&report.support_after),
            scans: scans_json(&report.scans),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MoveJson {
    pub sensitive: String,
    pub donor_tid: u64,
    pub recipient_tid: u64,
    pub target_antecedent: Vec<String>,
    pub target_consequent: Vec<String>,
    pub conf_before: String,
    pub conf_after: String,
}

impl MoveJson {
    fn new(m: &Move) -> Self {
        MoveJson {
            sensitive: m.sensitive.to_string(),
            donor_tid: m.donor_tid,
            recipient_tid: m.recipient_tid,
            target_antecedent: items(&m.target.antecedent),
            target_consequent: items(&m.target.joined_consequent),
            conf_before: m.conf_before.to_string(),
            conf_after: m.conf_after.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HideJson {
    pub moves: Vec<MoveJson>,
    pub dropped_items: Vec<String>,
    pub unhidden: Vec<RuleJson>,
    pub hider_scans: BTreeMap<String, u64>,
    pub side_effects: EvalJson,
}

impl HideJson {
    pub fn new(result: &SanitizationResult, effects: &SideEffectReport) -> Self {
        HideJson {
            moves: result.moves.iter().map(MoveJson::new).collect(),
            dropped_items: result.dropped_items.iter().map(|i| i.to_string()).collect(),
            unhidden: rules_json(&result.unhidden),
            hider_scans: scans_json(&result.scans),
            side_effects: EvalJson::new(effects),
        }
    }
}

fn rule_block(out: &mut String, title: &str, rules: &RuleSet) {
    let _ = writeln!(out, "{title}: {}", rules.len());
    for (r, s) in rules.iter() {
        let _ = writeln!(out, "  {}", rule_line(r, s));
    }
}

fn scans_line(scans: &ScanCounter) -> String {
    let phases: Vec<String> = scans.phases().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{} ({})", scans.total(), phases.join(", "))
}

pub fn eval_text(report: &SideEffectReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rules pruned: {}", report.rules_pruned());
    rule_block(&mut out, "hidden sensitive rules", &report.hidden_sensitive);
    rule_block(
        &mut out,
        "surviving sensitive rules",
        &report.surviving_sensitive,
    );
    rule_block(&mut out, "lost rules", &report.lost_rules);
    rule_block(&mut out, "ghost rules", &report.ghost_rules);
    let _ = writeln!(out, "moves applied: {}", report.moves_applied);
    let _ = writeln!(
        out,
        "transactions modified: {}",
        report.transactions_modified
    );
    for (item, before) in &report.support_before {
        let after = report.support_after.get(item).copied().unwrap_or(0);
        let _ = writeln!(out, "support {item}: {before} -> {after}");
    }
    let _ = writeln!(
        out,
        "support invariant: {}",
        if report.support_invariant_ok {
            "ok"
        } else {
            "VIOLATED"
        }
    );
    let _ = writeln!(out, "scans: {}", scans_line(&report.scans));
    out
}

pub fn hide_text(result: &SanitizationResult, effects: &SideEffectReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "moves: {}", result.moves.len());
    for m in &result.moves {
        let _ = writeln!(
            out,
            "  {} from T{} to T{} (target {}, confidence {} -> {})",
            m.sensitive,
            m.donor_tid,
            m.recipient_tid,
            m.target,
            format_percent(m.conf_before),
            format_percent(m.conf_after)
        );
    }
    let dropped: Vec<String> = result.dropped_items.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(
        out,
        "dropped items: {}",
        if dropped.is_empty() {
            "none".to_string()
        } else {
            dropped.join(",")
        }
    );
    rule_block(&mut out, "unhidden rules", &result.unhidden);
    let _ = writeln!(out, "hider scans: {}", scans_line(&result.scans));
    out.push_str("side effects:\n");
    for line in eval_text(effects).lines() {
        let _ = writeln!(out, "  {line}");
    }
    out
}
