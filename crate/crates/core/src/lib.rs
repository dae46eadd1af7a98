//! Association rule mining and support-preserving sensitive rule hiding.
//!
//! A [`TransactionDb`] is mined with Apriori ([`miner`]); rules mentioning a
//! sensitive item are grouped into hiding targets ([`representative`]); the
//! [`hider`] then relocates the sensitive item between transactions until
//! the targets fall below the confidence threshold; [`effects`] re-mines the
//! result to report hidden, surviving, lost and ghost rules.
//!
//! All strength decisions use exact integer ratios. Statistics can be read
//! out in any [`Scalar`] type.
//!
//! ```
//! use arhide::{fixtures, hider, Item, Thresholds};
//!
//! let th = Thresholds::parse("33%", "70%").unwrap();
//! let c = Item::new("C").unwrap();
//! let result = hider::hide_all(&fixtures::table2(), &th, &[c]).unwrap();
//! assert_eq!(result.transformed, fixtures::table4_d1());
//! assert!(result.unhidden.is_empty());
//! ```

pub mod basket;
pub mod effects;
mod error;
pub mod fixtures;
pub mod hider;
pub mod miner;
pub mod model;
pub mod representative;
mod scalar;

pub use basket::{parse_database, serialize_database};
pub use error::{Error, Result};
pub use model::{
    format_percent, is_strong, parse_fraction, rule_stats, support_count, Item, Itemset, Rule,
    RuleStats, Thresholds, Transaction, TransactionDb,
};
pub use scalar::Scalar;

/// Exact ratio used for supports, confidences and thresholds.
pub type Rational = num_rational::Ratio<u64>;
/// Wider exact ratio, for callers accumulating statistics over many databases.
pub type WideRational = num_rational::Ratio<u128>;
