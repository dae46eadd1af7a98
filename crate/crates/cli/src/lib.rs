//! `arhide` command line: `mine`, `hide`, `eval` and `cover` over basket files.
//!
//! Exit codes: 0 when every requested sensitive rule is hidden (or nothing
//! was requested), 1 when some sensitive rule survives, 2 on usage or input
//! errors.

mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use arhide::effects::analyze;
use arhide::hider::hide_all;
use arhide::miner::strong_rules;
use arhide::representative::{cover, cover_size};
use arhide::{parse_database, serialize_database, Item, Rule, Thresholds, TransactionDb};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use report::rule_line;

#[derive(Debug, Parser)]
#[command(
    name = "arhide",
    version,
    about = "Mine association rules and hide sensitive ones"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Minimum support, e.g. 33%, 0.33 or 1/3.
    #[arg(long = "min-support")]
    pub min_support: String,
    /// Minimum confidence, e.g. 70%, 0.7 or 7/10.
    #[arg(long = "min-confidence")]
    pub min_confidence: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the strong rules of a database.
    Mine {
        #[arg(long)]
        db: PathBuf,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Relocate sensitive items so that rules mentioning them are no longer strong.
    Hide {
        #[arg(long)]
        db: PathBuf,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        /// Comma separated sensitive items, processed in the given order.
        #[arg(long)]
        sensitive: String,
        /// Where to write the transformed basket file.
        #[arg(long)]
        out: PathBuf,
        /// Where to write the report; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare a database with its sanitized version.
    Eval {
        #[arg(long)]
        before: PathBuf,
        #[arg(long)]
        after: PathBuf,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[arg(long, default_value = "")]
        sensitive: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the cover of a rule such as C=>A,B.
    Cover {
        #[arg(long)]
        rule: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// A failure that maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn load(path: &Path) -> Result<TransactionDb, UsageError> {
    let bytes = std::fs::read(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_database(&bytes).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn thresholds(args: &ThresholdArgs) -> Result<Thresholds, UsageError> {
    Ok(Thresholds::parse(&args.min_support, &args.min_confidence)?)
}

fn sensitive_items(list: &str, allow_empty: bool) -> Result<Vec<Item>, UsageError> {
    if list.trim().is_empty() {
        return if allow_empty {
            Ok(Vec::new())
        } else {
            Err(UsageError("no sensitive items given".into()))
        };
    }
    list.split(',')
        .map(|s| Item::new(s.trim()).map_err(UsageError::from))
        .collect()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn execute(command: Command, stdout: &mut dyn Write) -> CmdResult {
    match command {
        Command::Mine {
            db,
            thresholds: th,
            format,
        } => {
            let db = load(&db)?;
            let rules = strong_rules(&db, &thresholds(&th)?);
            let text = match format {
                Format::Text => rules
                    .iter()
                    .map(|(r, s)| rule_line(r, s) + "\n")
                    .collect::<String>(),
                Format::Json => json(&report::MineJson {
                    rules: report::rules_json(&rules),
                    n: db.len(),
                }),
            };
            stdout.write_all(text.as_bytes())?;
            Ok(0)
        }
        Command::Hide {
            db,
            thresholds: th,
            sensitive,
            out,
            report: report_path,
            format,
        } => {
            let th = thresholds(&th)?;
            let hs = sensitive_items(&sensitive, false)?;
            let db = load(&db)?;
            let result = hide_all(&db, &th, &hs)?;
            let effects = analyze(&db, &result.transformed, &th, &hs)?;
            std::fs::write(&out, serialize_database(&result.transformed))
                .map_err(|e| UsageError(format!("{}: {e}", out.display())))?;
            let text = match format {
                Format::Text => report::hide_text(&result, &effects),
                Format::Json => json(&report::HideJson::new(&result, &effects)),
            };
            match report_path {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
                None => stdout.write_all(text.as_bytes())?,
            }
            Ok(if result.unhidden.is_empty() { 0 } else { 1 })
        }
        Command::Eval {
            before,
            after,
            thresholds: th,
            sensitive,
            format,
        } => {
            let th = thresholds(&th)?;
            let hs = sensitive_items(&sensitive, true)?;
            let report = analyze(&load(&before)?, &load(&after)?, &th, &hs)?;
            let text = match format {
                Format::Text => report::eval_text(&report),
                Format::Json => json(&report::EvalJson::new(&report)),
            };
            stdout.write_all(text.as_bytes())?;
            Ok(if report.surviving_sensitive.is_empty() {
                0
            } else {
                1
            })
        }
        Command::Cover { rule, format } => {
            let rule = Rule::parse(&rule)?;
            let c = cover(&rule);
            let m = rule.consequent().len() as u32;
            let text = match format {
                Format::Text => {
                    let mut text: String = c.members.iter().map(|r| format!("{r}\n")).collect();
                    text.push_str(&format!("count: 3^{m} - 2^{m} = {}\n", cover_size(m)));
                    text
                }
                Format::Json => json(&serde_json::json!({
                    "base": rule.to_string(),
                    "members": c.members.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "count": c.members.len(),
                })),
            };
            stdout.write_all(text.as_bytes())?;
            Ok(0)
        }
    }
}
