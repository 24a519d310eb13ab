// SPDX-License-Identifier: Apache-2.0

//! Check reports and their CSV / JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Violation,
    /// An optimizer did not meet its stopping rule; nothing was decided.
    Inconclusive,
    /// Degenerate instance, not evaluated.
    Skipped,
}

/// How `lhs` and `rhs` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≤ rhs`: passes when `gap ≥ −tolerance`.
    AtMost,
    /// `lhs = rhs`: passes when `|gap| ≤ tolerance`.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub instance_seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub gap: f64,
    pub pass: bool,
    pub tolerance: f64,
    pub relation: Relation,
    pub status: CheckStatus,
    pub diagnostics: BTreeMap<String, Value>,
}

fn gap_of(lhs: f64, rhs: f64) -> f64 {
    if lhs == rhs {
        // also covers +∞ on both sides
        0.0
    } else {
        rhs - lhs
    }
}

impl CheckReport {
    /// Inequality `lhs ≤ rhs` up to `tolerance`.
    pub fn at_most(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(name, lhs, rhs, tolerance, Relation::AtMost)
    }

    /// Identity `lhs = rhs` up to `tolerance`.
    pub fn equal(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(name, lhs, rhs, tolerance, Relation::Equal)
    }

    fn build(name: &str, lhs: f64, rhs: f64, tolerance: f64, relation: Relation) -> Self {
        let gap = gap_of(lhs, rhs);
        let pass = match relation {
            Relation::AtMost => gap >= -tolerance,
            Relation::Equal => gap.abs() <= tolerance,
        };
        Self {
            check_name: name.to_string(),
            instance_seed: 0,
            lhs,
            rhs,
            gap,
            pass,
            tolerance,
            relation,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Violation },
            diagnostics: BTreeMap::new(),
        }
    }

    /// Report for an instance that was not evaluated.
    pub fn skipped(name: &str, reason: &str) -> Self {
        let mut r = Self::build(name, f64::NAN, f64::NAN, 0.0, Relation::AtMost);
        r.pass = false;
        r.status = CheckStatus::Skipped;
        r.with("reason", reason)
    }

    /// Marks the report undecided; `pass` is cleared so it never counts as
    /// a success.
    pub fn inconclusive(mut self, reason: &str) -> Self {
        self.pass = false;
        self.status = CheckStatus::Inconclusive;
        self.with("inconclusive", reason)
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.diagnostics.insert(key.to_string(), v);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.instance_seed = seed;
        self
    }

    pub fn is_violation(&self) -> bool {
        self.status == CheckStatus::Violation
    }
}

/// Fifteen significant digits, switching to scientific notation outside
/// `[1e-4, 1e15)`.
pub fn format_value(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..15).contains(&mag) {
        let decimals = (14 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.14e}")
    }
}

pub fn format_gap(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6e}")
    } else {
        format_value(x)
    }
}

pub const CSV_HEADER: &str = "check_name,instance_seed,lhs,rhs,gap,pass,tolerance,status";

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Violation => "violation",
        CheckStatus::Inconclusive => "inconclusive",
        CheckStatus::Skipped => "skipped",
    }
}

/// CSV with a header row; diagnostics are omitted.
pub fn to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:e},{}",
            r.check_name,
            r.instance_seed,
            format_value(r.lhs),
            format_value(r.rhs),
            format_gap(r.gap),
            r.pass,
            r.tolerance,
            status_name(r.status)
        );
    }
    out
}

/// One JSON object per line.
pub fn to_json_lines(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

/// Aggregate over a set of reports.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub violations: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    /// Smallest `gap` among evaluated inequality reports.
    pub min_gap: Option<f64>,
    /// Largest `|gap|` among evaluated identity reports.
    pub max_identity_error: Option<f64>,
}

pub fn summarize(reports: &[CheckReport]) -> Summary {
    let mut s = Summary {
        total: reports.len(),
        ..Summary::default()
    };
    for r in reports {
        match r.status {
            CheckStatus::Pass => s.passed += 1,
            CheckStatus::Violation => s.violations += 1,
            CheckStatus::Inconclusive => s.inconclusive += 1,
            CheckStatus::Skipped => s.skipped += 1,
        }
        if matches!(r.status, CheckStatus::Pass | CheckStatus::Violation) {
            match r.relation {
                Relation::AtMost => {
                    s.min_gap = Some(s.min_gap.map_or(r.gap, |g: f64| g.min(r.gap)));
                }
                Relation::Equal => {
                    let e = r.gap.abs();
                    s.max_identity_error = Some(s.max_identity_error.map_or(e, |g: f64| g.max(e)));
                }
            }
        }
    }
    s
}
