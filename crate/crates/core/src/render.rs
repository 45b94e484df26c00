//! Text, CSV and JSON renderings of audit reports and range
//! summaries.
//!
//! Output is a pure function of the data: no timestamps, no timings,
//! no environment details. Identical audits render to identical
//! bytes, which the test suite relies on when comparing runs across
//! thread counts.

use crate::error::{Error, Result};
use crate::verify::{AuditReport, RangeSummary};
use std::fmt::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!(
                "unknown format '{other}' (expected text, csv or json)"
            )),
        }
    }
}

/// Column order of every CSV rendering. One row per root class for
/// primes with class rows; one row per prime for balance primes, with
/// the class and prediction fields left empty.
pub const CSV_HEADER: &str = "p,case,mod12,n,g,class_gn,pi_a,pi_b,w,r,s,delta,alpha,beta,gamma,\
h,actual_sign,exponent,formula_sign,agrees,plus,minus";

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_rows(report: &AuditReport, out: &mut String) {
    let h = opt(report.h);
    if report.rows.is_empty() {
        let balance = report.balance.expect("balance present when no class rows");
        let _ = writeln!(
            out,
            "{},{},{},{},{},,{},{},{},{},{},{},{},{},{},{},{},,,,{},{}",
            report.p,
            report.case,
            report.mod12,
            report.n,
            report.g,
            report.pi.a,
            report.pi.b,
            report.w,
            report.r,
            report.s,
            report.delta,
            report.alpha,
            report.beta,
            report.gamma,
            h,
            report.actual_sign,
            balance.plus,
            balance.minus,
        );
        return;
    }
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},,",
            report.p,
            report.case,
            report.mod12,
            report.n,
            row.class_rep,
            row.class_gn,
            row.pi.a,
            row.pi.b,
            row.w,
            row.r,
            row.s,
            row.delta,
            row.alpha,
            row.beta,
            row.gamma,
            h,
            report.actual_sign,
            row.exponent,
            row.sign,
            u8::from(row.agrees),
        );
    }
}

fn signed(v: i32) -> &'static str {
    if v >= 0 {
        "+1"
    } else {
        "-1"
    }
}

fn text_report(report: &AuditReport, out: &mut String) {
    let _ = writeln!(
        out,
        "p = {} ({} mod 12, case {}), n = {}, g = {}",
        report.p, report.mod12, report.case, report.n, report.g
    );
    let _ = writeln!(
        out,
        "  pi = {}, w = {}, r = {}, s = {}",
        report.pi, report.w, report.r, report.s
    );
    let _ = write!(
        out,
        "  delta = {}, alpha = {}, beta = {}, gamma = {}",
        report.delta, report.alpha, report.beta, report.gamma
    );
    match report.h {
        Some(h) => {
            let _ = writeln!(out, ", h = {h}");
        }
        None => {
            let _ = writeln!(out);
        }
    }
    let _ = writeln!(out, "  actual sign: {}", signed(report.actual_sign));
    if let Some(balance) = report.balance {
        let _ = writeln!(
            out,
            "  sign balance over all primitive roots: {} plus, {} minus",
            balance.plus, balance.minus
        );
    }
    for row in &report.rows {
        let _ = writeln!(
            out,
            "  class of g = {} (g^n = {}): pi = {}, s = {}, gamma = {}, exponent = {}, \
predicted {} -> {}",
            row.class_rep,
            row.class_gn,
            row.pi,
            row.s,
            row.gamma,
            row.exponent,
            signed(row.sign),
            if row.agrees { "agrees" } else { "disagrees" },
        );
    }
}

/// Renders a single per-prime report.
pub fn render_report(report: &AuditReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| Error::internal(format!("serialization: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            csv_rows(report, &mut out);
            Ok(out)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            text_report(report, &mut out);
            Ok(out)
        }
    }
}

/// Renders a range audit. CSV holds the per-prime rows only; the
/// aggregate figures appear in the text and JSON forms.
pub fn render_range(range: &RangeSummary, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(range)
                .map_err(|e| Error::internal(format!("serialization: {e}")))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for report in &range.reports {
                csv_rows(report, &mut out);
            }
            Ok(out)
        }
        OutputFormat::Text => {
            let mut out = String::new();
            let s = &range.summary;
            let _ = writeln!(
                out,
                "audit of primes in [{}, {}], scope {}",
                s.p_min, s.p_max, s.scope
            );
            let _ = writeln!(
                out,
                "  primes audited: {} ({} balance, {} fixed-sign)",
                s.primes_audited, s.balance_primes, s.independence_primes
            );
            if s.formula_rows > 0 {
                let _ = writeln!(
                    out,
                    "  closed-form sign rows: {} of {} agree with the brute-force sign",
                    s.formula_agree, s.formula_rows
                );
            }
            if s.parity_link_checked > 0 {
                let _ = writeln!(
                    out,
                    "  residue-count parity link: {} of {} primes agree (informational)",
                    s.parity_link_agree, s.parity_link_checked
                );
            }
            if !s.suites.is_empty() {
                let _ = writeln!(out, "  suites:");
                for suite in &s.suites {
                    let _ = writeln!(
                        out,
                        "    {:<18} bound {:>5}  checked {:>4}  passed {:>4}  failed {:>2}",
                        suite.name, suite.bound, suite.checked, suite.passed, suite.failed
                    );
                    for failure in &suite.failures {
                        let _ = writeln!(out, "      FAIL {failure}");
                    }
                }
            }
            for error in &s.errors {
                let _ = writeln!(out, "  ERROR {error}");
            }
            if !range.reports.is_empty() {
                let _ = writeln!(out, "  reports:");
                for report in &range.reports {
                    let line = if let Some(b) = report.balance {
                        format!(
                            "p = {:>5}: sign(g = {}) {}, balance {}/{}",
                            report.p,
                            report.g,
                            signed(report.actual_sign),
                            b.plus,
                            b.minus
                        )
                    } else {
                        let rows: Vec<String> = report
                            .rows
                            .iter()
                            .map(|r| {
                                format!(
                                    "g = {}: {} {}",
                                    r.class_rep,
                                    signed(r.sign),
                                    if r.agrees { "ok" } else { "off" }
                                )
                            })
                            .collect();
                        format!(
                            "p = {:>5}: sign {}, predicted {}",
                            report.p,
                            signed(report.actual_sign),
                            rows.join(", ")
                        )
                    };
                    let _ = writeln!(out, "    {line}");
                }
            }
            let _ = writeln!(
                out,
                "result: {}",
                if range.has_failures() { "FAILED" } else { "ok" }
            );
            Ok(out)
        }
    }
}
