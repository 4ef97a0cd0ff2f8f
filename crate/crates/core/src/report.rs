//! Check outcomes and the deterministic run report.
//!
//! Everything here serializes to a stable JSON layout: results are sorted,
//! maps are ordered, scalars appear only as canonical strings, and no
//! timing or host information is recorded, so identical inputs produce
//! byte-identical reports.

use serde::Serialize;
use std::collections::BTreeMap;

/// Schema tag embedded in every report.
pub const REPORT_SCHEMA: &str = "yso5-report/1";

/// Where a failed identity differs, down to one matrix entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Coordinates, e.g. `"entry (3,7)"` or `"relation u^-1 v^-2 (2,1|0,-1)"`.
    pub location: String,
    /// The value found there, as a canonical scalar string.
    pub got: String,
    /// The value demanded there, as a canonical scalar string.
    pub want: String,
}

/// Status of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Identity held exactly.
    Pass,
    /// Identity failed; a witness is attached.
    Fail,
    /// A quantity was measured and recorded rather than asserted.
    Measured,
}

/// The internal result of checking one identity, before suite/reference
/// names are attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityOutcome {
    /// Stable identifier within its group, e.g. `"bracket(1,2)(2,3)"`.
    pub id: String,
    /// Outcome.
    pub status: Status,
    /// First differing entry on failure.
    pub witness: Option<Witness>,
    /// Extra recorded values (fitted constants, counts, ...).
    pub metrics: BTreeMap<String, String>,
}

impl IdentityOutcome {
    /// A passing outcome.
    pub fn pass(id: impl Into<String>) -> Self {
        IdentityOutcome {
            id: id.into(),
            status: Status::Pass,
            witness: None,
            metrics: BTreeMap::new(),
        }
    }

    /// A failing outcome with its witness.
    pub fn fail(id: impl Into<String>, witness: Witness) -> Self {
        IdentityOutcome {
            id: id.into(),
            status: Status::Fail,
            witness: Some(witness),
            metrics: BTreeMap::new(),
        }
    }

    /// A measured (recorded, not asserted) outcome.
    pub fn measured(id: impl Into<String>) -> Self {
        IdentityOutcome {
            id: id.into(),
            status: Status::Measured,
            witness: None,
            metrics: BTreeMap::new(),
        }
    }

    /// Attaches a metric value.
    pub fn with_metric(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metrics.insert(key.into(), value.into());
        self
    }

    /// Attaches a note under the `note` metric key.
    pub fn with_note(self, note: impl Into<String>) -> Self {
        self.with_metric("note", note)
    }
}

/// One line of a run report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    /// Suite name (`so5`, `ybe`, `rtt`, `drinfeld`, `fock`).
    pub suite: String,
    /// Check identifier, unique within the suite.
    pub check: String,
    /// Which rule of the bundled corpus this verifies (`"3.8"`, `"30"`, ...).
    #[serde(rename = "paper_ref")]
    pub rule_ref: String,
    /// Outcome.
    pub status: Status,
    /// First differing entry on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Extra recorded values.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, String>,
}

impl CheckResult {
    /// Lifts an [`IdentityOutcome`] into a report line.
    pub fn from_outcome(
        suite: impl Into<String>,
        rule_ref: impl Into<String>,
        outcome: IdentityOutcome,
    ) -> Self {
        CheckResult {
            suite: suite.into(),
            check: outcome.id,
            rule_ref: rule_ref.into(),
            status: outcome.status,
            witness: outcome.witness,
            metrics: outcome.metrics,
        }
    }
}

/// Aggregate counts over a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct Summary {
    /// Number of passing checks.
    pub pass: usize,
    /// Number of failing checks.
    pub fail: usize,
    /// Number of measured-only entries.
    pub measured: usize,
    /// Total lines.
    pub total: usize,
}

/// A complete verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    /// Report schema tag.
    pub schema: &'static str,
    /// Version of the tool that produced the report.
    pub tool_version: String,
    /// Echo of the configuration the run used (canonical strings).
    pub config: BTreeMap<String, String>,
    /// All check lines, sorted by (suite, check).
    pub results: Vec<CheckResult>,
    /// Aggregate counts.
    pub summary: Summary,
}

impl RunReport {
    /// Builds a report from unsorted results, sorting and summarizing.
    pub fn new(
        tool_version: impl Into<String>,
        config: BTreeMap<String, String>,
        mut results: Vec<CheckResult>,
    ) -> Self {
        results.sort_by(|a, b| (&a.suite, &a.check).cmp(&(&b.suite, &b.check)));
        let mut summary = Summary {
            total: results.len(),
            ..Summary::default()
        };
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Measured => summary.measured += 1,
            }
        }
        RunReport {
            schema: REPORT_SCHEMA,
            tool_version: tool_version.into(),
            config,
            results,
            summary,
        }
    }

    /// True when any check failed.
    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    /// The canonical JSON form: pretty-printed with sorted structure and a
    /// trailing newline. Byte-identical for identical runs.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-oriented Markdown summary: per-suite counts, failures listed
    /// individually, measured values surfaced.
    pub fn to_markdown(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "# Verification report").unwrap();
        writeln!(out).unwrap();
        writeln!(
            out,
            "{} checks: **{} pass**, **{} fail**, {} measured.",
            self.summary.total, self.summary.pass, self.summary.fail, self.summary.measured
        )
        .unwrap();
        writeln!(out).unwrap();

        let mut by_suite: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
        for r in &self.results {
            let e = by_suite.entry(&r.suite).or_default();
            match r.status {
                Status::Pass => e.0 += 1,
                Status::Fail => e.1 += 1,
                Status::Measured => e.2 += 1,
            }
        }
        writeln!(out, "| suite | pass | fail | measured |").unwrap();
        writeln!(out, "|-------|------|------|----------|").unwrap();
        for (suite, (p, f, m)) in &by_suite {
            writeln!(out, "| {suite} | {p} | {f} | {m} |").unwrap();
        }
        writeln!(out).unwrap();

        let failures: Vec<&CheckResult> = self
            .results
            .iter()
            .filter(|r| r.status == Status::Fail)
            .collect();
        if !failures.is_empty() {
            writeln!(out, "## Failures").unwrap();
            writeln!(out).unwrap();
            for r in failures {
                write!(out, "- `{}/{}` (rule {})", r.suite, r.check, r.rule_ref).unwrap();
                if let Some(w) = &r.witness {
                    write!(out, ": {} got {} want {}", w.location, w.got, w.want).unwrap();
                }
                writeln!(out).unwrap();
            }
            writeln!(out).unwrap();
        }

        let measured: Vec<&CheckResult> = self
            .results
            .iter()
            .filter(|r| !r.metrics.is_empty())
            .collect();
        if !measured.is_empty() {
            writeln!(out, "## Recorded values").unwrap();
            writeln!(out).unwrap();
            for r in measured {
                for (k, v) in &r.metrics {
                    writeln!(out, "- `{}/{}` {k} = {v}", r.suite, r.check).unwrap();
                }
            }
        }
        out
    }
}

/// Convenience: outcome of comparing two operators that should be equal,
/// as a pass/fail with the first differing entry.
pub fn equality_outcome<S, Op>(id: impl Into<String>, lhs: &Op, rhs: &Op) -> IdentityOutcome
where
    S: crate::scalar::ExactScalar,
    Op: crate::matrix::AlgebraOp<S>,
{
    let diff = lhs.sub_op(rhs);
    match diff.first_nonzero_entry() {
        None => IdentityOutcome::pass(id),
        Some((r, c, _)) => IdentityOutcome::fail(
            id,
            Witness {
                location: format!("entry ({r},{c})"),
                got: lhs.entry_at(r, c).to_string(),
                want: rhs.entry_at(r, c).to_string(),
            },
        ),
    }
}

/// Convenience: outcome of asserting an operator is exactly zero.
pub fn zero_outcome<S, Op>(id: impl Into<String>, op: &Op) -> IdentityOutcome
where
    S: crate::scalar::ExactScalar,
    Op: crate::matrix::AlgebraOp<S>,
{
    match op.first_nonzero_entry() {
        None => IdentityOutcome::pass(id),
        Some((r, c, v)) => IdentityOutcome::fail(
            id,
            Witness {
                location: format!("entry ({r},{c})"),
                got: v.to_string(),
                want: S::zero().to_string(),
            },
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_sorts_results_and_counts_them() {
        let config = BTreeMap::new();
        let r1 = CheckResult {
            suite: "zz".into(),
            check: "a".into(),
            rule_ref: "1".into(),
            status: Status::Pass,
            witness: None,
            metrics: BTreeMap::new(),
        };
        let r2 = CheckResult {
            suite: "aa".into(),
            check: "b".into(),
            rule_ref: "2".into(),
            status: Status::Fail,
            witness: Some(Witness {
                location: "entry (0,0)".into(),
                got: "1/1".into(),
                want: "0/1".into(),
            }),
            metrics: BTreeMap::new(),
        };
        let rep = RunReport::new("0.0.0", config, vec![r1, r2]);
        assert_eq!(rep.results[0].suite, "aa");
        assert_eq!(rep.summary.pass, 1);
        assert_eq!(rep.summary.fail, 1);
        assert!(rep.has_failures());
        // Canonical JSON is stable across calls.
        assert_eq!(rep.to_canonical_json(), rep.to_canonical_json());
        assert!(rep.to_canonical_json().contains("\"paper_ref\": \"2\""));
        assert!(rep.to_markdown().contains("## Failures"));
    }
}
