//! Check reports and the verdict rule.
//!
//! Every check reduces to comparing a left side against a right side with
//! a quadrature error bar. The verdict is a pure function of
//! (lhs, rhs, err) through the margin rhs - lhs:
//!
//! - fail        iff margin < -err,
//! - inconclusive iff |margin| <= err,
//! - pass        iff margin > err.
//!
//! The three cases partition the line, and a pass implies margin >= -err
//! while every |margin| <= err case lands in inconclusive, never in fail.

use std::collections::BTreeMap;
use std::fmt;

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// The pure triage rule on (margin, err).
pub fn verdict_rule(margin: f64, err: f64) -> Verdict {
    let err = err.abs();
    if margin < -err {
        Verdict::Fail
    } else if margin <= err {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    }
}

/// Result record of one numerical check of an inequality lhs <= rhs.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub check_name: String,
    /// Sorted parameter map, stable across runs for deterministic output.
    pub params: BTreeMap<String, String>,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs.
    pub margin: f64,
    /// Combined quadrature / sampling error bar.
    pub err: f64,
    pub verdict: Verdict,
}

impl VerificationReport {
    /// Build a report, deriving margin and verdict from the sides.
    pub fn from_sides(
        check_name: impl Into<String>,
        params: BTreeMap<String, String>,
        lhs: f64,
        rhs: f64,
        err: f64,
    ) -> Self {
        let margin = rhs - lhs;
        Self {
            check_name: check_name.into(),
            params,
            lhs,
            rhs,
            margin,
            err: err.abs(),
            verdict: verdict_rule(margin, err),
        }
    }

    /// Force the verdict (for documented downgrades); margin and sides
    /// stay untouched so the record remains auditable.
    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = verdict;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// One-line rendering: name, verdict, sides, margin, err, params.
    pub fn summary_line(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!(
            "{:<28} {:<12} lhs={:.6e} rhs={:.6e} margin={:+.3e} err={:.1e} [{}]",
            self.check_name,
            self.verdict.to_string(),
            self.lhs,
            self.rhs,
            self.margin,
            self.err,
            params.join(" ")
        )
    }
}

/// Convenience constructor for parameter maps.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triage_partitions_the_margin_line() {
        let err = 1e-3;
        assert_eq!(verdict_rule(-2e-3, err), Verdict::Fail);
        assert_eq!(verdict_rule(-1e-3, err), Verdict::Inconclusive);
        assert_eq!(verdict_rule(0.0, err), Verdict::Inconclusive);
        assert_eq!(verdict_rule(1e-3, err), Verdict::Inconclusive);
        assert_eq!(verdict_rule(2e-3, err), Verdict::Pass);
        // Zero error bar: only the sign matters, zero is inconclusive.
        assert_eq!(verdict_rule(0.0, 0.0), Verdict::Inconclusive);
        assert_eq!(verdict_rule(1e-300, 0.0), Verdict::Pass);
        assert_eq!(verdict_rule(-1e-300, 0.0), Verdict::Fail);
    }

    #[test]
    fn pass_implies_the_specified_inequality() {
        // Spot-check the documented invariant: pass => margin >= -err and
        // |margin| <= err => inconclusive.
        for (margin, err) in [(0.5, 0.1), (1e-6, 1e-9), (3e-3, 1e-3)] {
            assert_eq!(verdict_rule(margin, err), Verdict::Pass);
            assert!(margin >= -err);
        }
        for m in [-1e-3, 0.0, 1e-3] {
            assert_eq!(verdict_rule(m, 1e-3), Verdict::Inconclusive);
        }
    }

    #[test]
    fn reports_derive_margin_and_render() {
        let rep = VerificationReport::from_sides(
            "demo",
            params([("p", "2".into()), ("r", "0.5".into())]),
            1.0,
            1.5,
            1e-6,
        );
        assert_eq!(rep.margin, 0.5);
        assert!(rep.passed());
        let line = rep.summary_line();
        assert!(line.contains("demo") && line.contains("pass") && line.contains("p=2"));
    }
}
