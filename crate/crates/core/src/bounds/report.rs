use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::numfmt::sig_opt;

use super::evaluators::NotApplicable;

/// Default relative tolerance for equality verdicts.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    EqualityWithinTol,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::EqualityWithinTol => "equality_within_tol",
            Verdict::NotApplicable => "not_applicable",
        }
    }
}

/// How `lhs` and `rhs` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Proven `lhs <= rhs`.
    Upper,
    /// Proven `lhs >= rhs`.
    Lower,
    /// Proven `lhs > rhs`; near-equality counts as a violation.
    StrictLower,
    /// Conjectured `lhs >= rhs`; never a theorem violation.
    Conjecture,
    /// Two upper bounds of one quantity, `lhs <= rhs` expected but not proven.
    BoundVsBound,
    /// Bound value only; the bounded quantity is not computed.
    Evaluation,
}

impl BoundKind {
    /// Whether a `violated` verdict contradicts a proven statement.
    pub fn is_theorem(&self) -> bool {
        matches!(self, BoundKind::Upper | BoundKind::Lower | BoundKind::StrictLower)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: String,
    pub kind: BoundKind,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    /// Positive when the inequality holds with room to spare.
    pub slack: Option<f64>,
    pub verdict: Verdict,
    pub tolerance: f64,
    pub note: Option<String>,
    pub inputs: BTreeMap<String, f64>,
}

impl BoundReport {
    /// Compares `lhs` against the bound `rhs` with relative tolerance `tol`.
    pub fn compare(
        theorem: &str,
        kind: BoundKind,
        lhs: f64,
        rhs: Result<f64, NotApplicable>,
        tol: f64,
        inputs: &[(&str, f64)],
    ) -> Self {
        let inputs: BTreeMap<String, f64> = inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let rhs = match rhs {
            Ok(v) => v,
            Err(NotApplicable(reason)) => return Self::not_applicable(theorem, kind, Some(lhs), reason, tol, inputs),
        };
        if kind == BoundKind::Evaluation {
            return BoundReport {
                theorem: theorem.into(),
                kind,
                lhs: None,
                rhs: Some(rhs),
                slack: None,
                verdict: Verdict::NotApplicable,
                tolerance: tol,
                note: None,
                inputs,
            };
        }
        let slack = match kind {
            BoundKind::Upper | BoundKind::BoundVsBound => rhs - lhs,
            _ => lhs - rhs,
        };
        let scale = lhs.abs().max(rhs.abs());
        let within = slack.abs() <= tol * scale;
        let verdict = match kind {
            BoundKind::StrictLower if slack > tol * scale => Verdict::Holds,
            BoundKind::StrictLower => Verdict::Violated,
            _ if within => Verdict::EqualityWithinTol,
            _ if slack > 0.0 => Verdict::Holds,
            _ => Verdict::Violated,
        };
        BoundReport {
            theorem: theorem.into(),
            kind,
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            verdict,
            tolerance: tol,
            note: None,
            inputs,
        }
    }

    /// Pure evaluation of a bound whose left side is not available.
    pub fn evaluation(theorem: &str, rhs: Result<f64, NotApplicable>, inputs: &[(&str, f64)]) -> Self {
        Self::compare(theorem, BoundKind::Evaluation, f64::NAN, rhs, 0.0, inputs)
    }

    pub fn not_applicable(
        theorem: &str,
        kind: BoundKind,
        lhs: Option<f64>,
        reason: String,
        tol: f64,
        inputs: BTreeMap<String, f64>,
    ) -> Self {
        BoundReport {
            theorem: theorem.into(),
            kind,
            lhs: lhs.filter(|v| v.is_finite()),
            rhs: None,
            slack: None,
            verdict: Verdict::NotApplicable,
            tolerance: tol,
            note: Some(reason),
            inputs,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(old) => format!("{old}; {note}"),
            None => note,
        });
        self
    }

    /// A proven inequality failed.
    pub fn is_theorem_violation(&self) -> bool {
        self.kind.is_theorem() && self.verdict == Verdict::Violated
    }
}

/// CSV with columns `theorem,lhs,rhs,slack,verdict`.
pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut s = String::from("theorem,lhs,rhs,slack,verdict\n");
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.theorem,
            sig_opt(r.lhs),
            sig_opt(r.rhs),
            sig_opt(r.slack),
            r.verdict.as_str()
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let up = |lhs, rhs| BoundReport::compare("t", BoundKind::Upper, lhs, Ok(rhs), 1e-3, &[]).verdict;
        assert_eq!(up(1.0, 2.0), Verdict::Holds);
        assert_eq!(up(2.0, 2.0005), Verdict::EqualityWithinTol);
        assert_eq!(up(2.0005, 2.0), Verdict::EqualityWithinTol);
        assert_eq!(up(2.1, 2.0), Verdict::Violated);
        let strict = |lhs, rhs| BoundReport::compare("t", BoundKind::StrictLower, lhs, Ok(rhs), 1e-3, &[]).verdict;
        assert_eq!(strict(2.0, 1.0), Verdict::Holds);
        assert_eq!(strict(2.0, 2.0), Verdict::Violated);
        let r = BoundReport::compare("t", BoundKind::Lower, 1.0, Err(NotApplicable("no c".into())), 1e-3, &[]);
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert_eq!(r.note.as_deref(), Some("no c"));
        assert!(!r.is_theorem_violation());
        let c = BoundReport::compare("t", BoundKind::Conjecture, 1.0, Ok(2.0), 1e-3, &[]);
        assert_eq!(c.verdict, Verdict::Violated);
        assert!(!c.is_theorem_violation());
    }

    #[test]
    fn csv_layout() {
        let reports = vec![
            BoundReport::compare("a", BoundKind::Upper, 1.0, Ok(2.0), 1e-3, &[("beta", 1.0)]),
            BoundReport::evaluation("b", Ok(4.0), &[]),
        ];
        assert_eq!(reports_to_csv(&reports), "theorem,lhs,rhs,slack,verdict\na,1,2,1,holds\nb,,4,,not_applicable\n");
    }
}
