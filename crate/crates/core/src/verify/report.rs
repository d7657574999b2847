//! Verification reports and the bookkeeping that produces them.

use crate::catalog::{self, TargetEquation};
use crate::laxmat::{Equation, Mat2};
use crate::ncexpr::{NCExpr, RuleSet};
use serde::Serialize;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    VerifiedWithNotes,
    Discrepancy,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::VerifiedWithNotes => "verified-with-notes",
            Status::Discrepancy => "discrepancy",
        }
    }

    pub fn is_ok(self) -> bool {
        self != Status::Discrepancy
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationRecord {
    pub provenance: Vec<String>,
    pub expression: String,
    pub matched_target: Option<String>,
    pub difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetRecord {
    pub target: String,
    pub transcription: &'static str,
    pub expression: String,
    pub matched: bool,
    pub difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub status: Status,
    pub equations: Vec<EquationRecord>,
    pub targets: Vec<TargetRecord>,
    pub notes: Vec<String>,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON value; without `timings` the wall time is left out so identical
    /// runs serialize identically.
    pub fn to_json_value(&self, timings: bool) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !timings {
            if let Some(m) = v.as_object_mut() {
                m.remove("wall_time_ms");
            }
        }
        v
    }

    /// Report body with the wall time zeroed, for determinism checks.
    pub fn body(&self) -> String {
        let mut r = self.clone();
        r.wall_time_ms = 0;
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "case {}: {} ({} ms)",
            self.case,
            self.status.label(),
            self.wall_time_ms
        );
        if !self.equations.is_empty() {
            let _ = writeln!(s, "  equations:");
        }
        for e in &self.equations {
            let mark = match &e.matched_target {
                Some(t) => format!("matches {t}"),
                None => format!("UNMATCHED, difference {}", e.difference.as_deref().unwrap_or("?")),
            };
            let _ = writeln!(s, "    {} = 0", e.expression);
            let _ = writeln!(s, "      [{}] {}", e.provenance.join("; "), mark);
        }
        if !self.targets.is_empty() {
            let _ = writeln!(s, "  targets:");
        }
        for t in &self.targets {
            let verdict = if t.matched {
                "ok".to_string()
            } else {
                format!("differs by {}", t.difference.as_deref().unwrap_or("?"))
            };
            let _ = writeln!(s, "    {} ({}): {}", t.target, t.transcription, verdict);
        }
        if !self.notes.is_empty() {
            let _ = writeln!(s, "  notes:");
        }
        for n in &self.notes {
            let _ = writeln!(s, "    - {n}");
        }
        s
    }

    pub fn note_containing(&self, needle: &str) -> Option<&str> {
        self.notes.iter().map(String::as_str).find(|n| n.contains(needle))
    }
}

/// A labelled expected line, e.g. `qp34-target-derived#1`.
#[derive(Clone, Debug)]
pub struct Expected {
    pub label: String,
    pub expr: NCExpr,
}

pub fn expected_lines(t: &TargetEquation) -> Vec<Expected> {
    t.lines
        .iter()
        .enumerate()
        .map(|(k, e)| Expected {
            label: format!("{}#{}", t.key, k + 1),
            expr: e.clone(),
        })
        .collect()
}

pub fn expected(key: &str) -> Vec<Expected> {
    expected_lines(&catalog::target(key))
}

/// Accumulates equations, target checks and notes for one pipeline run.
pub struct Audit {
    case: String,
    start: Instant,
    equations: Vec<EquationRecord>,
    targets: Vec<TargetRecord>,
    notes: Vec<String>,
    failed: bool,
    printed_mismatch: bool,
}

fn norm(e: &NCExpr, rules: &RuleSet) -> Result<NCExpr, String> {
    rules.normalize(e).map(|x| x.monic()).map_err(|err| err.to_string())
}

impl Audit {
    pub fn new(case: &str) -> Self {
        Audit {
            case: case.to_string(),
            start: Instant::now(),
            equations: Vec::new(),
            targets: Vec::new(),
            notes: Vec::new(),
            failed: false,
            printed_mismatch: false,
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn fail(&mut self, s: impl Into<String>) {
        self.failed = true;
        self.notes.push(s.into());
    }

    /// Matches engine equations against hand-derived expectations. Every
    /// nontrivial equation must be expected and every expected line produced.
    pub fn stage(&mut self, step: &str, eqs: &[Equation], expect: &[Expected], rules: &RuleSet) {
        let mut exp: Vec<(String, NCExpr, bool)> = Vec::new();
        for x in expect {
            match norm(&x.expr, rules) {
                Ok(e) => {
                    let trivial = e.is_zero();
                    exp.push((x.label.clone(), e, trivial));
                }
                Err(err) => self.fail(format!("{step}: {}: {err}", x.label)),
            }
        }
        for eq in eqs {
            let lhs = match norm(&eq.lhs, rules) {
                Ok(e) => e,
                Err(err) => {
                    self.fail(format!("{step}: {err}"));
                    continue;
                }
            };
            if lhs.is_zero() {
                continue;
            }
            let provenance = eq.provenance.iter().map(ToString::to_string).collect();
            match exp.iter_mut().find(|(_, e, _)| *e == lhs) {
                Some((label, _, hit)) => {
                    *hit = true;
                    self.equations.push(EquationRecord {
                        provenance,
                        expression: lhs.to_string(),
                        matched_target: Some(label.clone()),
                        difference: Some("0".into()),
                    });
                }
                None => {
                    self.failed = true;
                    let nearest = exp
                        .iter()
                        .find(|(_, e, _)| e.leading_word() == lhs.leading_word())
                        .map(|(l, e, _)| format!("{} relative to {l}", &lhs - e));
                    self.equations.push(EquationRecord {
                        provenance,
                        expression: lhs.to_string(),
                        matched_target: None,
                        difference: nearest,
                    });
                }
            }
        }
        for (label, e, hit) in exp {
            if !hit {
                self.failed = true;
            }
            self.targets.push(TargetRecord {
                target: label,
                transcription: "derived",
                expression: e.to_string(),
                matched: hit,
                difference: (!hit).then(|| "not produced".to_string()),
            });
        }
    }

    /// Diffs a printed line against the engine's result (both made monic).
    /// Returns the difference; a nonzero one is recorded as a note.
    pub fn compare(&mut self, label: &str, printed: &NCExpr, derived: &NCExpr, rules: &RuleSet) -> Option<NCExpr> {
        let (p, d) = match (norm(printed, rules), norm(derived, rules)) {
            (Ok(p), Ok(d)) => (p, d),
            (Err(e), _) | (_, Err(e)) => {
                self.fail(format!("{label}: {e}"));
                return None;
            }
        };
        let diff = &d - &p;
        let matched = diff.is_zero();
        if !matched {
            self.printed_mismatch = true;
            self.notes.push(format!(
                "{label} as printed differs from the derived form: derived - printed = {diff}"
            ));
        }
        self.targets.push(TargetRecord {
            target: label.to_string(),
            transcription: "as-printed",
            expression: p.to_string(),
            matched,
            difference: (!matched).then(|| diff.to_string()),
        });
        Some(diff)
    }

    /// A printed statement reduced to `leftover = 0`; a nonzero leftover is a note.
    pub fn claim(&mut self, label: &str, leftover: &NCExpr, rules: &RuleSet) -> Option<NCExpr> {
        let r = match rules.normalize(leftover) {
            Ok(r) => r,
            Err(err) => {
                self.fail(format!("{label}: {err}"));
                return None;
            }
        };
        let matched = r.is_zero();
        if !matched {
            self.printed_mismatch = true;
            self.notes.push(format!("{label} does not hold: leftover {r}"));
        }
        self.targets.push(TargetRecord {
            target: label.to_string(),
            transcription: "as-printed",
            expression: "0".into(),
            matched,
            difference: (!matched).then(|| r.to_string()),
        });
        Some(r)
    }

    /// Entrywise `derived − printed` without rescaling.
    pub fn compare_matrix(&mut self, label: &str, printed: &Mat2, derived: &Mat2, rules: &RuleSet) -> bool {
        let diff = match (derived - printed).normalize(rules) {
            Ok(d) => d,
            Err(err) => {
                self.fail(format!("{label}: {err}"));
                return false;
            }
        };
        let parts: Vec<String> = diff
            .e
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, e)| format!("({},{}): {e}", k / 2 + 1, k % 2 + 1))
            .collect();
        let matched = parts.is_empty();
        if !matched {
            self.printed_mismatch = true;
            self.notes.push(format!(
                "{label} as printed differs entrywise: derived - printed = {}",
                parts.join("; ")
            ));
        }
        self.targets.push(TargetRecord {
            target: label.to_string(),
            transcription: "as-printed",
            expression: printed
                .to_strings()
                .iter()
                .flatten()
                .cloned()
                .collect::<Vec<_>>()
                .join(" | "),
            matched,
            difference: (!matched).then(|| parts.join("; ")),
        });
        matched
    }

    /// Records an expression that must normalize to zero.
    pub fn identity(&mut self, label: &str, e: &NCExpr, rules: &RuleSet) -> bool {
        match rules.normalize(e) {
            Ok(r) if r.is_zero() => {
                self.targets.push(TargetRecord {
                    target: label.to_string(),
                    transcription: "identity",
                    expression: "0".into(),
                    matched: true,
                    difference: None,
                });
                true
            }
            Ok(r) => {
                self.failed = true;
                self.targets.push(TargetRecord {
                    target: label.to_string(),
                    transcription: "identity",
                    expression: r.to_string(),
                    matched: false,
                    difference: Some(r.to_string()),
                });
                false
            }
            Err(err) => {
                self.fail(format!("{label}: {err}"));
                false
            }
        }
    }

    pub fn matrix_identity(&mut self, label: &str, m: &Mat2, rules: &RuleSet) -> bool {
        let mut ok = true;
        for (k, e) in m.e.iter().enumerate() {
            ok &= self.identity(&format!("{label} ({},{})", k / 2 + 1, k % 2 + 1), e, rules);
        }
        ok
    }

    pub fn finish(self) -> VerificationReport {
        let status = if self.failed {
            Status::Discrepancy
        } else if self.printed_mismatch {
            Status::VerifiedWithNotes
        } else {
            Status::Verified
        };
        VerificationReport {
            case: self.case,
            status,
            equations: self.equations,
            targets: self.targets,
            notes: self.notes,
            wall_time_ms: self.start.elapsed().as_millis(),
        }
    }
}
