//! End-to-end derivation pipelines, one per claimed result.
//!
//! Each pipeline derives equations with the engine, matches them against the
//! hand-derived catalog entries, and diffs the printed entries against the
//! engine's output. A mismatch with a derived entry is a `discrepancy`; a
//! mismatch with a printed one only adds a note.

mod pipelines;
mod report;

pub use pipelines::*;
pub use report::{expected, expected_lines, Audit, EquationRecord, Expected, Status, TargetRecord, VerificationReport};

use crate::ncexpr::RuleSet;
use thiserror::Error;

pub const CASES: [&str; 10] = [
    "fn-classical",
    "ab-symmetric",
    "prop31",
    "case-i",
    "case-ii",
    "case-iii-v0",
    "case-iii-vu",
    "prop41",
    "p34",
    "eliminate-pq",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown verification case `{0}` (known: {known})", known = CASES.join(", "))]
pub struct UnknownCase(pub String);

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Run the negative-control twin with a deliberately corrupted input.
    pub mutated: bool,
    /// Relations added to every rule set the pipeline uses.
    pub extra_rules: Option<RuleSet>,
}

impl RunOptions {
    pub fn mutated() -> Self {
        RunOptions {
            mutated: true,
            ..Default::default()
        }
    }

    pub fn with_rules(rules: RuleSet) -> Self {
        RunOptions {
            extra_rules: Some(rules),
            ..Default::default()
        }
    }

    pub(crate) fn rules(&self, base: RuleSet) -> RuleSet {
        match &self.extra_rules {
            Some(x) => base.merge(x),
            None => base,
        }
    }
}

pub fn run(case: &str, opts: &RunOptions) -> Result<VerificationReport, UnknownCase> {
    let f: fn(&RunOptions) -> VerificationReport = match case {
        "fn-classical" => verify_fn_classical,
        "ab-symmetric" => verify_ab_symmetric,
        "prop31" => verify_prop31,
        "case-i" => verify_case_i,
        "case-ii" => verify_case_ii,
        "case-iii-v0" => verify_case_iii_v0,
        "case-iii-vu" => verify_case_iii_vu,
        "prop41" => verify_prop41,
        "p34" => derive_p34,
        "eliminate-pq" => eliminate_pq,
        other => return Err(UnknownCase(other.to_string())),
    };
    Ok(f(opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::laxmat::{extract_equations, zero_curvature_residual, ResidualSign};
    use crate::ncexpr::rules;

    #[test]
    fn every_case_is_consistent() {
        for c in CASES {
            let r = run(c, &RunOptions::default()).unwrap();
            assert!(r.status.is_ok(), "{}", r.to_text());
            assert!(r.equations.iter().all(|e| e.matched_target.is_some()), "{c}");
        }
    }

    #[test]
    fn every_mutated_twin_is_a_discrepancy() {
        for c in CASES {
            let r = run(c, &RunOptions::mutated()).unwrap();
            assert_eq!(r.status, Status::Discrepancy, "{}", r.to_text());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        for c in ["prop31", "p34"] {
            let a = run(c, &RunOptions::default()).unwrap();
            let b = run(c, &RunOptions::default()).unwrap();
            assert_eq!(a.body(), b.body());
        }
    }

    #[test]
    fn unknown_case() {
        assert!(matches!(run("case-iv", &RunOptions::default()), Err(UnknownCase(_))));
    }

    #[test]
    fn extra_relations_keep_prop31_consistent() {
        let r = run("prop31", &RunOptions::with_rules(rules::quantum_zv())).unwrap();
        assert!(r.status.is_ok(), "{}", r.to_text());
    }

    #[test]
    fn prop31_records_coefficient_and_cancellation() {
        let r = run("prop31", &RunOptions::default()).unwrap();
        assert_eq!(r.status, Status::VerifiedWithNotes);
        assert!(r.note_containing("c = 4").is_some());
        assert!(r.note_containing("they cancel when the two are added").is_some());
    }

    #[test]
    fn classical_limit_commutes_with_extraction() {
        let pair = catalog::pair("qpii-pair-derived");
        let rs = rules::v_commutes_u();
        let first = zero_curvature_residual(
            &pair.p.classical_limit(),
            &pair.q.classical_limit(),
            &rs,
            ResidualSign::Standard,
        )
        .unwrap();
        let later = zero_curvature_residual(&pair.p, &pair.q, &rs, ResidualSign::Standard).unwrap();
        let a: Vec<_> = extract_equations(&first, "")
            .into_iter()
            .map(|e| e.lhs)
            .filter(|e| !e.is_zero())
            .collect();
        let mut b: Vec<_> = Vec::new();
        for e in extract_equations(&later, "") {
            let l = e.lhs.classical_limit().monic();
            if !l.is_zero() && !b.contains(&l) {
                b.push(l);
            }
        }
        assert_eq!(a, b);
    }

    #[test]
    fn p34_comparison_term_is_reported() {
        let r = run("p34", &RunOptions::default()).unwrap();
        assert!(r.note_containing("a multiple of (beta - hbar^2) p").is_some());
    }

    #[test]
    fn json_has_the_report_fields() {
        let r = run("case-i", &RunOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for k in ["case", "status", "equations", "targets", "notes", "wall_time_ms"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["status"], "verified-with-notes");
        assert!(v["equations"][0].get("provenance").is_some());
    }
}
