//! Oriented rewrite rules on adjacent atom pairs and normal ordering.

use super::atom::{Atom, Gen, Word};
use super::coeff::{Coeff, GaussRat};
use super::expr::NCExpr;
use super::parse::{parse, ParseError};
use super::Context;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

pub const DEFAULT_PASS_BUDGET: usize = 10_000;
pub const PASS_BUDGET_ENV: &str = "LAXLAB_PASS_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule {left} -> {right} reintroduces its own pattern")]
    SelfOverlap { left: String, right: String },
    #[error("unknown rule set `{0}`")]
    UnknownSet(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rewrite budget of {budget} rule applications exhausted without reaching a normal form")]
pub struct NormalizeError {
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub left: (Atom, Atom),
    pub right: NCExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub name: String,
    rules: Vec<Rule>,
    pub budget: usize,
}

/// Budget from `LAXLAB_PASS_BUDGET`, falling back to the default.
pub fn env_budget() -> usize {
    static BUDGET: OnceLock<usize> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var(PASS_BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&n: &usize| n > 0)
            .unwrap_or(DEFAULT_PASS_BUDGET)
    })
}

fn contains_pair(w: &Word, l: (Atom, Atom)) -> bool {
    w.atoms().windows(2).any(|p| p[0] == l.0 && p[1] == l.1)
}

impl RuleSet {
    pub fn empty(name: &str) -> Self {
        RuleSet {
            name: name.to_string(),
            rules: Vec::new(),
            budget: env_budget(),
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget.max(1);
        self
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn add(mut self, left: (Atom, Atom), right: NCExpr) -> Result<Self, RuleError> {
        if right.terms().any(|(w, _)| contains_pair(w, left)) {
            return Err(RuleError::SelfOverlap {
                left: format!("{}*{}", left.0, left.1),
                right: right.to_string(),
            });
        }
        self.rules.push(Rule { left, right });
        Ok(self)
    }

    /// Union; rules of `self` keep priority.
    pub fn merge(&self, other: &RuleSet) -> RuleSet {
        let mut out = self.clone();
        if !other.name.is_empty() {
            out.name = if out.name.is_empty() {
                other.name.clone()
            } else {
                format!("{}+{}", out.name, other.name)
            };
        }
        for r in &other.rules {
            if !out.rules.contains(r) {
                out.rules.push(r.clone());
            }
        }
        out.budget = out.budget.max(other.budget);
        out
    }

    fn find(&self, w: &Word) -> Option<(usize, &Rule)> {
        let atoms = w.atoms();
        for k in 0..atoms.len().saturating_sub(1) {
            for r in &self.rules {
                if atoms[k] == r.left.0 && atoms[k + 1] == r.left.1 {
                    return Some((k, r));
                }
            }
        }
        None
    }

    /// Leftmost rewriting to a fixpoint, counting rule applications.
    pub fn normalize(&self, e: &NCExpr) -> Result<NCExpr, NormalizeError> {
        if self.rules.is_empty() {
            return Ok(e.clone());
        }
        let mut current = e.clone();
        let mut applications = 0usize;
        loop {
            let mut next = NCExpr::zero();
            let mut changed = false;
            for (w, c) in current.terms() {
                match self.find(w) {
                    None => next.add_term(w.clone(), c.clone()),
                    Some((k, r)) => {
                        applications += 1;
                        if applications > self.budget {
                            return Err(NormalizeError { budget: self.budget });
                        }
                        changed = true;
                        let prefix = Word(w.atoms()[..k].to_vec());
                        let suffix = Word(w.atoms()[k + 2..].to_vec());
                        for (rw, rc) in r.right.terms() {
                            next.add_term(prefix.concat(rw).concat(&suffix), c * rc);
                        }
                    }
                }
            }
            current = next;
            if !changed {
                return Ok(current);
            }
        }
    }
}

fn ex(s: &str) -> NCExpr {
    parse(s, &Context::standard()).expect("built-in rule literal")
}

fn u_k(k: u32) -> Atom {
    Atom::deriv(Gen::U, k)
}

/// `v·z → z·v + (i/2)ħu`, i.e. `[z,v] = −(i/2)ħu`.
pub fn quantum_zv() -> RuleSet {
    RuleSet::empty("quantum-zv")
        .add((Atom::plain(Gen::V), Atom::plain(Gen::Z)), ex("z*v + 1/2*i*hbar*u"))
        .expect("static rule")
}

/// `[z,u⁽ᵏ⁾] = −(i/2)ħu⁽ᵏ⁾` for k ≤ `max_order`: the undifferentiated relation for u
/// together with its z-derivatives.
pub fn quantum_zu(max_order: u32) -> RuleSet {
    let mut rs = RuleSet::empty("quantum-zu");
    let half_i_hbar = Coeff::monomial(
        super::coeff::Monomial::new(0, 1, 0),
        GaussRat::new(super::coeff::rat(0, 1), super::coeff::rat(1, 2)),
    );
    for k in 0..=max_order {
        let right = &(&NCExpr::gen(Gen::Z) * &NCExpr::atom(u_k(k))) + &NCExpr::atom(u_k(k)).scale(&half_i_hbar);
        rs = rs.add((u_k(k), Atom::plain(Gen::Z)), right).expect("static rule");
    }
    rs
}

/// `[z,u′] = −(i/2)ħu`.
pub fn quantum_zu_prime() -> RuleSet {
    RuleSet::empty("quantum-zu-prime")
        .add((u_k(1), Atom::plain(Gen::Z)), ex("z*u' + 1/2*i*hbar*u"))
        .expect("static rule")
}

/// `g·g⁻¹ → 1` and `g⁻¹·g → 1`.
pub fn inverse(g: Gen) -> RuleSet {
    RuleSet::empty(&format!("{}-inverse", g.name()))
        .add((Atom::plain(g), Atom::inverse(g)), NCExpr::one())
        .and_then(|r| r.add((Atom::inverse(g), Atom::plain(g)), NCExpr::one()))
        .expect("static rule")
}

/// `g⁻¹·g′ → g′·g⁻¹`: left and right logarithmic derivatives identified.
pub fn log_derivative(g: Gen) -> RuleSet {
    RuleSet::empty(&format!("{}-log-derivative", g.name()))
        .add(
            (Atom::inverse(g), Atom::deriv(g, 1)),
            &NCExpr::atom(Atom::deriv(g, 1)) * &NCExpr::atom(Atom::inverse(g)),
        )
        .expect("static rule")
}

/// `v·u → u·v`.
pub fn v_commutes_u() -> RuleSet {
    commuting(Gen::V, 0, Gen::U, 0, "v-commutes-u")
}

/// `a⁽ⁱ⁾·b⁽ʲ⁾ → b⁽ʲ⁾·a⁽ⁱ⁾`.
pub fn commuting(a: Gen, i: u32, b: Gen, j: u32, name: &str) -> RuleSet {
    let (x, y) = (Atom::deriv(a, i), Atom::deriv(b, j));
    RuleSet::empty(name)
        .add((x, y), &NCExpr::atom(y) * &NCExpr::atom(x))
        .expect("static rule")
}

/// Relations `[r,q] = 2ħu`, `[u,q] = [u,r] = ħ`.
pub fn weyl_a1() -> RuleSet {
    RuleSet::empty("weyl-a1")
        .add((Atom::plain(Gen::R), Atom::plain(Gen::Q)), ex("q*r + 2*hbar*u"))
        .and_then(|r| r.add((Atom::plain(Gen::Q), Atom::plain(Gen::U)), ex("u*q - hbar")))
        .and_then(|r| r.add((Atom::plain(Gen::R), Atom::plain(Gen::U)), ex("u*r - hbar")))
        .expect("static rule")
}

pub const NAMED_SETS: [&str; 9] = [
    "quantum-zv",
    "quantum-zu",
    "quantum-zu-prime",
    "p-inverse",
    "q-inverse",
    "r-inverse",
    "p-log-derivative",
    "v-commutes-u",
    "weyl-a1",
];

pub fn named(name: &str) -> Result<RuleSet, RuleError> {
    Ok(match name {
        "quantum-zv" => quantum_zv(),
        "quantum-zu" => quantum_zu(6),
        "quantum-zu-prime" => quantum_zu_prime(),
        "p-inverse" => inverse(Gen::P),
        "q-inverse" => inverse(Gen::Q),
        "r-inverse" => inverse(Gen::R),
        "p-log-derivative" => log_derivative(Gen::P),
        "v-commutes-u" => v_commutes_u(),
        "weyl-a1" => weyl_a1(),
        other => return Err(RuleError::UnknownSet(other.to_string())),
    })
}

/// The inverse rules for p, q and r together.
pub fn inverses() -> RuleSet {
    inverse(Gen::P).merge(&inverse(Gen::Q)).merge(&inverse(Gen::R))
}

pub fn combine(sets: &[RuleSet]) -> RuleSet {
    sets.iter().fold(RuleSet::empty(""), |acc, s| acc.merge(s))
}

/// Lookup table used by reports.
pub fn describe() -> BTreeMap<&'static str, String> {
    NAMED_SETS
        .iter()
        .map(|n| {
            let rs = named(n).expect("listed");
            let body = rs
                .rules()
                .iter()
                .map(|r| format!("{}*{} -> {}", r.left.0, r.left.1, r.right))
                .collect::<Vec<_>>()
                .join("; ");
            (*n, body)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zv_rule() {
        assert_eq!(quantum_zv().normalize(&ex("v*z")).unwrap(), ex("z*v + 1/2*i*hbar*u"));
        assert_eq!(quantum_zv().normalize(&ex("u*z")).unwrap(), ex("u*z"));
        assert_eq!(quantum_zv().normalize(&ex("[z,v]")).unwrap(), ex("-1/2*i*hbar*u"));
    }

    #[test]
    fn inverse_cancellation() {
        assert_eq!(inverse(Gen::P).normalize(&ex("p*p^-1*p")).unwrap(), ex("p"));
    }

    #[test]
    fn derivative_of_identity_vanishes() {
        let e = ex("p*p^-1").d_dz();
        assert!(inverse(Gen::P).normalize(&e).unwrap().is_zero());
    }

    #[test]
    fn self_overlap_rejected() {
        let r = RuleSet::empty("bad").add((Atom::plain(Gen::U), Atom::plain(Gen::V)), ex("u*v + 1"));
        assert!(matches!(r, Err(RuleError::SelfOverlap { .. })));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cycle = RuleSet::empty("cycle")
            .add((Atom::plain(Gen::U), Atom::plain(Gen::V)), ex("v*u"))
            .unwrap()
            .add((Atom::plain(Gen::V), Atom::plain(Gen::U)), ex("u*v"))
            .unwrap()
            .with_budget(50);
        assert_eq!(cycle.normalize(&ex("u*v")), Err(NormalizeError { budget: 50 }));
    }

    #[test]
    fn normalize_is_idempotent() {
        let rs = quantum_zv().merge(&v_commutes_u());
        let once = rs.normalize(&ex("v*v*z*u*v*z")).unwrap();
        assert_eq!(rs.normalize(&once).unwrap(), once);
    }

    #[test]
    fn shifted_u_relation() {
        let rs = quantum_zu(3);
        assert_eq!(rs.normalize(&ex("u''*z")).unwrap(), ex("z*u'' + 1/2*i*hbar*u''"));
    }

    #[test]
    fn all_named_sets_build() {
        for n in NAMED_SETS {
            assert!(!named(n).unwrap().is_empty());
        }
        assert!(named("nope").is_err());
    }
}
