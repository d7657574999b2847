//! Randomized kernel properties, shared with the acceptance suite.

use laxlab_core::ncexpr::rules::{self, RuleSet};
use laxlab_core::ncexpr::{parse, Atom, Coeff, Context, GaussRat, Gen, Monomial, NCExpr, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

fn atoms() -> Vec<Atom> {
    vec![
        Atom::plain(Gen::Z),
        Atom::plain(Gen::X),
        Atom::plain(Gen::U),
        Atom::deriv(Gen::U, 1),
        Atom::deriv(Gen::U, 2),
        Atom::plain(Gen::V),
        Atom::plain(Gen::P),
        Atom::inverse(Gen::P),
        Atom::deriv(Gen::P, 1),
        Atom::plain(Gen::Q),
        Atom::plain(Gen::R),
        Atom::plain(Gen::Nu),
    ]
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (-4i64..=4, -2i64..=2, 1i64..=3, -1i32..=1, 0u32..=1, 0u32..=1).prop_map(|(re, im, den, lam, h, a)| {
        let g = &GaussRat::ratio(re, den) + &(&GaussRat::i() * &GaussRat::ratio(im, 1));
        Coeff::monomial(Monomial::new(lam, h, a), g)
    })
}

fn expr_with(max_terms: usize, max_len: usize) -> impl Strategy<Value = NCExpr> {
    let pool = atoms();
    let n = pool.len();
    prop::collection::vec((prop::collection::vec(0..n, 0..=max_len), coeff()), 0..=max_terms).prop_map(move |terms| {
        let mut e = NCExpr::zero();
        for (idx, c) in terms {
            e.add_term(Word(idx.iter().map(|&k| pool[k]).collect()), c);
        }
        e
    })
}

fn expr() -> impl Strategy<Value = NCExpr> {
    expr_with(4, 3)
}

/// Rules with no overlaps that fail to resolve: the zv relation, the p-inverse
/// pair and the Weyl relations in q, r, u.
fn confluent() -> RuleSet {
    rules::quantum_zv()
        .merge(&rules::inverse(Gen::P))
        .merge(&rules::weyl_a1())
}

fn relators(rs: &RuleSet) -> Vec<NCExpr> {
    rs.rules()
        .iter()
        .map(|r| &(&NCExpr::atom(r.left.0) * &NCExpr::atom(r.left.1)) - &r.right)
        .collect()
}

fn check<S: Strategy>(s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(CASES)
    })
    .run(&s, f)
    .map_err(|e| e.to_string())
}

pub fn print_parse_roundtrip() -> Result<(), String> {
    check(expr(), |e| {
        let text = e.to_string();
        prop_assert_eq!(parse(&text, &Context::standard()).unwrap(), e, "{}", text);
        Ok(())
    })
}

pub fn leibniz() -> Result<(), String> {
    check((expr(), expr()), |(a, b)| {
        prop_assert_eq!((&a * &b).d_dz(), &(&a.d_dz() * &b) + &(&a * &b.d_dz()));
        Ok(())
    })
}

pub fn derivatives_commute() -> Result<(), String> {
    check(expr(), |e| {
        prop_assert_eq!(e.d_dz().d_dlambda(), e.d_dlambda().d_dz());
        Ok(())
    })
}

pub fn commutator_antisymmetry() -> Result<(), String> {
    check((expr(), expr()), |(a, b)| {
        prop_assert_eq!(a.commutator(&b), -&b.commutator(&a));
        prop_assert_eq!(&a.commutator(&b) + &b.commutator(&a), NCExpr::zero());
        Ok(())
    })
}

pub fn scalarize_is_a_homomorphism() -> Result<(), String> {
    check((expr(), expr()), |(a, b)| {
        prop_assert_eq!((&a * &b).scalarize(), (&a.scalarize() * &b.scalarize()).scalarize());
        prop_assert_eq!((&a + &b).scalarize(), &a.scalarize() + &b.scalarize());
        prop_assert!(a.commutator(&b).scalarize().is_zero());
        Ok(())
    })
}

pub fn ideal_soundness() -> Result<(), String> {
    let rs = confluent();
    let rel = relators(&rs);
    check((expr(), expr_with(2, 2), expr_with(2, 2), 0usize..5), |(e, x, y, k)| {
        let member = &(&x * &rel[k % rel.len()]) * &y;
        let n = rs.normalize(&e).unwrap();
        prop_assert_eq!(rs.normalize(&(&e + &member)).unwrap(), n.clone());
        prop_assert!(rs.normalize(&member).unwrap().is_zero());
        prop_assert_eq!(rs.normalize(&n).unwrap(), n);
        Ok(())
    })
}

pub type Property = fn() -> Result<(), String>;

#[allow(dead_code)]
pub const SUITE: [(&str, Property); 6] = [
    ("parser round-trip", print_parse_roundtrip),
    ("Leibniz rule", leibniz),
    ("mixed derivatives commute", derivatives_commute),
    ("commutator antisymmetry", commutator_antisymmetry),
    ("scalarize homomorphism", scalarize_is_a_homomorphism),
    ("ideal soundness", ideal_soundness),
];
