//! Noncommutative polynomials: finite maps from words to coefficients.

use super::atom::{Atom, Gen, Word};
use super::coeff::{Coeff, GaussRat};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct NCExpr {
    terms: BTreeMap<Word, Coeff>,
}

impl NCExpr {
    pub fn zero() -> Self {
        NCExpr::default()
    }

    pub fn one() -> Self {
        NCExpr::scalar(Coeff::one())
    }

    pub fn scalar(c: Coeff) -> Self {
        NCExpr::term(c, Word::one())
    }

    pub fn number(g: GaussRat) -> Self {
        NCExpr::scalar(Coeff::from_gauss(g))
    }

    pub fn int(n: i64) -> Self {
        NCExpr::scalar(Coeff::int(n))
    }

    pub fn term(c: Coeff, w: Word) -> Self {
        let mut e = NCExpr::zero();
        e.add_term(w, c);
        e
    }

    pub fn atom(a: Atom) -> Self {
        NCExpr::term(Coeff::one(), Word::single(a))
    }

    pub fn gen(g: Gen) -> Self {
        NCExpr::atom(Atom::plain(g))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, Coeff)>) -> Self {
        let mut e = NCExpr::zero();
        for (w, c) in it {
            e.add_term(w, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&w) {
            Some(v) => {
                *v = &*v + &c;
                v.is_zero()
            }
            None => {
                self.terms.insert(w.clone(), c);
                false
            }
        };
        if remove {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &Coeff) -> NCExpr {
        NCExpr::from_terms(self.terms.iter().map(|(w, k)| (w.clone(), k * c)))
    }

    pub fn scale_num(&self, g: &GaussRat) -> NCExpr {
        self.scale(&Coeff::from_gauss(g.clone()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> NCExpr {
        NCExpr::from_terms(self.terms.iter().map(|(w, k)| (w.clone(), f(k))))
    }

    pub fn commutator(&self, other: &NCExpr) -> NCExpr {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &NCExpr) -> NCExpr {
        &(self * other) + &(other * self)
    }

    /// Splits by λ-exponent; each part is λ-free.
    pub fn split_lambda(&self) -> BTreeMap<i32, NCExpr> {
        let mut out: BTreeMap<i32, NCExpr> = BTreeMap::new();
        for (w, c) in &self.terms {
            for (p, part) in c.split_lambda() {
                out.entry(p).or_default().add_term(w.clone(), part);
            }
        }
        out
    }

    pub fn uses_gen(&self, g: Gen) -> bool {
        self.terms.keys().any(|w| w.atoms().iter().any(|a| a.gen == g))
    }

    /// The canonical leading word (see [`Word::leading_cmp`]).
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().max_by(|a, b| a.leading_cmp(b))
    }

    /// Rescales so the leading word's top coefficient monomial has number 1.
    pub fn monic(&self) -> NCExpr {
        let Some(w) = self.leading_word() else {
            return NCExpr::zero();
        };
        let (_, g) = self.terms[w].leading().expect("stored coefficients are nonzero");
        let inv = g.inv().expect("nonzero");
        self.scale_num(&inv)
    }

    /// True when `self = c·other` for a nonzero number `c`.
    pub fn proportional_to(&self, other: &NCExpr) -> bool {
        self.monic() == other.monic()
    }

    /// Terms listed with the leading term first, for display.
    pub fn display_order(&self) -> Vec<(&Word, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.leading_cmp(a.0).then(Ordering::Equal));
        v
    }
}

impl Add for &NCExpr {
    type Output = NCExpr;
    fn add(self, o: &NCExpr) -> NCExpr {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCExpr {
    type Output = NCExpr;
    fn sub(self, o: &NCExpr) -> NCExpr {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Mul for &NCExpr {
    type Output = NCExpr;
    fn mul(self, o: &NCExpr) -> NCExpr {
        let mut out = NCExpr::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &NCExpr {
    type Output = NCExpr;
    fn neg(self) -> NCExpr {
        self.scale(&Coeff::int(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for NCExpr {
            type Output = NCExpr;
            fn $m(self, o: NCExpr) -> NCExpr { (&self).$m(&o) }
        }
        impl $tr<&NCExpr> for NCExpr {
            type Output = NCExpr;
            fn $m(self, o: &NCExpr) -> NCExpr { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for NCExpr {
    type Output = NCExpr;
    fn neg(self) -> NCExpr {
        -&self
    }
}
