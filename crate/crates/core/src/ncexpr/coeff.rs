//! Exact coefficients: Gaussian rationals times monomials in λ (Laurent), ħ and α.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::int(1)
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// True when the number prints with a leading minus sign.
    pub fn is_negative_like(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// Grammar-compatible rendering; mixed values are parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", fmt_rat(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let mag = self.im.abs();
                if mag.is_one() {
                    write!(f, "({} {} i)", fmt_rat(&self.re), sign)
                } else {
                    write!(f, "({} {} {}*i)", fmt_rat(&self.re), sign, fmt_rat(&mag))
                }
            }
        }
    }
}

/// Exponents of the central symbols in one coefficient monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub hbar: u32,
    pub alpha: u32,
    pub lam: i32,
}

impl Monomial {
    pub fn new(lam: i32, hbar: u32, alpha: u32) -> Self {
        Monomial { hbar, alpha, lam }
    }

    pub fn is_unit(&self) -> bool {
        self.lam == 0 && self.hbar == 0 && self.alpha == 0
    }

    fn mul(self, o: Monomial) -> Monomial {
        Monomial {
            hbar: self.hbar + o.hbar,
            alpha: self.alpha + o.alpha,
            lam: self.lam + o.lam,
        }
    }
}

/// Finite sum of `GaussRat · λ^a ħ^b α^c`; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coeff {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::from_gauss(GaussRat::one())
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        Coeff::monomial(Monomial::default(), g)
    }

    pub fn int(n: i64) -> Self {
        Coeff::from_gauss(GaussRat::int(n))
    }

    pub fn i() -> Self {
        Coeff::from_gauss(GaussRat::i())
    }

    pub fn monomial(m: Monomial, g: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(m, g);
        }
        Coeff { terms }
    }

    pub fn lam(power: i32) -> Self {
        Coeff::monomial(Monomial::new(power, 0, 0), GaussRat::one())
    }

    pub fn hbar() -> Self {
        Coeff::monomial(Monomial::new(0, 1, 0), GaussRat::one())
    }

    pub fn alpha() -> Self {
        Coeff::monomial(Monomial::new(0, 0, 1), GaussRat::one())
    }

    /// β = iħ/4.
    pub fn beta() -> Self {
        Coeff::monomial(Monomial::new(0, 1, 0), GaussRat::new(BigRational::zero(), rat(1, 4)))
    }

    /// δ = α − ½.
    pub fn delta() -> Self {
        &Coeff::alpha() - &Coeff::from_gauss(GaussRat::ratio(1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, g)| m.is_unit() && g.is_one())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The plain number if this coefficient has no λ, ħ or α dependence.
    pub fn as_number(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        match self.terms.iter().next() {
            Some((m, g)) if self.terms.len() == 1 && m.is_unit() => Some(g.clone()),
            _ => None,
        }
    }

    /// Coefficient of the highest monomial, used for monic scaling.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, g: GaussRat) {
        if g.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &g;
                v.is_zero()
            }
            None => {
                self.terms.insert(m, g);
                false
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, g: &GaussRat) -> Coeff {
        let mut out = Coeff::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * g);
        }
        out
    }

    pub fn map_terms(&self, f: impl Fn(Monomial, &GaussRat) -> Option<(Monomial, GaussRat)>) -> Coeff {
        let mut out = Coeff::zero();
        for (m, g) in &self.terms {
            if let Some((m2, g2)) = f(*m, g) {
                out.add_term(m2, g2);
            }
        }
        out
    }

    /// Drops every monomial carrying a positive power of ħ.
    pub fn classical_limit(&self) -> Coeff {
        self.map_terms(|m, g| (m.hbar == 0).then(|| (m, g.clone())))
    }

    pub fn d_dlambda(&self) -> Coeff {
        self.map_terms(|m, g| {
            (m.lam != 0).then(|| (Monomial { lam: m.lam - 1, ..m }, g * &GaussRat::int(i64::from(m.lam))))
        })
    }

    /// Replaces α by a number.
    pub fn eval_alpha(&self, value: &GaussRat) -> Coeff {
        self.map_terms(|m, g| Some((Monomial { alpha: 0, ..m }, g * &value.pow(m.alpha))))
    }

    /// Replaces α by −α.
    pub fn negate_alpha(&self) -> Coeff {
        self.map_terms(|m, g| Some((m, if m.alpha % 2 == 1 { -g } else { g.clone() })))
    }

    /// Splits by λ-exponent; each part is λ-free.
    pub fn split_lambda(&self) -> BTreeMap<i32, Coeff> {
        let mut out: BTreeMap<i32, Coeff> = BTreeMap::new();
        for (m, g) in &self.terms {
            out.entry(m.lam)
                .or_default()
                .add_term(Monomial { lam: 0, ..*m }, g.clone());
        }
        out
    }

    pub fn times_lambda(&self, power: i32) -> Coeff {
        self.map_terms(|m, g| {
            Some((
                Monomial {
                    lam: m.lam + power,
                    ..m
                },
                g.clone(),
            ))
        })
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (m, g) in &o.terms {
            out.add_term(*m, g.clone());
        }
        out
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (m, g) in &o.terms {
            out.add_term(*m, -g);
        }
        out
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (ma, ga) in &self.terms {
            for (mb, gb) in &o.terms {
                out.add_term(ma.mul(*mb), ga * gb);
            }
        }
        out
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(&GaussRat::int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_inverse() {
        let g = GaussRat::new(rat(3, 2), rat(-1, 3));
        let prod = &g * &g.inv().unwrap();
        assert!(prod.is_one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::int(-1));
    }

    #[test]
    fn beta_and_delta_expand() {
        let four_beta = Coeff::beta().scale(&GaussRat::int(4));
        assert_eq!(four_beta, &Coeff::i() * &Coeff::hbar());
        let d = &Coeff::delta() - &Coeff::alpha();
        assert_eq!(d.as_number(), Some(GaussRat::ratio(-1, 2)));
    }

    #[test]
    fn laurent_power_rule() {
        let c = &Coeff::alpha() * &Coeff::lam(-1);
        let d = c.d_dlambda();
        assert_eq!(d, (&Coeff::alpha() * &Coeff::lam(-2)).scale(&GaussRat::int(-1)));
        assert!(Coeff::hbar().d_dlambda().is_zero());
    }

    #[test]
    fn cancellation_leaves_no_zero_entries() {
        let c = &Coeff::lam(1) - &Coeff::lam(1);
        assert!(c.is_zero());
        assert_eq!(c.len(), 0);
    }

    #[test]
    fn split_lambda_parts() {
        let c = &(&Coeff::lam(2) + &Coeff::hbar()) + &Coeff::lam(-1).scale(&GaussRat::int(3));
        let parts = c.split_lambda();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-1, 0, 2]);
        assert_eq!(parts[&0], Coeff::hbar());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(GaussRat::new(rat(0, 1), rat(1, 2)).to_string(), "1/2*i");
        assert_eq!(GaussRat::new(rat(1, 1), rat(-2, 1)).to_string(), "(1 - 2*i)");
    }
}
