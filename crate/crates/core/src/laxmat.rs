//! 2×2 matrices over the noncommutative algebra.

use crate::ncexpr::{lit, Coeff, GaussRat, NCExpr, NormalizeError, RuleSet};
use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mat2 {
    pub e: [NCExpr; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    S1,
    S2,
    S3,
    I,
    IPlus,
    IMinus,
}

impl Pauli {
    pub fn from_name(s: &str) -> Option<Pauli> {
        Some(match s {
            "s1" | "sigma1" | "σ1" => Pauli::S1,
            "s2" | "sigma2" | "σ2" => Pauli::S2,
            "s3" | "sigma3" | "σ3" => Pauli::S3,
            "I" | "id" => Pauli::I,
            "I+" => Pauli::IPlus,
            "I-" => Pauli::IMinus,
            _ => return None,
        })
    }
}

pub fn pauli(p: Pauli) -> Mat2 {
    let (a, b, c, d) = match p {
        Pauli::S1 => ("0", "1", "1", "0"),
        Pauli::S2 => ("0", "-i", "i", "0"),
        Pauli::S3 => ("1", "0", "0", "-1"),
        Pauli::I => ("1", "0", "0", "1"),
        Pauli::IPlus => ("0", "1", "0", "0"),
        Pauli::IMinus => ("0", "0", "-1", "0"),
    };
    Mat2::from_strs([a, b, c, d])
}

impl Mat2 {
    pub fn new(a: NCExpr, b: NCExpr, c: NCExpr, d: NCExpr) -> Self {
        Mat2 { e: [a, b, c, d] }
    }

    pub fn from_strs(s: [&str; 4]) -> Self {
        Mat2 { e: s.map(lit) }
    }

    pub fn zero() -> Self {
        Mat2::default()
    }

    pub fn identity() -> Self {
        pauli(Pauli::I)
    }

    /// Σ cₖ·Mₖ with each coefficient multiplied from the left.
    pub fn combo(parts: &[(NCExpr, Pauli)]) -> Self {
        parts
            .iter()
            .fold(Mat2::zero(), |acc, (c, p)| &acc + &pauli(*p).scale_left(c))
    }

    pub fn entry(&self, row: usize, col: usize) -> &NCExpr {
        &self.e[2 * row + col]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(NCExpr::is_zero)
    }

    pub fn map(&self, f: impl Fn(&NCExpr) -> NCExpr) -> Mat2 {
        Mat2 {
            e: [f(&self.e[0]), f(&self.e[1]), f(&self.e[2]), f(&self.e[3])],
        }
    }

    pub fn try_map<E>(&self, f: impl Fn(&NCExpr) -> Result<NCExpr, E>) -> Result<Mat2, E> {
        Ok(Mat2 {
            e: [f(&self.e[0])?, f(&self.e[1])?, f(&self.e[2])?, f(&self.e[3])?],
        })
    }

    pub fn scale_left(&self, c: &NCExpr) -> Mat2 {
        self.map(|x| c * x)
    }

    pub fn scale(&self, c: &Coeff) -> Mat2 {
        self.map(|x| x.scale(c))
    }

    pub fn commutator(&self, o: &Mat2) -> Mat2 {
        &(self * o) - &(o * self)
    }

    pub fn d_dz(&self) -> Mat2 {
        self.map(NCExpr::d_dz)
    }

    pub fn d_dlambda(&self) -> Mat2 {
        self.map(NCExpr::d_dlambda)
    }

    pub fn normalize(&self, rules: &RuleSet) -> Result<Mat2, NormalizeError> {
        self.try_map(|x| rules.normalize(x))
    }

    pub fn classical_limit(&self) -> Mat2 {
        self.map(NCExpr::classical_limit)
    }

    pub fn scalarize(&self) -> Mat2 {
        self.map(NCExpr::scalarize)
    }

    pub fn to_strings(&self) -> [[String; 2]; 2] {
        [
            [self.e[0].to_string(), self.e[1].to_string()],
            [self.e[2].to_string(), self.e[3].to_string()],
        ]
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, o: &Mat2) -> Mat2 {
        Mat2 {
            e: std::array::from_fn(|k| &self.e[k] + &o.e[k]),
        }
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, o: &Mat2) -> Mat2 {
        Mat2 {
            e: std::array::from_fn(|k| &self.e[k] - &o.e[k]),
        }
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|x| -x)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        Mat2::new(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
    }
}

/// Orientation of the zero-curvature residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ResidualSign {
    /// `Q_z − P_λ − [P,Q]`.
    #[default]
    Standard,
    /// `P_λ − Q_z − [Q,P]`, the same condition written the other way round.
    Reversed,
}

/// Residual of the compatibility of `Ψ_z = PΨ`, `Ψ_λ = QΨ`.
pub fn zero_curvature_residual(
    p: &Mat2,
    q: &Mat2,
    rules: &RuleSet,
    sign: ResidualSign,
) -> Result<Mat2, NormalizeError> {
    let r = match sign {
        ResidualSign::Standard => &(&q.d_dz() - &p.d_dlambda()) - &p.commutator(q),
        ResidualSign::Reversed => &(&p.d_dlambda() - &q.d_dz()) - &q.commutator(p),
    };
    r.normalize(rules)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub step: String,
    /// Residual entry and λ-power, absent for equations built directly.
    pub slot: Option<Slot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub row: usize,
    pub col: usize,
    pub lambda_power: i32,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.slot {
            Some(s) => write!(
                f,
                "{}: R({},{}) lam^{}",
                self.step,
                s.row + 1,
                s.col + 1,
                s.lambda_power
            ),
            None => f.write_str(&self.step),
        }
    }
}

/// `lhs = 0`, stored monic (see [`NCExpr::monic`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: NCExpr,
    pub provenance: Vec<Provenance>,
}

impl Equation {
    pub fn new(lhs: NCExpr, provenance: Vec<Provenance>) -> Self {
        Equation {
            lhs: lhs.monic(),
            provenance,
        }
    }

    pub fn labelled(lhs: NCExpr, step: &str) -> Self {
        Equation::new(
            lhs,
            vec![Provenance {
                step: step.into(),
                slot: None,
            }],
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs.is_zero()
    }
}

/// Adds `eq` to `list`, merging with an existing equation that differs by a
/// numeric factor.
pub fn push_merged(list: &mut Vec<Equation>, eq: Equation) {
    match list.iter_mut().find(|e| e.lhs == eq.lhs) {
        Some(e) => e.provenance.extend(eq.provenance),
        None => list.push(eq),
    }
}

/// One equation per (entry, λ-power); proportional duplicates are merged.
pub fn extract_equations(r: &Mat2, step: &str) -> Vec<Equation> {
    let mut out = Vec::new();
    for row in 0..2 {
        for col in 0..2 {
            for (lambda_power, part) in r.entry(row, col).split_lambda() {
                let prov = Provenance {
                    step: step.to_string(),
                    slot: Some(Slot { row, col, lambda_power }),
                };
                push_merged(&mut out, Equation::new(part, vec![prov]));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeKind {
    ZPart,
    LambdaPart,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaugeError {
    #[error("the supplied inverse is not a two-sided inverse of the gauge factor")]
    NotInverse,
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// `G·M·G⁻¹ + (∂G)·G⁻¹` with ∂ the z- or λ-derivative.
pub fn gauge_transform(m: &Mat2, g: &Mat2, g_inv: &Mat2, kind: GaugeKind, rules: &RuleSet) -> Result<Mat2, GaugeError> {
    let id = Mat2::identity();
    if (g * g_inv).normalize(rules)? != id || (g_inv * g).normalize(rules)? != id {
        return Err(GaugeError::NotInverse);
    }
    let dg = match kind {
        GaugeKind::ZPart => g.d_dz(),
        GaugeKind::LambdaPart => g.d_dlambda(),
    };
    Ok((&(&(g * m) * g_inv) + &(&dg * g_inv)).normalize(rules)?)
}

/// Coefficients of I, σ1, σ2, σ3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliParts {
    pub i: NCExpr,
    pub s1: NCExpr,
    pub s2: NCExpr,
    pub s3: NCExpr,
}

impl PauliParts {
    pub fn recompose(&self) -> Mat2 {
        Mat2::combo(&[
            (self.i.clone(), Pauli::I),
            (self.s1.clone(), Pauli::S1),
            (self.s2.clone(), Pauli::S2),
            (self.s3.clone(), Pauli::S3),
        ])
    }

    pub fn labelled(&self) -> [(&'static str, &NCExpr); 4] {
        [("I", &self.i), ("s1", &self.s1), ("s2", &self.s2), ("s3", &self.s3)]
    }
}

pub fn pauli_decompose(m: &Mat2) -> PauliParts {
    let half = GaussRat::ratio(1, 2);
    let half_i = &GaussRat::i() * &half;
    let [a, b, c, d] = &m.e;
    PauliParts {
        i: (a + d).scale_num(&half),
        s1: (b + c).scale_num(&half),
        s2: (b - c).scale_num(&half_i),
        s3: (a - d).scale_num(&half),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncexpr::rules;

    fn none() -> RuleSet {
        RuleSet::empty("")
    }

    #[test]
    fn pauli_products() {
        let i = NCExpr::scalar(Coeff::i());
        assert_eq!(&pauli(Pauli::S1) * &pauli(Pauli::S2), pauli(Pauli::S3).scale_left(&i));
        assert_eq!(&pauli(Pauli::S1) * &pauli(Pauli::S1), Mat2::identity());
        let two_i = NCExpr::scalar(Coeff::i().scale(&GaussRat::int(2)));
        assert_eq!(
            pauli(Pauli::S3).commutator(&pauli(Pauli::S1)),
            pauli(Pauli::S2).scale_left(&two_i)
        );
    }

    #[test]
    fn trivial_residual() {
        let r = zero_curvature_residual(&Mat2::zero(), &Mat2::zero(), &none(), ResidualSign::Standard).unwrap();
        assert!(r.is_zero());
        assert!(extract_equations(&r, "t").is_empty());
    }

    #[test]
    fn reversed_sign_negates() {
        let p = Mat2::combo(&[(lit("u"), Pauli::S1), (lit("-i*lam"), Pauli::S3)]);
        let q = Mat2::combo(&[(lit("4*lam*u - alpha/lam"), Pauli::S1), (lit("-2*u'"), Pauli::S2)]);
        let a = zero_curvature_residual(&p, &q, &none(), ResidualSign::Standard).unwrap();
        let b = zero_curvature_residual(&p, &q, &none(), ResidualSign::Reversed).unwrap();
        assert_eq!(a, -&b);
    }

    #[test]
    fn p_lambda_derivative() {
        let p = Mat2::combo(&[
            (lit("u"), Pauli::S1),
            (lit("-i*lam"), Pauli::S3),
            (lit("4*v"), Pauli::I),
        ]);
        assert_eq!(p.d_dlambda(), pauli(Pauli::S3).scale_left(&lit("-i")));
        assert!(pauli(Pauli::S3).d_dz().is_zero());
    }

    #[test]
    fn decomposition_roundtrip() {
        let m = Mat2::from_strs(["u*v", "z + i*hbar", "alpha/lam", "p^-1*p'"]);
        assert_eq!(pauli_decompose(&m).recompose(), m);
        let p = Mat2::combo(&[
            (lit("u"), Pauli::S1),
            (lit("-i*lam"), Pauli::S3),
            (lit("4*v"), Pauli::I),
        ]);
        let parts = pauli_decompose(&p);
        assert_eq!(parts.i, lit("4*v"));
        assert_eq!(parts.s1, lit("u"));
        assert!(parts.s2.is_zero());
        assert_eq!(parts.s3, lit("-i*lam"));
    }

    #[test]
    fn identity_gauge_is_noop() {
        let m = Mat2::from_strs(["u", "v", "z", "p"]);
        let id = Mat2::identity();
        assert_eq!(gauge_transform(&m, &id, &id, GaugeKind::ZPart, &none()).unwrap(), m);
        let bad = Mat2::from_strs(["2", "0", "0", "1"]);
        assert_eq!(
            gauge_transform(&m, &bad, &id, GaugeKind::ZPart, &none()),
            Err(GaugeError::NotInverse)
        );
    }

    #[test]
    fn extraction_merges_negated_duplicates() {
        let r = Mat2::from_strs(["[z,v] + 1/2*i*hbar*u", "0", "0", "-4*i*[z,v] + 2*hbar*u"]);
        let eqs = extract_equations(&r, "t");
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0].provenance.len(), 2);
        let rs = rules::quantum_zv();
        assert!(rs.normalize(&eqs[0].lhs).unwrap().is_zero());
    }
}
