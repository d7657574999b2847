//! Named Lax pairs, matrices and target equations.
//!
//! Keys ending in `-asprinted` (or carrying no suffix) reproduce the source
//! literally, typos included; `-derived` keys hold hand-derived corrections.

use crate::laxmat::{Mat2, Pauli};
use crate::ncexpr::{lit, GaussRat, Gen, NCExpr, SubstError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("catalog entry `{key}` needs parameter `{param}`")]
    MissingParameter { key: String, param: String },
    #[error(transparent)]
    Subst(#[from] SubstError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transcription {
    AsPrinted,
    Derived,
}

impl Transcription {
    pub fn label(self) -> &'static str {
        match self {
            Transcription::AsPrinted => "as-printed",
            Transcription::Derived => "derived",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxPairSpec {
    pub key: String,
    /// z-part: `Ψ_z = PΨ`.
    pub p: Mat2,
    /// λ-part: `Ψ_λ = QΨ`.
    pub q: Mat2,
    pub rules: Vec<String>,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetEquation {
    pub key: String,
    /// Each line is `lhs − rhs`.
    pub lines: Vec<NCExpr>,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogItem {
    Pair(LaxPairSpec),
    Target(TargetEquation),
    Matrices(Vec<(String, Mat2)>),
}

impl CatalogItem {
    pub fn pair(&self) -> Option<&LaxPairSpec> {
        match self {
            CatalogItem::Pair(p) => Some(p),
            _ => None,
        }
    }

    pub fn target(&self) -> Option<&TargetEquation> {
        match self {
            CatalogItem::Target(t) => Some(t),
            _ => None,
        }
    }

    pub fn matrices(&self) -> Option<&[(String, Mat2)]> {
        match self {
            CatalogItem::Matrices(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub values: BTreeMap<String, GaussRat>,
    pub bindings: BTreeMap<Gen, NCExpr>,
}

impl Params {
    pub fn none() -> Self {
        Params::default()
    }

    pub fn value(mut self, name: &str, v: GaussRat) -> Self {
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn bind(mut self, g: Gen, e: NCExpr) -> Self {
        self.bindings.insert(g, e);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Pair,
    Target,
    Matrices,
}

pub struct Entry {
    pub key: &'static str,
    pub kind: Kind,
    pub transcription: Transcription,
    pub citation: &'static str,
    /// Numeric parameters that must be supplied.
    pub required: &'static [&'static str],
    build: fn(&Params) -> Result<Built, CatalogError>,
}

enum Built {
    Pair(Mat2, Mat2, &'static [&'static str]),
    Lines(Vec<NCExpr>),
    Mats(Vec<(&'static str, Mat2)>),
}

fn combo(parts: &[(&str, Pauli)]) -> Mat2 {
    Mat2::combo(&parts.iter().map(|(s, p)| (lit(s), *p)).collect::<Vec<_>>())
}

fn lines(ls: &[&str]) -> Result<Built, CatalogError> {
    Ok(Built::Lines(ls.iter().map(|s| lit(s)).collect()))
}

fn num(params: &Params, key: &str, name: &str) -> Result<NCExpr, CatalogError> {
    params
        .values
        .get(name)
        .map(|g| NCExpr::number(g.clone()))
        .ok_or_else(|| CatalogError::MissingParameter {
            key: key.into(),
            param: name.into(),
        })
}

use Kind::*;
use Pauli::*;
use Transcription::*;

const FN_V: &[(&str, Pauli)] = &[
    ("-i*(4*lam*lam + z + 2*u*u)", S3),
    ("4*lam*u - alpha/lam", S1),
    ("-2*u'", S2),
];

const QPII_P: &[(&str, Pauli)] = &[("u", S1), ("-i*lam", S3), ("4*v", I)];

static ENTRIES: &[Entry] = &[
    Entry {
        key: "fn-pair",
        kind: Pair,
        transcription: AsPrinted,
        citation: "Flaschka-Newell Lax pair: z-part U, lambda-part V; the field in V's sigma2 entry is read as u'",
        required: &[],
        build: |_| Ok(Built::Pair(combo(&[("-i*lam", S3), ("u", S1)]), combo(FN_V), &[])),
    },
    Entry {
        key: "ab-pair",
        kind: Pair,
        transcription: AsPrinted,
        citation: "gauge-equivalent Flaschka-Newell pair for the symmetric form: z-part B, spectral part A (eta written as lam, sigma read as r)",
        required: &[],
        build: |_| {
            Ok(Built::Pair(
                Mat2::from_strs(["u", "i*lam", "i", "-u"]),
                Mat2::from_strs([
                    "2*u + 1/2*(alpha + 1/2)/lam",
                    "2*i*lam + i*q",
                    "2*i + i*r/lam",
                    "-2*u - 1/2*(alpha + 1/2)/lam",
                ]),
                &[],
            ))
        },
    },
    Entry {
        key: "qpii-pair",
        kind: Pair,
        transcription: AsPrinted,
        citation: "quantum PII Lax pair P, Q with Planck constant and arbitrary field v",
        required: &[],
        build: |_| {
            Ok(Built::Pair(
                combo(QPII_P),
                combo(&[
                    ("-(4*i*lam*lam + i*z + 2*u*u)", S3),
                    ("4*lam*u - alpha/lam", S1),
                    ("-(2*u' - i*hbar)", S2),
                ]),
                &[],
            ))
        },
    },
    Entry {
        key: "qpii-pair-derived",
        kind: Pair,
        transcription: Derived,
        citation: "quantum PII Lax pair with Q's sigma3 entry -i(4 lam^2 + z + 2u^2), the entry whose z-derivative is printed",
        required: &[],
        build: |_| {
            Ok(Built::Pair(
                combo(QPII_P),
                combo(&[
                    ("-i*(4*lam*lam + z + 2*u*u)", S3),
                    ("4*lam*u - alpha/lam", S1),
                    ("-(2*u' - i*hbar)", S2),
                ]),
                &[],
            ))
        },
    },
    Entry {
        key: "gauge-pair",
        kind: Pair,
        transcription: AsPrinted,
        citation: "gauge-transformed quantum pair (P~, Q~) with generators p, q in the I+ / I- slots",
        required: &[],
        build: |_| {
            let q = &combo(&[("4*lam*u - alpha/lam", S3), ("-(4*i*lam*lam + 1/4*hbar)", S2)])
                + &combo(&[("2*p", IPlus), ("-2*q", IMinus)]);
            Ok(Built::Pair(combo(&[("u", S3), ("-i*lam", S2), ("4*u", I)]), q, &[]))
        },
    },
    Entry {
        key: "gauge-pair-derived",
        kind: Pair,
        transcription: Derived,
        citation: "G P G^-1 and G Q G^-1 of the printed quantum pair, conjugated by hand in the Pauli basis",
        required: &[],
        build: |_| {
            Ok(Built::Pair(
                combo(&[("u", S3), ("i*lam", S2), ("4*v", I)]),
                combo(&[
                    ("4*lam*u - alpha/lam", S3),
                    ("2*u' - i*hbar", S1),
                    ("4*i*lam*lam + i*z + 2*u*u", S2),
                ]),
                &[],
            ))
        },
    },
    Entry {
        key: "gauge-factor",
        kind: Matrices,
        transcription: AsPrinted,
        citation: "constant gauge factor G and its inverse, without the 1/sqrt(2) normalisation (it cancels under conjugation)",
        required: &[],
        build: |_| {
            Ok(Built::Mats(vec![
                ("G", Mat2::from_strs(["-i", "-i", "-1", "1"])),
                ("G_inv", Mat2::from_strs(["1/2*i", "-1/2", "1/2*i", "1/2"])),
            ]))
        },
    },
    Entry {
        key: "qpii-qz-asprinted",
        kind: Matrices,
        transcription: AsPrinted,
        citation: "z-derivative of the quantum pair's Q as printed",
        required: &[],
        build: |_| {
            Ok(Built::Mats(vec![(
                "Q_z",
                combo(&[("-i*(2*u'*u + 2*u*u' + 1)", S3), ("-2*u''", S2), ("4*lam*u'", S1)]),
            )]))
        },
    },
    Entry {
        key: "qpii-plambda-asprinted",
        kind: Matrices,
        transcription: AsPrinted,
        citation: "lambda-derivative of the quantum pair's P as printed",
        required: &[],
        build: |_| Ok(Built::Mats(vec![("P_lam", combo(&[("-i", S3)]))])),
    },
    Entry {
        key: "qpii-zc-lhs-asprinted",
        kind: Matrices,
        transcription: AsPrinted,
        citation: "Q_z - P_lam of the quantum pair as printed",
        required: &[],
        build: |_| {
            Ok(Built::Mats(vec![(
                "Q_z - P_lam",
                Mat2::from_strs([
                    "-2*i*[u,u']_+",
                    "4*lam*u' + 2*i*u''",
                    "4*lam*u' - 2*i*u''",
                    "2*i*[u,u']_+",
                ]),
            )]))
        },
    },
    Entry {
        key: "qpii-commutator-asprinted",
        kind: Matrices,
        transcription: AsPrinted,
        citation: "[P,Q] of the quantum pair as printed, with its off-diagonal entries delta+ and delta-",
        required: &[],
        build: |_| {
            Ok(Built::Mats(vec![(
                "[P,Q]",
                Mat2::from_strs([
                    "i*[z,v] - 2*i*[u,u']_+ - 1/2*hbar*u",
                    "4*lam*u' + 4*i*u*u*u + i*[z,u]_+ + 2*i*alpha + 2*i*[v,u'] - 2*i*lam*hbar",
                    "4*lam*u' - 4*i*u*u*u - i*[z,u]_+ - 2*i*alpha - 2*i*hbar*[v,u'] - 2*i*lam*hbar",
                    "-i*[z,v] + 2*i*[u,u']_+ + 1/2*hbar*u",
                ]),
            )]))
        },
    },
    Entry {
        key: "classical-pii-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "classical PII u'' = 2u^3 - zu + alpha",
        required: &[],
        build: |_| lines(&["u'' - 2*u*u*u + z*u - alpha"]),
    },
    Entry {
        key: "classical-pii-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "classical PII in the orientation fixed by the Flaschka-Newell pair: u'' = 2u^3 + zu + alpha",
        required: &[],
        build: |_| lines(&["u'' - 2*u*u*u - z*u - alpha"]),
    },
    Entry {
        key: "result-summary",
        kind: Target,
        transcription: AsPrinted,
        citation: "headline results: QPII, the differentiated commutation relation, MQPII in nu and x, QP34 with shift z - hbar/2",
        required: &[],
        build: |_| {
            let rel = &lit("[z,u]").d_dz() + &lit("1/2*i*hbar*u");
            Ok(Built::Lines(vec![
                lit("u'' - 2*u*u*u + 1/2*[z,u]_+ - alpha"),
                rel,
                lit("nu''' - 2*nu*nu*nu' - 2*nu'*nu*nu - 2*nu*nu'*nu + nu + x*nu' - 4*[nu,nu'']"),
                lit("p'' + 1/2*p'*p^-1*p' - 2*p*p + 1/2*delta*delta*p^-1 + (z - 1/2*hbar)*p"),
            ]))
        },
    },
    Entry {
        key: "ng-comparison-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "earlier quantisation used for comparison: PII with -zu and P34 with shift z - hbar^2",
        required: &[],
        build: |_| {
            lines(&[
                "u'' - 2*u*u*u + z*u - alpha",
                "p'' + 1/2*p'*p^-1*p' - 2*p*p + 1/2*delta*delta*p^-1 + (z - hbar*hbar)*p",
            ])
        },
    },
    Entry {
        key: "pii-symmetric-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "classical PII symmetric form in q, r, u",
        required: &[],
        build: |_| {
            lines(&["q' - 2*q*u + alpha - 1/2", "r' + 2*r*u - alpha - 1/2", "u' - 1/2*(q - r)"])
        },
    },
    Entry {
        key: "classical-p34-r-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "classical P34 for r with (alpha + 1/2)^2",
        required: &[],
        build: |_| {
            lines(&["r'' - r'*r'*r^-1 - 2*r*r + z*r + 1/2*(alpha + 1/2)*(alpha + 1/2)*r^-1"])
        },
    },
    Entry {
        key: "classical-p34-q-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "classical P34 for q with (alpha - 1/2)^2",
        required: &[],
        build: |_| {
            lines(&["q'' - q'*q'*q^-1 - 2*q*q + z*q + 1/2*(alpha - 1/2)*(alpha - 1/2)*q^-1"])
        },
    },
    Entry {
        key: "classical-p34-r-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "classical P34 for r obtained by eliminating u from the symmetric form: r'^2/(2r) coefficient 1/2",
        required: &[],
        build: |_| {
            lines(&["r'' - 1/2*r'*r'*r^-1 - 2*r*r + z*r + 1/2*(alpha + 1/2)*(alpha + 1/2)*r^-1"])
        },
    },
    Entry {
        key: "classical-p34-q-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "classical P34 for q obtained by eliminating u from the symmetric form: q'^2/(2q) coefficient 1/2",
        required: &[],
        build: |_| {
            lines(&["q'' - 1/2*q'*q'*q^-1 - 2*q*q + z*q + 1/2*(alpha - 1/2)*(alpha - 1/2)*q^-1"])
        },
    },
    Entry {
        key: "dmpii-os-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "Olver-Sokolov derivative matrix PII from the matrix mKdV reduction",
        required: &[],
        build: |_| lines(&["u''' - 3*u''*u + 3*u*u'' - 6*u*u'*u + 1/3*u + 1/3*z*u'"]),
    },
    Entry {
        key: "dpii-first-integral-derived",
        kind: Target,
        transcription: Derived,
        citation: "first integral u'' - 2u^3 + zu/3 of the scalar derivative PII",
        required: &[],
        build: |_| lines(&["u'' - 2*u*u*u + 1/3*z*u"]),
    },
    Entry {
        key: "matrix-symmetric-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "non-abelian PII symmetric form in q, r, u",
        required: &[],
        build: |_| {
            lines(&[
                "q' - u*q - q*u + alpha - 1/2",
                "r' + r*u + u*r - alpha - 1/2",
                "u' - 1/2*(q - r)",
            ])
        },
    },
    Entry {
        key: "matrix-pii-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "matrix PII u'' = 2u^3 - zu + alpha1 - alpha0",
        required: &["alpha0", "alpha1"],
        build: |p| {
            let k = "matrix-pii-target";
            let c = &num(p, k, "alpha1")? - &num(p, k, "alpha0")?;
            Ok(Built::Lines(vec![&lit("u'' - 2*u*u*u + z*u") - &c]))
        },
    },
    Entry {
        key: "matrix-p34-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "matrix quantum P34 for q with (alpha1^2 - hbar^2)",
        required: &["alpha1"],
        build: |p| {
            let a1 = num(p, "matrix-p34-target", "alpha1")?;
            let c = &(&a1 * &a1) - &lit("hbar*hbar");
            let inv = &(&c * &lit("q^-1")) * &lit("1/2");
            Ok(Built::Lines(vec![&lit("q'' - 1/2*q'*q^-1*q' + 4*q*q - 2*z*q") + &inv]))
        },
    },
    Entry {
        key: "weyl-relations",
        kind: Target,
        transcription: AsPrinted,
        citation: "commutation relations [r,q] = 2 hbar u, [u,q] = [u,r] = hbar of the matrix symmetric form",
        required: &[],
        build: |_| lines(&["[r,q] - 2*hbar*u", "[u,q] - hbar", "[u,r] - hbar"]),
    },
    Entry {
        key: "nc-pii-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "Retakh-Roubtsov noncommutative PII with anticommutator 2[z,u]_+ (its constant beta read through the beta macro)",
        required: &[],
        build: |_| lines(&["u'' - 2*u*u*u + 2*[z,u]_+ - 4*(beta + 1/2)"]),
    },
    Entry {
        key: "qmpii-target-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "quantum matrix PII system claimed by the quantum pair: coefficient 4 on [v,u'], and zv - vz = -(i/2) hbar u",
        required: &[],
        build: |_| {
            lines(&["u'' - 2*u*u*u + 1/2*[z,u]_+ - 4*[v,u'] - alpha", "z*v - v*z + 1/2*i*hbar*u"])
        },
    },
    Entry {
        key: "commutation-zv-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "commutation relation [z,v] = -(1/2) i hbar u read off the diagonal",
        required: &[],
        build: |_| lines(&["[z,v] + 1/2*i*hbar*u"]),
    },
    Entry {
        key: "qpii-lambda-pair-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "the two off-diagonal equations carrying -lam hbar and +lam hbar",
        required: &[],
        build: |_| {
            lines(&[
                "u'' - 2*u*u*u + 1/2*[z,u]_+ - alpha - [v,u'] + lam*hbar",
                "u'' - 2*u*u*u + 1/2*[z,u]_+ - alpha - [v,u'] - lam*hbar",
            ])
        },
    },
    Entry {
        key: "qmpii-target-summed",
        kind: Target,
        transcription: AsPrinted,
        citation: "sum of the two off-diagonal equations: coefficient 1 on [v,u']",
        required: &[],
        build: |_| lines(&["u'' - 2*u*u*u + 1/2*[z,u]_+ - [v,u'] - alpha"]),
    },
    Entry {
        key: "qmpii-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "equations forced by the corrected quantum pair when v commutes with u: commutation relation, QPII with -1/2[z,u]_+ and coefficient 4, and the lam^1 coefficient hbar",
        required: &[],
        build: |_| {
            lines(&[
                "[z,v] + 1/2*i*hbar*u",
                "u'' - 2*u*u*u - 1/2*[z,u]_+ - 4*[v,u'] - alpha",
                "hbar",
            ])
        },
    },
    Entry {
        key: "qmpii-target-derived-free",
        kind: Target,
        transcription: Derived,
        citation: "equations forced by the corrected quantum pair with no relation between u and v",
        required: &[],
        build: |_| {
            lines(&[
                "[z,v] + 2*[u*u,v] + 1/2*i*hbar*u",
                "u'' - 2*u*u*u - 1/2*[z,u]_+ - 4*[v,u'] - alpha",
                "[u,v] + 1/8*i*hbar",
            ])
        },
    },
    Entry {
        key: "qpii-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "system for v = u': QPII and d/dz(zu - uz) = -(i/2) hbar u",
        required: &[],
        build: |_| {
            let rel = &lit("[z,u]").d_dz() + &lit("1/2*i*hbar*u");
            Ok(Built::Lines(vec![lit("u'' - 2*u*u*u + 1/2*[z,u]_+ - alpha"), rel]))
        },
    },
    Entry {
        key: "qpii-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "equations forced by the corrected quantum pair at v = u' when u' commutes with u",
        required: &[],
        build: |_| {
            lines(&["u'' - 2*u*u*u - 1/2*[z,u]_+ - alpha", "[z,u'] + 1/2*i*hbar*u", "hbar"])
        },
    },
    Entry {
        key: "case-ii-u-form-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "derivative of quantum matrix PII at v = u, written in u with (z - i hbar/4) u'",
        required: &[],
        build: |_| {
            lines(&["u''' - 2*u*u*u' - 2*u'*u*u - 2*u*u'*u + u + (z - 1/4*i*hbar)*u' - 4*[u,u'']"])
        },
    },
    Entry {
        key: "case-ii-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "third-order equation in nu(x) with x = z - i hbar/4, product written x nu'",
        required: &[],
        build: |_| {
            lines(&["nu''' - 2*nu*nu*nu' - 2*nu'*nu*nu - 2*nu*nu'*nu + nu + x*nu' - 4*[nu,nu'']"])
        },
    },
    Entry {
        key: "case-ii-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "third-order equation in nu(x) with the product ordered nu' x, as produced by differentiating under [z,u] = -(i/2) hbar u",
        required: &[],
        build: |_| {
            lines(&["nu''' - 2*nu*nu*nu' - 2*nu'*nu*nu - 2*nu*nu'*nu + nu + nu'*x - 4*[nu,nu'']"])
        },
    },
    Entry {
        key: "case-ii-scalar-derived",
        kind: Target,
        transcription: Derived,
        citation: "scalar derivative PII u''' = 6u^2u' - u - zu', the z-derivative of classical PII",
        required: &[],
        build: |_| lines(&["u''' - 6*u*u*u' + u + z*u'"]),
    },
    Entry {
        key: "gauge-system-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "quantum non-abelian system for p, q, u claimed by the gauge-transformed pair",
        required: &[],
        build: |_| {
            lines(&[
                "p' - v*p + p*v - u*p - p*u + 1/4*i*hbar*u + alpha - 1/2",
                "q' - q*v + v*q + u*q + q*u + 1/4*i*hbar*u - alpha - 1/2",
                "u' - 1/2*(p - q)",
            ])
        },
    },
    Entry {
        key: "gauge-system-derived",
        kind: Target,
        transcription: Derived,
        citation: "equations forced by the printed gauge-transformed pair with p, q independent",
        required: &[],
        build: |_| {
            lines(&[
                "u' + 1/2*p + 1/2*q",
                "p' - 5*u*p + 3*p*u - 1/4*i*hbar*u + alpha + 1/2",
                "q' - 3*u*q + 5*q*u - 1/4*i*hbar*u + alpha - 1/2",
            ])
        },
    },
    Entry {
        key: "p-equation-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "first equation of the gauge system at v = u': p' = 2up - (i/4) hbar u - alpha + 1/2",
        required: &[],
        build: |_| lines(&["p' - 2*u*p + 1/4*i*hbar*u + alpha - 1/2"]),
    },
    Entry {
        key: "p-equation-beta-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "the same equation rewritten with beta and delta: p' = 2u(p - beta/2) - delta",
        required: &[],
        build: |_| lines(&["p' - 2*u*(p - 1/2*beta) + delta"]),
    },
    Entry {
        key: "u-from-p-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "u solved in terms of bold p = p - beta: u = p' p^-1 + delta p^-1",
        required: &[],
        build: |_| lines(&["u - p'*p^-1 - delta*p^-1"]),
    },
    Entry {
        key: "p-definition-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "bold p = u^2 + u' + z/2 - beta/2",
        required: &[],
        build: |_| lines(&["p - u*u - u' - 1/2*z + 1/2*beta"]),
    },
    Entry {
        key: "u-derivatives-asprinted",
        kind: Target,
        transcription: AsPrinted,
        citation: "u' and u^2 expressed through bold p",
        required: &[],
        build: |_| {
            lines(&[
                "u' + 1/2*p'*p^-1*p'*p^-1 - 1/2*delta*p^-1*p'*p^-1",
                "u*u - 1/4*p'*p^-1*p'*p^-1 - 1/4*delta*p'*p^-1*p^-1 - 1/4*delta*p^-1*p'*p^-1 - 1/4*delta*delta*p^-1*p^-1",
            ])
        },
    },
    Entry {
        key: "qp34-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "non-abelian quantum P34 for bold p with shift z - beta",
        required: &[],
        build: |_| lines(&["p'' + 1/2*p'*p^-1*p' - 2*p*p + 1/2*delta*delta*p^-1 + (z - beta)*p"]),
    },
    Entry {
        key: "qp34-q-target",
        kind: Target,
        transcription: AsPrinted,
        citation: "non-abelian quantum P34 for bold q with shift z + beta",
        required: &[],
        build: |_| lines(&["q'' + 1/2*q'*q^-1*q' - 2*q*q + 1/2*delta*delta*q^-1 + (z + beta)*q"]),
    },
    Entry {
        key: "qp34-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "quantum P34 for bold p = p - beta/2 derived from u = (p' + delta) p^-1 / 2",
        required: &[],
        build: |_| {
            lines(&["p'' - 1/2*p'*p^-1*p' + 1/2*delta*(p'*p^-1 - p^-1*p') - 2*p*p + 1/2*delta*delta*p^-1 + (z - beta)*p"])
        },
    },
    Entry {
        key: "qp34-q-target-derived",
        kind: Target,
        transcription: Derived,
        citation: "quantum P34 for bold q = q + beta/2 derived from u = -(q' - alpha - 1/2) q^-1 / 2",
        required: &[],
        build: |_| {
            lines(&["q'' - 1/2*q'*q^-1*q' - 1/2*(alpha + 1/2)*(q'*q^-1 - q^-1*q') - 2*q*q + 1/2*(alpha + 1/2)*(alpha + 1/2)*q^-1 + (z + beta)*q"])
        },
    },
    Entry {
        key: "eliminated-pii-derived",
        kind: Target,
        transcription: Derived,
        citation: "u'' obtained by eliminating p and q from the printed gauge system with generic v",
        required: &[],
        build: |_| lines(&["u'' - 2*u*u*u - 1/2*[z,u]_+ - [v,u*u] - 1/2*[v,z] + alpha"]),
    },
];

pub fn entries() -> &'static [Entry] {
    ENTRIES
}

pub fn keys() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.key).collect()
}

pub fn entry(key: &str) -> Result<&'static Entry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.key == key)
        .ok_or_else(|| CatalogError::UnknownKey(key.to_string()))
}

impl Entry {
    /// Parameter slots shown in listings.
    pub fn slots(&self) -> Vec<String> {
        let mut s: Vec<String> = self.required.iter().map(|r| format!("{r} (required)")).collect();
        s.push("alpha (optional value)".into());
        s.push("generator bindings (optional)".into());
        s
    }
}

fn finish(e: &NCExpr, params: &Params) -> Result<NCExpr, CatalogError> {
    let mut out = if params.bindings.is_empty() {
        e.clone()
    } else {
        e.substitute(&params.bindings)?
    };
    if let Some(a) = params.values.get("alpha") {
        out = out.eval_alpha(a);
    }
    Ok(out)
}

/// Builds `key`, applying generator bindings and an optional numeric α.
pub fn build(key: &str, params: &Params) -> Result<CatalogItem, CatalogError> {
    let e = entry(key)?;
    for r in e.required {
        if !params.values.contains_key(*r) {
            return Err(CatalogError::MissingParameter {
                key: key.into(),
                param: r.to_string(),
            });
        }
    }
    let fin = |m: &Mat2| m.try_map(|x| finish(x, params));
    Ok(match (e.build)(params)? {
        Built::Pair(p, q, rules) => CatalogItem::Pair(LaxPairSpec {
            key: key.into(),
            p: fin(&p)?,
            q: fin(&q)?,
            rules: rules.iter().map(|s| s.to_string()).collect(),
            citation: e.citation.into(),
        }),
        Built::Lines(ls) => CatalogItem::Target(TargetEquation {
            key: key.into(),
            lines: ls.iter().map(|l| finish(l, params)).collect::<Result<_, _>>()?,
            citation: e.citation.into(),
        }),
        Built::Mats(ms) => CatalogItem::Matrices(
            ms.into_iter()
                .map(|(n, m)| Ok((n.to_string(), fin(&m)?)))
                .collect::<Result<_, CatalogError>>()?,
        ),
    })
}

pub fn pair(key: &str) -> LaxPairSpec {
    match build(key, &Params::none()) {
        Ok(CatalogItem::Pair(p)) => p,
        other => panic!("`{key}` is not a pair: {other:?}"),
    }
}

pub fn target(key: &str) -> TargetEquation {
    match build(key, &Params::none()) {
        Ok(CatalogItem::Target(t)) => t,
        other => panic!("`{key}` is not a target: {other:?}"),
    }
}

pub fn matrices(key: &str) -> Vec<(String, Mat2)> {
    match build(key, &Params::none()) {
        Ok(CatalogItem::Matrices(m)) => m,
        other => panic!("`{key}` is not a matrix list: {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laxmat::pauli_decompose;

    #[test]
    fn keys_unique_and_buildable() {
        let ks = keys();
        let set: std::collections::BTreeSet<_> = ks.iter().collect();
        assert_eq!(set.len(), ks.len());
        for k in ks {
            let e = entry(k).unwrap();
            if e.required.is_empty() {
                build(k, &Params::none()).unwrap();
            }
        }
    }

    #[test]
    fn build_is_deterministic() {
        for k in keys() {
            let p = Params::none()
                .value("alpha0", GaussRat::int(1))
                .value("alpha1", GaussRat::int(2));
            assert_eq!(build(k, &p).unwrap(), build(k, &p).unwrap());
        }
    }

    #[test]
    fn unknown_and_missing() {
        assert!(matches!(
            build("nope", &Params::none()),
            Err(CatalogError::UnknownKey(_))
        ));
        assert!(matches!(
            build("matrix-pii-target", &Params::none().value("alpha0", GaussRat::int(0))),
            Err(CatalogError::MissingParameter { .. })
        ));
        let t = build(
            "matrix-pii-target",
            &Params::none()
                .value("alpha0", GaussRat::int(1))
                .value("alpha1", GaussRat::int(3)),
        )
        .unwrap();
        assert_eq!(t.target().unwrap().lines[0], lit("u'' - 2*u*u*u + z*u - 2"));
    }

    #[test]
    fn qpii_pauli_parts() {
        let p = pair("qpii-pair");
        let q = pauli_decompose(&p.q);
        assert_eq!(q.s3, lit("-(4*i*lam*lam + i*z + 2*u*u)"));
        assert_eq!(q.s1, lit("4*lam*u - alpha/lam"));
        assert_eq!(q.s2, lit("-(2*u' - i*hbar)"));
        assert!(q.i.is_zero());
        let pp = pauli_decompose(&p.p);
        assert_eq!((pp.i, pp.s1, pp.s3), (lit("4*v"), lit("u"), lit("-i*lam")));
    }

    #[test]
    fn bindings_substitute() {
        let p = build("qpii-pair", &Params::none().bind(Gen::V, NCExpr::zero())).unwrap();
        assert!(pauli_decompose(&p.pair().unwrap().p).i.is_zero());
    }

    #[test]
    fn qpii_target_classical_limit_is_printed_pii() {
        let t = target("qpii-target");
        let reduced: Vec<NCExpr> = t
            .lines
            .iter()
            .map(|l| l.classical_limit().scalarize())
            .filter(|l| !l.is_zero())
            .collect();
        assert_eq!(reduced, target("classical-pii-target").lines);
    }
}
