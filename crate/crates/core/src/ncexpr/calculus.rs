//! Formal derivatives, substitution and the commutative/classical limits.

use super::atom::{Atom, Gen, Word};
use super::coeff::{Coeff, GaussRat};
use super::expr::NCExpr;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("{gen}^-1 occurs but its replacement `{replacement}` is not an invertible monomial")]
    NotInvertible { gen: Gen, replacement: String },
}

fn atom_derivative(a: Atom) -> NCExpr {
    if a.gen.is_independent() {
        return NCExpr::one();
    }
    if a.inv {
        let inv = NCExpr::atom(a);
        let d = NCExpr::atom(Atom::deriv(a.gen, 1));
        return -(&(&inv * &d) * &inv);
    }
    NCExpr::atom(Atom::deriv(a.gen, a.order + 1))
}

impl NCExpr {
    /// Formal z-derivative (Leibniz over each word).
    pub fn d_dz(&self) -> NCExpr {
        let mut out = NCExpr::zero();
        for (w, c) in self.terms() {
            let atoms = w.atoms();
            for k in 0..atoms.len() {
                let left = Word(atoms[..k].to_vec());
                let right = Word(atoms[k + 1..].to_vec());
                for (mw, mc) in atom_derivative(atoms[k]).terms() {
                    out.add_term(left.concat(mw).concat(&right), c * mc);
                }
            }
        }
        out
    }

    pub fn d_dz_n(&self, n: u32) -> NCExpr {
        (0..n).fold(self.clone(), |e, _| e.d_dz())
    }

    pub fn d_dlambda(&self) -> NCExpr {
        self.map_coeffs(Coeff::d_dlambda)
    }

    pub fn classical_limit(&self) -> NCExpr {
        self.map_coeffs(Coeff::classical_limit)
    }

    pub fn eval_alpha(&self, value: &GaussRat) -> NCExpr {
        self.map_coeffs(|c| c.eval_alpha(value))
    }

    pub fn negate_alpha(&self) -> NCExpr {
        self.map_coeffs(Coeff::negate_alpha)
    }

    /// Commutative image: atoms sorted canonically, `g·g⁻¹` pairs cancelled.
    ///
    /// With single-atom inverses only, a sorted word never keeps both `g` and
    /// `g⁻¹` after cancellation, so this map is total.
    pub fn scalarize(&self) -> NCExpr {
        let mut out = NCExpr::zero();
        for (w, c) in self.terms() {
            let mut atoms = w.atoms().to_vec();
            atoms.sort();
            let mut reduced: Vec<Atom> = Vec::with_capacity(atoms.len());
            for a in atoms {
                match reduced.iter().position(|b| b.cancels(a)) {
                    Some(pos) => {
                        reduced.remove(pos);
                    }
                    None => reduced.push(a),
                }
            }
            out.add_term(Word(reduced), c.clone());
        }
        out
    }

    /// Image under z ↦ −z: the independent variables change sign and every
    /// k-th derivative picks up (−1)^k.
    pub fn reflect_z(&self) -> NCExpr {
        let mut out = NCExpr::zero();
        for (w, c) in self.terms() {
            let flips = w
                .atoms()
                .iter()
                .map(|a| if a.gen.is_independent() { 1 } else { a.order })
                .sum::<u32>();
            let c = if flips % 2 == 1 { -c } else { c.clone() };
            out.add_term(w.clone(), c);
        }
        out
    }

    /// Replaces generators by expressions; derivative atoms map to the
    /// matching derivative of the replacement.
    pub fn substitute(&self, map: &BTreeMap<Gen, NCExpr>) -> Result<NCExpr, SubstError> {
        let mut cache: BTreeMap<Atom, NCExpr> = BTreeMap::new();
        let mut out = NCExpr::zero();
        for (w, c) in self.terms() {
            let mut acc = NCExpr::scalar(c.clone());
            for &a in w.atoms() {
                let img = match cache.get(&a) {
                    Some(e) => e.clone(),
                    None => {
                        let e = atom_image(a, map)?;
                        cache.insert(a, e.clone());
                        e
                    }
                };
                acc = &acc * &img;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    pub fn substitute_one(&self, g: Gen, e: &NCExpr) -> Result<NCExpr, SubstError> {
        self.substitute(&BTreeMap::from([(g, e.clone())]))
    }

    /// Inverse of a single-term expression built from invertible atoms.
    pub fn invert_monomial(&self) -> Option<NCExpr> {
        if self.len() != 1 {
            return None;
        }
        let (w, c) = self.terms().next()?;
        let g = c.as_number()?.inv()?;
        let mut atoms = Vec::with_capacity(w.len());
        for a in w.atoms().iter().rev() {
            if a.order != 0 || a.gen.is_independent() {
                return None;
            }
            atoms.push(Atom { inv: !a.inv, ..*a });
        }
        Some(NCExpr::term(Coeff::from_gauss(g), Word(atoms)))
    }
}

fn atom_image(a: Atom, map: &BTreeMap<Gen, NCExpr>) -> Result<NCExpr, SubstError> {
    let Some(rep) = map.get(&a.gen) else {
        return Ok(NCExpr::atom(a));
    };
    if a.inv {
        return rep.invert_monomial().ok_or_else(|| SubstError::NotInvertible {
            gen: a.gen,
            replacement: rep.to_string(),
        });
    }
    Ok(rep.d_dz_n(a.order))
}
