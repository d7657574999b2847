//! Generators, atoms and words.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Generator alphabet in canonical precedence order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Z,
    X,
    U,
    V,
    P,
    Q,
    R,
    Nu,
}

impl Gen {
    pub const ALL: [Gen; 8] = [Gen::Z, Gen::X, Gen::U, Gen::V, Gen::P, Gen::Q, Gen::R, Gen::Nu];

    pub fn name(self) -> &'static str {
        match self {
            Gen::Z => "z",
            Gen::X => "x",
            Gen::U => "u",
            Gen::V => "v",
            Gen::P => "p",
            Gen::Q => "q",
            Gen::R => "r",
            Gen::Nu => "nu",
        }
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Some(match s {
            "z" => Gen::Z,
            "x" => Gen::X,
            "u" => Gen::U,
            "v" => Gen::V,
            "p" => Gen::P,
            "q" => Gen::Q,
            "r" => Gen::R,
            "nu" | "ν" => Gen::Nu,
            _ => return None,
        })
    }

    /// `z` and its shift `x` are independent variables: their derivative is 1.
    pub fn is_independent(self) -> bool {
        matches!(self, Gen::Z | Gen::X)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Declared generators and which of them may be inverted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub declared: BTreeSet<Gen>,
    pub invertible: BTreeSet<Gen>,
}

impl Context {
    pub fn new(declared: &[Gen], invertible: &[Gen]) -> Self {
        Context {
            declared: declared.iter().copied().collect(),
            invertible: invertible.iter().copied().collect(),
        }
    }

    /// Every generator declared; p, q and r invertible.
    pub fn standard() -> Self {
        Context::new(&Gen::ALL, &[Gen::P, Gen::Q, Gen::R])
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::standard()
    }
}

/// A generator, its derivative order, and whether it is inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub gen: Gen,
    pub order: u32,
    pub inv: bool,
}

impl Atom {
    pub fn plain(gen: Gen) -> Self {
        Atom {
            gen,
            order: 0,
            inv: false,
        }
    }

    pub fn deriv(gen: Gen, order: u32) -> Self {
        Atom { gen, order, inv: false }
    }

    pub fn inverse(gen: Gen) -> Self {
        Atom {
            gen,
            order: 0,
            inv: true,
        }
    }

    /// `a` and `b` multiply to 1 when they are a generator and its inverse.
    pub fn cancels(self, other: Atom) -> bool {
        self.gen == other.gen && self.order == 0 && other.order == 0 && self.inv != other.inv
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)?;
        for _ in 0..self.order {
            f.write_str("'")?;
        }
        if self.inv {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// Ordered product of atoms; the empty word is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Atom>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn single(a: Atom) -> Self {
        Word(vec![a])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_order(&self) -> u32 {
        self.0.iter().map(|a| a.order).max().unwrap_or(0)
    }

    /// Ordering used to pick a canonical leading term: highest derivative
    /// order, then longest, then lexicographically smallest.
    pub fn leading_cmp(&self, other: &Word) -> Ordering {
        self.max_order()
            .cmp(&other.max_order())
            .then(self.len().cmp(&other.len()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_order() {
        assert!(Gen::Z < Gen::U && Gen::U < Gen::V && Gen::V < Gen::P);
        assert!(Gen::P < Gen::Q && Gen::Q < Gen::R && Gen::R < Gen::Nu);
        assert!(Atom::deriv(Gen::U, 0) < Atom::deriv(Gen::U, 1));
    }

    #[test]
    fn leading_prefers_derivatives() {
        let u3 = Word(vec![Atom::plain(Gen::U); 3]);
        let upp = Word::single(Atom::deriv(Gen::U, 2));
        assert_eq!(upp.leading_cmp(&u3), Ordering::Greater);
    }

    #[test]
    fn display() {
        let w = Word(vec![Atom::deriv(Gen::P, 1), Atom::inverse(Gen::P)]);
        assert_eq!(w.to_string(), "p'*p^-1");
        assert_eq!(Word::one().to_string(), "1");
    }
}
