//! Grammar-compatible printing; `parse(print(e)) == e`.

use super::coeff::{GaussRat, Monomial};
use super::expr::NCExpr;
use std::fmt;

fn piece(m: &Monomial, g: &GaussRat, word: &str) -> (bool, String) {
    let neg = g.is_negative_like();
    let mag = if neg { -g } else { g.clone() };
    let mut factors: Vec<String> = Vec::new();
    let symbols = m.hbar > 0 || m.alpha > 0 || m.lam > 0 || !word.is_empty();
    if !(mag.is_one() && symbols) {
        factors.push(mag.to_string());
    }
    factors.extend(std::iter::repeat_n("hbar".to_string(), m.hbar as usize));
    factors.extend(std::iter::repeat_n("alpha".to_string(), m.alpha as usize));
    if m.lam > 0 {
        factors.extend(std::iter::repeat_n("lam".to_string(), m.lam as usize));
    }
    if !word.is_empty() {
        factors.push(word.to_string());
    }
    let mut s = if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    };
    for _ in m.lam..0 {
        s.push_str("/lam");
    }
    (neg, s)
}

impl fmt::Display for NCExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in self.display_order() {
            let word = if w.is_one() { String::new() } else { w.to_string() };
            for (m, g) in c.iter() {
                let (neg, s) = piece(m, g, &word);
                match (first, neg) {
                    (true, false) => write!(f, "{s}")?,
                    (true, true) => write!(f, "-{s}")?,
                    (false, false) => write!(f, " + {s}")?,
                    (false, true) => write!(f, " - {s}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::ncexpr::{parse, Context};

    fn roundtrip(s: &str) -> String {
        let e = parse(s, &Context::standard()).unwrap();
        let printed = e.to_string();
        assert_eq!(parse(&printed, &Context::standard()).unwrap(), e, "{printed}");
        printed
    }

    #[test]
    fn leading_term_first() {
        assert_eq!(roundtrip("-alpha + u'' - 2*u*u*u"), "u'' - 2*u*u*u - alpha");
    }

    #[test]
    fn laurent_and_gaussian() {
        roundtrip("4*lam*u - alpha/lam");
        roundtrip("(3/2 - 1/5*i)*hbar*hbar*z*p^-1/lam/lam");
        roundtrip("-i*hbar + 1/2*i*u");
        assert_eq!(roundtrip("1"), "1");
        assert_eq!(roundtrip("u - u"), "0");
        assert_eq!(roundtrip("1/lam"), "1/lam");
    }
}
