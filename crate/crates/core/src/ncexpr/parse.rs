//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ('-'|'+') factor | primary ('/' ('lam' | number))*
//! primary:= number | 'i' | 'lam' | 'hbar' | 'alpha' | 'beta' | 'delta'
//!         | generator primes* | generator '{' int '}' | generator '^-1'
//!         | '[' expr ',' expr ']' ('_+' | '_-')? | '(' expr ')'
//! ```
//! `beta` and `delta` expand to iħ/4 and α − ½.

use super::atom::{Atom, Context, Gen};
use super::coeff::{Coeff, GaussRat};
use super::expr::NCExpr;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown name `{name}` at {pos}")]
    UnknownName { name: String, pos: usize },
    #[error("generator `{name}` at {pos} is not declared")]
    Undeclared { name: String, pos: usize },
    #[error("generator `{name}` at {pos} is not invertible")]
    NotInvertible { name: String, pos: usize },
    #[error("negative derivative order at {pos}")]
    NegativeDerivative { pos: usize },
    #[error("inverse of a derivative at {pos} is not an atom")]
    InverseOfDerivative { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    Suffix(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|p| p.1).collect();
            out.push((Tok::Num(text.parse().expect("digits")), pos));
        } else if c.is_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric()) {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|p| p.1).collect();
            out.push((Tok::Ident(text), pos));
        } else if c == '_' {
            match chars.get(k + 1).map(|p| p.1) {
                Some(s @ ('+' | '-')) => {
                    out.push((Tok::Suffix(s), pos));
                    k += 2;
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected `_+` or `_-`".into(),
                    })
                }
            }
        } else if "+-*/()[],'^{}".contains(c) {
            out.push((Tok::Sym(c), pos));
            k += 1;
        } else {
            return Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    k: usize,
    end: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.k += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos(),
                msg: format!("expected `{c}`"),
            })
        }
    }

    fn expr(&mut self) -> Result<NCExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCExpr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCExpr, ParseError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        if self.eat('+') {
            return self.factor();
        }
        let mut acc = self.primary()?;
        while self.eat('/') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Ident(name)) if name == "lam" => {
                    self.k += 1;
                    acc = acc.scale(&Coeff::lam(-1));
                }
                Some(Tok::Num(n)) => {
                    self.k += 1;
                    if n == BigInt::from(0) {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "division by zero".into(),
                        });
                    }
                    let g = GaussRat::real(BigRational::new(BigInt::from(1), n));
                    acc = acc.scale_num(&g);
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "only `lam` or a number may follow `/`".into(),
                    })
                }
            }
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<NCExpr, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            });
        };
        self.k += 1;
        match tok {
            Tok::Num(n) => Ok(NCExpr::number(GaussRat::real(BigRational::from_integer(n)))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                match self.peek() {
                    Some(Tok::Suffix('+')) => {
                        self.k += 1;
                        Ok(a.anticommutator(&b))
                    }
                    Some(Tok::Suffix('-')) => {
                        self.k += 1;
                        Ok(a.commutator(&b))
                    }
                    _ => Ok(a.commutator(&b)),
                }
            }
            Tok::Ident(name) => self.named(&name, pos),
            _ => Err(ParseError::Syntax {
                pos,
                msg: "expected a factor".into(),
            }),
        }
    }

    fn named(&mut self, name: &str, pos: usize) -> Result<NCExpr, ParseError> {
        let c = match name {
            "i" => Some(Coeff::i()),
            "lam" => Some(Coeff::lam(1)),
            "hbar" => Some(Coeff::hbar()),
            "alpha" => Some(Coeff::alpha()),
            "beta" => Some(Coeff::beta()),
            "delta" => Some(Coeff::delta()),
            _ => None,
        };
        if let Some(c) = c {
            return Ok(NCExpr::scalar(c));
        }
        let gen = Gen::from_name(name).ok_or_else(|| ParseError::UnknownName { name: name.into(), pos })?;
        if !self.ctx.declared.contains(&gen) {
            return Err(ParseError::Undeclared { name: name.into(), pos });
        }
        let mut order: u32 = 0;
        while self.eat('\'') {
            order += 1;
        }
        if order == 0 && self.eat('{') {
            let neg = self.eat('-');
            let npos = self.pos();
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(ParseError::Syntax {
                    pos: npos,
                    msg: "expected derivative order".into(),
                });
            };
            self.k += 1;
            self.expect('}')?;
            if neg && n != BigInt::from(0) {
                return Err(ParseError::NegativeDerivative { pos: npos });
            }
            order = u32::try_from(n).map_err(|_| ParseError::Syntax {
                pos: npos,
                msg: "derivative order too large".into(),
            })?;
        }
        if self.peek() == Some(&Tok::Sym('^')) {
            let ipos = self.pos();
            self.k += 1;
            if !(self.eat('-') && self.peek() == Some(&Tok::Num(BigInt::from(1)))) {
                return Err(ParseError::Syntax {
                    pos: ipos,
                    msg: "only `^-1` is supported".into(),
                });
            }
            self.k += 1;
            if order > 0 {
                return Err(ParseError::InverseOfDerivative { pos: ipos });
            }
            if !self.ctx.invertible.contains(&gen) {
                return Err(ParseError::NotInvertible { name: name.into(), pos });
            }
            return Ok(NCExpr::atom(Atom::inverse(gen)));
        }
        if gen.is_independent() {
            return Ok(NCExpr::gen(gen).d_dz_n(order));
        }
        Ok(NCExpr::atom(Atom::deriv(gen, order)))
    }
}

/// Parses `text` into an (unnormalized) expression.
pub fn parse(text: &str, ctx: &Context) -> Result<NCExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        k: 0,
        end: text.len(),
        ctx,
    };
    let e = p.expr()?;
    if p.k != p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}
