//! Free associative algebra over exact coefficients: parsing, printing,
//! normal ordering, formal calculus.

mod atom;
mod calculus;
mod coeff;
mod expr;
mod parse;
mod print;
pub mod rules;

pub use atom::{Atom, Context, Gen, Word};
pub use calculus::SubstError;
pub use coeff::{Coeff, GaussRat, Monomial};
pub use expr::NCExpr;
pub use parse::{parse, ParseError};
pub use rules::{NormalizeError, Rule, RuleError, RuleSet};

/// Parses with the standard context, panicking on malformed literals.
pub fn lit(s: &str) -> NCExpr {
    match parse(s, &Context::standard()) {
        Ok(e) => e,
        Err(err) => panic!("bad literal `{s}`: {err}"),
    }
}
