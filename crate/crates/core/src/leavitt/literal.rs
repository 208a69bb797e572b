//! Element literals: `q * S[p1.p2] S*[q1.q2] - S[v] + ...`.
//!
//! `S[μ]` is `S_μ` (with `S[v]` the projection `P_v`), `S*[μ]` and `S[μ]*`
//! are its adjoint, juxtaposed factors multiply, and coefficients are
//! integers or `n/d`. The literal `0` is the zero element.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::{Element, Monomial, Rational};
use crate::graph::{Graph, Path};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct LiteralError {
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    graph: &'a Arc<Graph>,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits parse"))
    }

    fn coefficient(&mut self) -> Result<Rational, LiteralError> {
        let numer = self.integer()?;
        if self.eat('/') {
            let denom = self.integer()?;
            if denom == BigInt::from(0) {
                return self.error("zero denominator");
            }
            return Ok(Rational::new(numer, denom));
        }
        Ok(Rational::from_integer(numer))
    }

    fn path(&mut self) -> Result<Path, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '.')
        {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        if text.is_empty() {
            return self.error("expected a path");
        }
        Path::parse(self.graph, &text).map_err(|e| LiteralError {
            column: start + 1,
            message: e.to_string(),
        })
    }

    /// `S[μ]`, `S*[μ]` or `S[μ]*`.
    fn factor(&mut self) -> Result<Monomial, LiteralError> {
        if !self.eat('S') {
            return self.error("expected `S[...]`");
        }
        let mut star = self.eat('*');
        if !self.eat('[') {
            return self.error("expected `[`");
        }
        let path = self.path()?;
        if !self.eat(']') {
            return self.error("expected `]`");
        }
        if !star && self.eat('*') {
            star = true;
        }
        Ok(if star {
            Monomial::path_star(path)
        } else {
            Monomial::path(path)
        })
    }

    fn term(&mut self) -> Result<Element, LiteralError> {
        let mut coefficient = Rational::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coefficient = self.coefficient()?;
            if !self.eat('*') {
                if coefficient == Rational::from_integer(0.into()) {
                    return Ok(Element::zero(self.graph));
                }
                return self.error("expected `*` after coefficient");
            }
        }
        let mut product = Element::monomial(self.graph, self.factor()?);
        while self.peek() == Some('S') {
            let next = Element::monomial(self.graph, self.factor()?);
            product = product.mul(&next).expect("same host");
        }
        Ok(product.scale(&coefficient))
    }
}

pub fn parse_element(graph: &Arc<Graph>, text: &str) -> Result<Element, LiteralError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        graph,
    };
    let mut total = Element::zero(graph);
    let mut negative = p.eat('-');
    if !negative {
        p.eat('+');
    }
    loop {
        let term = p.term()?;
        let term = if negative { term.neg() } else { term };
        total = total.add(&term).expect("same host");
        match p.peek() {
            None => break,
            Some('+') => {
                p.pos += 1;
                negative = false;
            }
            Some('-') => {
                p.pos += 1;
                negative = true;
            }
            Some(c) => return p.error(format!("unexpected `{c}`")),
        }
    }
    Ok(total)
}
