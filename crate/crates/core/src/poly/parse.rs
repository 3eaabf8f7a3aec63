//! Recursive-descent parser for polynomial expressions over the rationals.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                return Err(Error::parse(format!(
                    "decimal or exponent literal at offset {start}; use p/q"
                )));
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(Error::parse(format!("unexpected character {ch:?} at offset {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                match self.toks.get(self.pos).cloned() {
                    Some(Tok::Num(d)) => {
                        self.pos += 1;
                        if d.is_zero() {
                            return Err(Error::ZeroDenominator);
                        }
                        acc = acc.scale(&Rational::new(1.into(), d));
                    }
                    _ => return Err(Error::parse("division only by an integer literal")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::parse("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::parse("exponent must be a nonnegative integer literal")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(MultiPoly::var(&name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse("missing closing parenthesis"));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::parse(format!("unexpected token {t:?}"))),
            None => Err(Error::parse("unexpected end of expression")),
        }
    }
}

/// Parse and expand an expression such as `5/4*c^6 + (4-c^2)*(x + 1)`.
pub fn parse_expression(s: &str) -> Result<MultiPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::parse("empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn nested_expansion() {
        let p = parse_expression("(4 - c^2)*(x + 1) - 2*(x)^2/4").unwrap();
        let q = MultiPoly::parse_sparse("4*x + 4 - c^2*x - c^2 - 1/2*x^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_expression("-2^2").unwrap(), MultiPoly::int(-4));
        assert_eq!(parse_expression("2*3+4").unwrap(), MultiPoly::int(10));
        assert_eq!(
            parse_expression("1/2*c").unwrap().eval(&[("c", int(4))]).unwrap(),
            int(2)
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_expression("0.6*c").is_err());
        assert!(parse_expression("c^x").is_err());
        assert!(parse_expression("(c+1").is_err());
        assert!(parse_expression("c/0").is_err());
        assert!(parse_expression("c $ 2").is_err());
        assert!(MultiPoly::parse_sparse("(c+1)^2").is_err());
    }
}
