//! Text syntax shared by polynomials, rational functions and differential forms.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*
//! power  := atom ('^' (integer | atom))*
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! An identifier is a variable name, or `d<name>` for the differential of a variable.
//! `^` followed by an integer literal is a power; between forms it is the wedge product,
//! so `x*dy^dz` and `x*dy*dz` denote the same 2-form.

use num_bigint::BigInt;

use super::rational_function::RationalFunction;
use super::{PolyError, Polynomial};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(Token, usize)>, PolyError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push((Token::Int(text.parse().expect("digits parse")), start));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Token::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(PolyError::parse(
                    format!("unexpected character '{other}'"),
                    start,
                ))
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

/// Values an expression can evaluate to.
pub trait ExprValue: Sized {
    fn constant(nvars: usize, c: Rational) -> Self;
    fn variable(nvars: usize, index: usize) -> Self;
    fn differential(nvars: usize, index: usize) -> Result<Self, String>;
    fn plus(self, other: Self) -> Self;
    fn negate(self) -> Self;
    fn times(self, other: Self) -> Result<Self, String>;
    fn divide(self, other: Self) -> Result<Self, String>;
    fn power(self, exponent: u32) -> Result<Self, String>;
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn lift<V>(&self, r: Result<V, String>, at: usize) -> Result<V, PolyError> {
        r.map_err(|m| PolyError::parse(m, at))
    }

    fn expr<V: ExprValue>(&mut self) -> Result<V, PolyError> {
        let negate = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                true
            }
            Some(Token::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc: V = self.term()?;
        if negate {
            acc = acc.negate();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs: V = self.term()?;
                    acc = acc.plus(rhs);
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs: V = self.term()?;
                    acc = acc.plus(rhs.negate());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<V: ExprValue>(&mut self) -> Result<V, PolyError> {
        let mut acc: V = self.power()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let rhs: V = self.power()?;
                    acc = self.lift(acc.times(rhs), at)?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    let rhs: V = self.power()?;
                    acc = self.lift(acc.divide(rhs), at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<V: ExprValue>(&mut self) -> Result<V, PolyError> {
        let mut acc: V = self.atom()?;
        while let Some(Token::Caret) = self.peek() {
            let at = self.offset();
            self.bump();
            if let Some(Token::Int(e)) = self.peek() {
                let e: u32 = u32::try_from(e.clone())
                    .map_err(|_| PolyError::parse("exponent too large".to_string(), at))?;
                self.bump();
                acc = self.lift(acc.power(e), at)?;
            } else {
                let rhs: V = self.atom()?;
                acc = self.lift(acc.times(rhs), at)?;
            }
        }
        Ok(acc)
    }

    fn atom<V: ExprValue>(&mut self) -> Result<V, PolyError> {
        let at = self.offset();
        let nvars = self.names.len();
        match self.bump() {
            Some(Token::Int(n)) => Ok(V::constant(nvars, Rational::from_integer(n))),
            Some(Token::Ident(name)) => {
                if let Some(i) = self.names.iter().position(|v| *v == name) {
                    return Ok(V::variable(nvars, i));
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(i) = self.names.iter().position(|v| v == rest) {
                        return self.lift(V::differential(nvars, i), at);
                    }
                }
                Err(PolyError::UnknownVariable(name))
            }
            Some(Token::LParen) => {
                let inner: V = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(PolyError::parse("expected ')'".to_string(), self.offset())),
                }
            }
            Some(t) => Err(PolyError::parse(format!("unexpected token {t:?}"), at)),
            None => Err(PolyError::parse("unexpected end of input".to_string(), at)),
        }
    }
}

/// Parses `input` with the given variable names into any [`ExprValue`].
pub fn parse_expr<V: ExprValue>(input: &str, names: &[String]) -> Result<V, PolyError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(PolyError::parse("empty expression".to_string(), 0));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        names,
        end: input.len(),
    };
    let v = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(PolyError::parse("trailing input".to_string(), p.offset()));
    }
    Ok(v)
}

impl ExprValue for RationalFunction {
    fn constant(nvars: usize, c: Rational) -> Self {
        RationalFunction::constant(nvars, c)
    }
    fn variable(nvars: usize, index: usize) -> Self {
        RationalFunction::from_poly(Polynomial::variable(nvars, index))
    }
    fn differential(_: usize, _: usize) -> Result<Self, String> {
        Err("differentials are not allowed in a scalar expression".to_string())
    }
    fn plus(self, other: Self) -> Self {
        RationalFunction::add(&self, &other)
    }
    fn negate(self) -> Self {
        RationalFunction::neg(&self)
    }
    fn times(self, other: Self) -> Result<Self, String> {
        Ok(RationalFunction::mul(&self, &other))
    }
    fn divide(self, other: Self) -> Result<Self, String> {
        RationalFunction::div(&self, &other).map_err(|e| e.to_string())
    }
    fn power(self, exponent: u32) -> Result<Self, String> {
        Ok(RationalFunction::pow(&self, exponent))
    }
}

pub fn parse_rational_function(
    input: &str,
    names: &[String],
) -> Result<RationalFunction, PolyError> {
    parse_expr::<RationalFunction>(input, names).map(|r| r.simplified())
}

/// Parses a polynomial; division is only allowed by nonzero constants.
pub fn parse_polynomial(input: &str, names: &[String]) -> Result<Polynomial, PolyError> {
    let rf = parse_rational_function(input, names)?;
    rf.as_polynomial()
        .cloned()
        .ok_or_else(|| PolyError::NotPolynomial(input.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_prints_round_trip() {
        let n = names(&["x", "y"]);
        for text in ["x^2 + y^2 - 1", "-1/2*x + 1", "x*y - 1", "3*x^2*y - 2"] {
            let p = parse_polynomial(text, &n).unwrap();
            assert_eq!(p.display_with(&n).to_string(), text);
        }
    }

    #[test]
    fn parenthesised_powers() {
        let n = names(&["t"]);
        let a = parse_polynomial("(1 - t^2)^2 + (2*t)^2", &n).unwrap();
        let b = parse_polynomial("(1 + t^2)^2", &n).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_are_reported() {
        let n = names(&["x"]);
        assert!(
            matches!(parse_polynomial("x + z", &n), Err(PolyError::UnknownVariable(v)) if v == "z")
        );
        assert!(matches!(
            parse_polynomial("1/x", &n),
            Err(PolyError::NotPolynomial(_))
        ));
        assert!(matches!(
            parse_polynomial("x +", &n),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("1/(x - x)", &n),
            Err(PolyError::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("dx", &n),
            Err(PolyError::Parse { .. })
        ));
    }
}
