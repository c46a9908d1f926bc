//! Polynomial expression parser.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ['^' nat]
//! atom   := int | name | '(' expr ')'
//! ```
//!
//! Names resolve to ring variables or, in `QQ(..)` rings, to parameters.
//! The right operand of `/` must be a nonzero element of the coefficient
//! field, so `3/4` and `x/(1-Y)` over `QQ(Y)` parse while `x/y` does not.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::poly::Poly;
use crate::ring::RingRef;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable(String),
    NonConstantDivisor,
    DivisionByZero,
    ExponentTooLarge,
    Other(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            Self::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            Self::UnexpectedEnd => write!(f, "unexpected end of input"),
            Self::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Self::NonConstantDivisor => write!(f, "division is only allowed by coefficient-field elements"),
            Self::DivisionByZero => write!(f, "division by zero"),
            Self::ExponentTooLarge => write!(f, "exponent too large"),
            Self::Other(s) => write!(f, "{s}"),
        }
    }
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        Self { line, column, kind }
    }

    /// Shift positions when the parsed text started at `line` of a file.
    pub fn at_line(mut self, line: usize) -> Self {
        self.line += line - 1;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let cs: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[s..i].iter().collect();
            col += i - s;
            toks.push((Tok::Int(lit.parse().expect("digits")), l0, c0));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            col += i - s;
            toks.push((Tok::Name(cs[s..i].iter().collect()), l0, c0));
            continue;
        }
        if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), l0, c0));
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError::new(l0, c0, ParseErrorKind::UnexpectedChar(c)));
    }
    Ok(Lexer { toks, end: (line, col) })
}

struct Parser<'a> {
    lx: Lexer,
    pos: usize,
    ring: &'a RingRef,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.lx.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.lx.end)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, kind)
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some(Tok::Int(n)) => self.err(ParseErrorKind::UnexpectedToken(n.to_string())),
            Some(Tok::Name(n)) => self.err(ParseErrorKind::UnexpectedToken(n.clone())),
            Some(Tok::Op(c)) => self.err(ParseErrorKind::UnexpectedToken(c.to_string())),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
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

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = {
                    self.pos += 1;
                    self.here()
                };
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(ParseError::new(at.0, at.1, ParseErrorKind::DivisionByZero));
                }
                if !d.is_constant() {
                    return Err(ParseError::new(at.0, at.1, ParseErrorKind::NonConstantDivisor));
                }
                let inv = d.constant_coeff().inv().expect("nonzero");
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .ok()
                        .filter(|&e: &u32| e <= 10_000)
                        .ok_or_else(|| self.err(ParseErrorKind::ExponentTooLarge))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.unexpected()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Poly::constant(self.ring, Coeff::Rat(BigRational::from_integer(n))))
            }
            Some(Tok::Name(name)) => {
                if let Some(i) = self.ring.var_index(&name) {
                    self.pos += 1;
                    Ok(Poly::var(self.ring, i))
                } else if let Some(i) = self.ring.param_index(&name) {
                    self.pos += 1;
                    Ok(Poly::constant(self.ring, Coeff::param(i)))
                } else {
                    Err(self.err(ParseErrorKind::UnknownVariable(name)))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse `text` as a polynomial in `ring`.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Poly, ParseError> {
    let lx = lex(text)?;
    let mut p = Parser { lx, pos: 0, ring };
    if p.peek().is_none() {
        return Err(p.err(ParseErrorKind::UnexpectedEnd));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::ring::Ring;

    fn r3() -> RingRef {
        Ring::rational(&["x", "y", "z"])
    }

    #[test]
    fn parses_curve_generator() {
        let r = r3();
        let p = parse_poly("y^2 - x*z", &r).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff_of(&Monomial::from_exps(vec![0, 2, 0])), Coeff::int(1));
        assert_eq!(p.coeff_of(&Monomial::from_exps(vec![1, 0, 1])), Coeff::int(-1));
        assert_eq!(p.to_string(), "y^2 - x*z");
    }

    #[test]
    fn zero_and_cancellation() {
        let r = r3();
        assert!(parse_poly("0", &r).unwrap().is_zero());
        let p = parse_poly("(x+y)^2 - x^2 - 2*x*y", &r).unwrap();
        assert_eq!(p, parse_poly("y^2", &r).unwrap());
    }

    #[test]
    fn rational_literals() {
        let r = r3();
        let p = parse_poly("3/4*x - 1/2", &r).unwrap();
        assert_eq!(p.to_string(), "3/4*x - 1/2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = r3();
        let e = parse_poly("x + w", &r).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("w".into()));
        let e = parse_poly("x/y", &r).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonConstantDivisor);
        let e = parse_poly("x +", &r).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_poly("x $ y", &r).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('$'));
        let e = parse_poly("x\n  * (y", &r).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_poly("x/0", &r).is_err());
    }

    #[test]
    fn fraction_field_coefficients() {
        let r = Ring::parse_header("ring X,Z over QQ(Y)").unwrap();
        let p = parse_poly("X^2 + 2*X*Z/(1-Y) + Z^2/(1-Y)", &r).unwrap();
        assert_eq!(p.num_terms(), 3);
        let back = parse_poly(&p.to_string(), &r).unwrap();
        assert_eq!(back, p);
        // parameter-only division is fine, variable division is not
        assert!(parse_poly("X/Y", &r).is_ok());
        assert!(parse_poly("Y/X", &r).is_err());
    }
}
