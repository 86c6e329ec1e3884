//! Human-readable text form, e.g. `3 d^2 |β| - 8 d |β| + d β_1 + 9/2 |β|^2 α_2`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MultiPoly, Var};
use crate::{Error, Result};

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::D => write!(f, "d"),
            Var::S => write!(f, "|β|"),
            Var::A(i) => write!(f, "α_{i}"),
            Var::B(i) => write!(f, "β_{i}"),
            Var::K => write!(f, "k"),
            Var::X => write!(f, "x"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Terms from highest to lowest in the canonical order.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a} {m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '|' => {
                let end = chars[i + 1..]
                    .iter()
                    .position(|&c| c == '|')
                    .ok_or_else(|| Error::Parse("unclosed |".into()))?;
                let name: String = chars[i..i + end + 2].iter().collect();
                out.push(Tok::Name(name));
                i += end + 2;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().map_err(|_| Error::Parse(digits))?));
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
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

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero();
        loop {
            let mut negate = false;
            loop {
                match self.peek() {
                    Some(Tok::Plus) => self.pos += 1,
                    Some(Tok::Minus) => {
                        self.pos += 1;
                        negate = !negate;
                    }
                    _ => break,
                }
            }
            let t = self.term()?;
            out = if negate { &out - &t } else { &out + &t };
            if !matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Name(_)) | Some(Tok::LParen) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.next() {
            Some(Tok::Num(n)) => Ok(base.pow(u32::try_from(n).map_err(|_| Error::Parse("exponent".into()))?)),
            t => Err(Error::Parse(format!("expected exponent, got {t:?}"))),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let mut value = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) if !d.is_zero() => value /= BigRational::from_integer(d),
                        t => return Err(Error::Parse(format!("expected denominator, got {t:?}"))),
                    }
                }
                Ok(MultiPoly::constant(value))
            }
            Some(Tok::Name(name)) => Var::from_name(&name)
                .map(MultiPoly::var)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}"))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(Error::Parse("expected )".into()));
                }
                Ok(inner)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses the text form produced by `Display`; also accepts ASCII names
/// (`D`, `S`, `a1`, `b2`), `*`, parentheses and powers of sub-expressions.
pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_frac};

    #[test]
    fn renders_appendix_style() {
        let p = parse_poly("3 D^2 S - 8 D S + D b1 + S a1 + S b1 + 4 S - b1").unwrap();
        assert_eq!(
            p.to_string(),
            "3 d^2 |β| - 8 d |β| + d β_1 + |β| α_1 + |β| β_1 + 4 |β| - β_1"
        );
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn parses_fractions_and_signs() {
        let p = parse_poly("-9/2 d^4 |β| + (1/2) β_1^2 - 3").unwrap();
        let m = Monomial::from_pairs(alloc::vec![(Var::D, 4), (Var::S, 1)]);
        assert_eq!(p.coeff(&m), rat_frac(-9, 2));
        assert_eq!(p.constant_term(), rat(-3));
        assert_eq!(p.to_string(), "-9/2 d^4 |β| + 1/2 β_1^2 - 3");
        assert_eq!(parse_poly("0").unwrap(), MultiPoly::zero());
        assert!(parse_poly("d q").is_err());
        assert!(parse_poly("(d + 1").is_err());
        let f = parse_poly("1/2 b1 (b1 - 1) (D - 3)^2").unwrap();
        let expect = parse_poly("1/2 b1^2 D^2 - 3 b1^2 D + 9/2 b1^2 - 1/2 b1 D^2 + 3 b1 D - 9/2 b1").unwrap();
        assert_eq!(f, expect);
        assert_eq!(parse_poly("2 k (k - 1)").unwrap(), parse_poly("2 k^2 - 2 k").unwrap());
    }
}
