//! Reader for the polynomial text format, e.g. `8*alpha^6 - 17/2*alpha^3*beta + z^-1`.
//!
//! Products may be written with `*` or juxtaposition separated by spaces,
//! exponents may be negative (`z^-3` or `z^(-3)`), and parentheses group
//! sub-expressions, which are expanded.

use super::{CoeffError, Mono, QPoly, Vars, MAX_VARS, Q};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '\u{b7}' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
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
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().map_err(|e| format!("{e}"))?));
            }
            a if a.is_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let s = match s.as_str() {
                    "\u{3b1}" => "alpha".to_string(),
                    "\u{3b2}" => "beta".to_string(),
                    "\u{3b4}" => "delta".to_string(),
                    _ => s,
                };
                out.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: Vars,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<QPoly, String> {
        let mut acc = QPoly::zero(self.vars);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc = &acc - &t;
            } else {
                acc = &acc + &t;
            }
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<QPoly, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = match self.next() {
                        Some(Tok::Num(n)) => n,
                        _ => return Err("only integer divisors are supported".into()),
                    };
                    if d == BigInt::from(0) {
                        return Err("division by zero".into());
                    }
                    acc = acc.scale(&Q::new(BigInt::from(1), d));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QPoly, String> {
        let base = match self.next() {
            Some(Tok::Num(n)) => QPoly::constant(self.vars, Q::from_integer(n)),
            Some(Tok::Ident(name)) => {
                let i = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| format!("unknown variable `{name}`"))?;
                let mut e = [0; MAX_VARS];
                e[i] = 1;
                QPoly::monomial(self.vars, Mono(e), Q::from_integer(BigInt::from(1)))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err("missing `)`".into());
                }
                inner
            }
            other => return Err(format!("unexpected token {other:?}")),
        };
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.exponent()?;
        if exp >= 0 {
            return Ok(base.pow(exp as u32));
        }
        if base.len() != 1 {
            return Err("negative powers are only allowed on monomials".into());
        }
        let (m, c) = base.terms().next().unwrap();
        let inv = QPoly::monomial(self.vars, m.inv(), c.recip());
        Ok(inv.pow((-exp) as u32))
    }

    fn exponent(&mut self) -> Result<i32, String> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = match self.next() {
            Some(Tok::Num(n)) => i32::try_from(n).map_err(|_| "exponent too large".to_string())?,
            other => return Err(format!("expected exponent, found {other:?}")),
        };
        if paren && self.next() != Some(Tok::RParen) {
            return Err("missing `)` after exponent".into());
        }
        Ok(if neg { -n } else { n })
    }
}

pub(super) fn parse_poly(vars: Vars, text: &str) -> Result<QPoly, CoeffError> {
    let err = |reason: String| CoeffError::Parse { text: text.to_string(), reason };
    let toks = tokenize(text).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, vars };
    let out = p.expr().map_err(err)?;
    if p.pos != toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{q, AB, ZD};

    #[test]
    fn parses_rationals_and_negative_powers() {
        let p = parse_poly(ZD, "z^-1 - 17/2*z^3 delta + 2").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&Mono::from_slice(&[3, 1])), q(-17, 2));
        assert_eq!(p.coeff(&Mono::from_slice(&[-1, 0])), q(1, 1));
    }

    #[test]
    fn expands_parentheses() {
        let p = parse_poly(AB, "(2*alpha - beta^2)*(alpha^2 + 2*beta)").unwrap();
        let expected = parse_poly(AB, "2 a^3 + 4 a b - a^2 b^2 - 2 b^3").unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn display_round_trips() {
        let p = parse_poly(AB, "-1/4*alpha^3 + 3*alpha^-2*beta - 1").unwrap();
        assert_eq!(parse_poly(AB, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly(AB, "alpha +").is_err());
        assert!(parse_poly(AB, "gamma").is_err());
        assert!(parse_poly(AB, "").is_err());
        assert!(parse_poly(AB, "(a+b)^-1").is_err());
    }
}
