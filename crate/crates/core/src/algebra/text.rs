//! Canonical text rendering and parsing of fractions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! frac    := poly [ "/" "(" factor ("*" factor)* ")" ]
//! factor  := ( "(" var "-" var ")" | var ) [ "^" int ]
//! poly    := ["-"] term (("+" | "-") term)*  |  "(" poly ")"
//! term    := int | [int "*"] var ["^" int] ("*" var ["^" int])*
//! var     := "x" int
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::frac::{oriented, Factor, RatFrac};
use super::poly::{Monomial, Polynomial};
use crate::error::{GreeneError, Result};

pub fn poly_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if !mag.is_one() || m.is_one() {
            parts.push(mag.to_string());
        }
        for (v, e) in m.powers() {
            if e == 1 {
                parts.push(format!("x{v}"));
            } else {
                parts.push(format!("x{v}^{e}"));
            }
        }
        s.push_str(&parts.join("*"));
    }
    s
}

fn factor_text(f: Factor, m: u32) -> String {
    let base = match f {
        Factor::Diff(i, j) => format!("(x{i} - x{j})"),
        Factor::Var(i) => format!("x{i}"),
    };
    if m == 1 {
        base
    } else {
        format!("{base}^{m}")
    }
}

/// Deterministic rendering: expanded numerator in descending graded-lex
/// order over the ascending product of denominator factors.
pub fn canonical_text(f: &RatFrac) -> String {
    let num = f.numerator();
    let den: Vec<(Factor, u32)> = f.denominator().collect();
    if den.is_empty() {
        return poly_text(num);
    }
    let mut s = String::new();
    if num.len() > 1 {
        let _ = write!(s, "({})", poly_text(num));
    } else {
        s.push_str(&poly_text(num));
    }
    s.push_str(" / (");
    let parts: Vec<String> = den.iter().map(|&(f, m)| factor_text(f, m)).collect();
    s.push_str(&parts.join("*"));
    s.push(')');
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let err = |msg: String| GreeneError::parse(1, msg);
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' | '\n' | '\r' => k += 1,
            '+' => {
                out.push(Tok::Plus);
                k += 1
            }
            '-' => {
                out.push(Tok::Minus);
                k += 1
            }
            '*' => {
                out.push(Tok::Star);
                k += 1
            }
            '/' => {
                out.push(Tok::Slash);
                k += 1
            }
            '^' => {
                out.push(Tok::Caret);
                k += 1
            }
            '(' => {
                out.push(Tok::LParen);
                k += 1
            }
            ')' => {
                out.push(Tok::RParen);
                k += 1
            }
            'x' => {
                let start = k + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let idx: usize = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err(format!("bad variable at offset {k}")))?;
                if idx == 0 {
                    return Err(err("variables start at x1".into()));
                }
                out.push(Tok::Var(idx));
                k = end;
            }
            d if d.is_ascii_digit() => {
                let mut end = k;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let v: BigInt = chars[k..end].iter().collect::<String>().parse().unwrap();
                out.push(Tok::Int(v));
                k = end;
            }
            other => return Err(err(format!("unexpected character {other:?}"))),
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

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(GreeneError::parse(
                1,
                format!("expected {t:?}, found {got:?}"),
            )),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.next() {
            Some(Tok::Int(v)) => {
                u32::try_from(&v).map_err(|_| GreeneError::parse(1, "exponent out of range"))
            }
            got => Err(GreeneError::parse(
                1,
                format!("expected exponent, found {got:?}"),
            )),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            self.small_int()
        } else {
            Ok(1)
        }
    }

    fn poly(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let p = self.poly()?;
            self.expect(Tok::RParen)?;
            return Ok(p);
        }
        let mut acc = Polynomial::zero();
        let mut sign = BigInt::one();
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let (m, c) = self.term()?;
            acc.add_term(m, c * &sign);
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = BigInt::one();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -BigInt::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut mono = Monomial::one();
        let mut first = true;
        loop {
            match self.next() {
                Some(Tok::Int(v)) if first => coeff = v,
                Some(Tok::Var(v)) => {
                    let e = self.exponent()?;
                    mono = mono.mul(&Monomial::var_pow(v, e));
                }
                got => {
                    return Err(GreeneError::parse(
                        1,
                        format!("expected term, found {got:?}"),
                    ))
                }
            }
            first = false;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn factor(&mut self) -> Result<(Factor, u32, bool)> {
        match self.next() {
            Some(Tok::LParen) => {
                let i = self.var()?;
                self.expect(Tok::Minus)?;
                let j = self.var()?;
                self.expect(Tok::RParen)?;
                if i == j {
                    return Err(GreeneError::parse(1, "zero factor"));
                }
                let (f, flip) = oriented(i, j);
                let m = self.exponent()?;
                Ok((f, m, flip && m % 2 == 1))
            }
            Some(Tok::Var(i)) => {
                let m = self.exponent()?;
                Ok((Factor::Var(i), m, false))
            }
            got => Err(GreeneError::parse(
                1,
                format!("expected factor, found {got:?}"),
            )),
        }
    }

    fn var(&mut self) -> Result<usize> {
        match self.next() {
            Some(Tok::Var(v)) => Ok(v),
            got => Err(GreeneError::parse(
                1,
                format!("expected variable, found {got:?}"),
            )),
        }
    }
}

/// Parses the grammar produced by [`canonical_text`].
pub fn parse_frac(s: &str) -> Result<RatFrac> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
    };
    let mut num = p.poly()?;
    let mut den = Vec::new();
    if p.peek() == Some(&Tok::Slash) {
        p.pos += 1;
        p.expect(Tok::LParen)?;
        loop {
            let (f, m, flip) = p.factor()?;
            if flip {
                num = -&num;
            }
            den.push((f, m));
            match p.next() {
                Some(Tok::Star) => continue,
                Some(Tok::RParen) => break,
                got => {
                    return Err(GreeneError::parse(
                        1,
                        format!("expected * or ), found {got:?}"),
                    ))
                }
            }
        }
    }
    if p.pos != p.toks.len() {
        return Err(GreeneError::parse(1, "trailing input"));
    }
    if num.is_zero() && !den.is_empty() {
        return Ok(RatFrac::zero());
    }
    Ok(RatFrac::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac::frac_equal;

    fn diamond() -> RatFrac {
        RatFrac::new(
            Polynomial::linear(1, 4),
            [
                (Factor::Diff(1, 2), 1),
                (Factor::Diff(1, 3), 1),
                (Factor::Diff(2, 4), 1),
                (Factor::Diff(3, 4), 1),
            ],
        )
    }

    #[test]
    fn renders_module_examples() {
        assert_eq!(
            canonical_text(&diamond()),
            "(x1 - x4) / ((x1 - x2)*(x1 - x3)*(x2 - x4)*(x3 - x4))"
        );
        assert_eq!(canonical_text(&RatFrac::zero()), "0");
        assert_eq!(canonical_text(&RatFrac::inv_diff(1, 2)), "1 / ((x1 - x2))");
        assert_eq!(canonical_text(&RatFrac::inv_diff(2, 1)), "-1 / ((x1 - x2))");
    }

    #[test]
    fn parse_roundtrip() {
        for f in [
            diamond(),
            RatFrac::zero(),
            RatFrac::inv_diff(3, 1),
            RatFrac::one(),
        ] {
            let t = canonical_text(&f);
            let back = parse_frac(&t).unwrap();
            assert_eq!(back, f, "{t}");
        }
        let g = parse_frac("(3*x1^2*x2 - 2) / ((x2 - x1)^2*x3)").unwrap();
        assert_eq!(parse_frac(&canonical_text(&g)).unwrap(), g);
    }

    #[test]
    fn parse_noncanonical_orientation() {
        let f = parse_frac("1 / ((x2 - x1))").unwrap();
        assert!(frac_equal(&f, &RatFrac::inv_diff(2, 1)));
        assert!(parse_frac("1 / ((x1 - x1))").is_err());
        assert!(parse_frac("x1 +").is_err());
    }
}
