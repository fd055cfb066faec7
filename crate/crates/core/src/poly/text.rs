//! Polynomial text form.
//!
//! ```text
//! poly  := ['-'] term (('+'|'-') term)*
//! term  := coeff ['*' var] | var
//! var   := 'x' ['^' uint]
//! coeff := uint
//! ```
//!
//! Whitespace between tokens is ignored.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::SparsePoly;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// `'x' ['^' uint]`, with the `x` already consumed.
    fn exponent(&mut self) -> Result<u64> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        if self.peek() == Some(b'-') {
            return Err(Error::domain(format!(
                "negative exponent at offset {}",
                self.pos
            )));
        }
        let at = self.pos;
        match self.digits() {
            Some(d) => d.parse::<u64>().or_else(|_| {
                Err(Error::Syntax {
                    pos: at,
                    msg: "exponent too large".into(),
                })
            }),
            None => self.error("expected exponent after '^'"),
        }
    }

    fn term(&mut self) -> Result<(u64, BigInt)> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok((self.exponent()?, BigInt::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let coeff: BigInt = self.digits().unwrap().parse().unwrap();
                if self.eat(b'*') {
                    if !self.eat(b'x') {
                        return self.error("expected 'x' after '*'");
                    }
                    Ok((self.exponent()?, coeff))
                } else {
                    Ok((0, coeff))
                }
            }
            Some(_) => self.error("expected a coefficient or 'x'"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub(super) fn parse_poly(text: &str) -> Result<SparsePoly> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut negative = cur.eat(b'-');
    loop {
        let (e, c) = cur.term()?;
        terms.push((e, if negative { -c } else { c }));
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return cur.error("expected '+', '-' or end of input"),
        }
        cur.pos += 1;
    }
    Ok(SparsePoly::from_terms(terms))
}

pub(super) fn format_poly(f: &SparsePoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in f.terms().iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let a = c.abs();
        match (*e, a.is_one()) {
            (0, _) => write!(out, "{a}").unwrap(),
            (1, true) => out.push('x'),
            (1, false) => write!(out, "{a}*x").unwrap(),
            (_, true) => write!(out, "x^{e}").unwrap(),
            (_, false) => write!(out, "{a}*x^{e}").unwrap(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let f = parse_poly("x^10-1").unwrap();
        assert_eq!(f.terms(), &[(10, BigInt::from(1)), (0, BigInt::from(-1))]);
        let g = parse_poly("x^128-x^112+x^80-x^64+x^48-x^16+1").unwrap();
        assert_eq!((g.term_count(), g.degree()), (7, 128));
        assert_eq!(parse_poly("2*x + 3*x").unwrap().terms(), &[(1, BigInt::from(5))]);
        assert!(parse_poly("x - x").unwrap().is_zero());
        assert_eq!(parse_poly("0").unwrap(), SparsePoly::zero());
        let big = parse_poly("123456789012345678901234567890*x^3").unwrap();
        assert_eq!(big.leading_coeff().to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poly("x^-1"), Err(Error::Domain(_))));
        assert!(matches!(parse_poly(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("x^"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("x+"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("+x"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("3*"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_poly(&SparsePoly::zero()), "0");
        assert_eq!(format_poly(&SparsePoly::from_terms([(2, 1), (0, -1)])), "x^2-1");
        assert_eq!(format_poly(&SparsePoly::from_terms([(7, -2)])), "-2*x^7");
        assert_eq!(format_poly(&SparsePoly::from_terms([(1, -1), (0, 3)])), "-x+3");
        assert_eq!(format_poly(&SparsePoly::from_terms([(1, 4)])), "4*x");
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(terms in prop::collection::vec((0u64..200, -1000i64..1000), 0..20)) {
            let f = SparsePoly::from_terms(terms);
            let text = format_poly(&f);
            prop_assert_eq!(parse_poly(&text).unwrap(), f);
        }
    }
}
