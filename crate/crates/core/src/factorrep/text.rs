//! Factorization text form.
//!
//! ```text
//! factorization := item (" * " item)*
//! item := "Phi_" k ["^" mult] | "C_" k ["^" signedmult]
//!       | "(" poly ")" ["^" mult] | "x" ["^" v] | integer
//! ```
//!
//! Items are printed as content, power of `x`, cyclotomic entries (ascending
//! `k`; for `C`, positive multiplicities first), then the remaining blocks.
//! An empty product prints as `1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{
    CAwareFactorization, CFactor, Factor, FactorRep, IrreducibleCount, PhiAwareFactorization,
    PhiFactor, PlainFactorization,
};
use crate::error::{Error, Result};
use crate::poly::SparsePoly;

struct Items(Vec<String>);

impl Items {
    fn new(content: &BigInt) -> Self {
        let mut v = Vec::new();
        if !content.is_one() {
            v.push(content.to_string());
        }
        Items(v)
    }

    fn power(&mut self, base: String, m: impl fmt::Display + PartialEq + From<u8>) {
        if m == 1u8.into() {
            self.0.push(base);
        } else {
            self.0.push(format!("{base}^{m}"));
        }
    }

    fn x(&mut self, v: u64) {
        if v > 0 {
            self.power("x".into(), v);
        }
    }

    fn others(&mut self, factors: &[Factor]) {
        for f in factors {
            self.power(format!("({})", f.poly), f.multiplicity);
        }
    }

    fn finish(self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&self.0.join(" * "))
        }
    }
}

impl fmt::Display for PlainFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Items::new(&self.content);
        items.others(&self.factors);
        items.finish(f)
    }
}

impl fmt::Display for PhiAwareFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Items::new(&self.content);
        items.x(self.x_power);
        let mut phi = self.phi_factors.clone();
        phi.sort_by_key(|p| p.k);
        for p in phi {
            items.power(format!("Phi_{}", p.k), p.multiplicity);
        }
        items.others(&self.other_factors);
        items.finish(f)
    }
}

impl fmt::Display for CAwareFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Items::new(&self.content);
        items.x(self.x_power);
        let mut c: Vec<&CFactor> = self.c_factors.iter().collect();
        c.sort_by_key(|c| (c.multiplicity < 0, c.k));
        for e in c {
            items.power(format!("C_{}", e.k), e.multiplicity);
        }
        items.others(&self.other_factors);
        items.finish(f)
    }
}

impl fmt::Display for IrreducibleCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.total())
        } else {
            write!(f, ">= {}", self.total())
        }
    }
}

/// A parsed factorization in whichever vocabulary its items use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyFactorization {
    Plain(PlainFactorization),
    Phi(PhiAwareFactorization),
    C(CAwareFactorization),
}

impl AnyFactorization {
    pub fn expand(&self) -> Result<SparsePoly> {
        match self {
            Self::Plain(p) => p.expand(),
            Self::Phi(p) => p.expand(),
            Self::C(c) => c.expand(),
        }
    }
}

impl fmt::Display for AnyFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Plain(p) => p.fmt(f),
            Self::Phi(p) => p.fmt(f),
            Self::C(c) => c.fmt(f),
        }
    }
}

enum Item {
    Content(BigInt),
    X(u64),
    Phi(u64, u64),
    C(u64, i64),
    Block(SparsePoly, u64),
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        pos,
        msg: msg.into(),
    })
}

/// Splits on `*` outside parentheses, returning trimmed items with offsets.
fn split_items(text: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, b) in text.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                if depth == 0 {
                    return syntax(i, "unbalanced ')'");
                }
                depth -= 1;
            }
            b'*' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return syntax(text.len(), "unclosed '('");
    }
    out.push((start, &text[start..]));
    Ok(out
        .into_iter()
        .map(|(s, item)| {
            let lead = item.len() - item.trim_start().len();
            (s + lead, item.trim())
        })
        .collect())
}

fn parse_uint<T: std::str::FromStr>(pos: usize, s: &str, what: &str) -> Result<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return syntax(pos, format!("expected {what}"));
    }
    s.parse().or_else(|_| syntax(pos, format!("{what} out of range")))
}

/// Splits `base^exp` at the last `^` outside parentheses.
fn split_power(item: &str) -> (&str, Option<&str>) {
    let close = item.rfind(')').map_or(0, |i| i + 1);
    match item[close..].find('^') {
        Some(i) => (item[..close + i].trim_end(), Some(item[close + i + 1..].trim())),
        None => (item, None),
    }
}

fn parse_item(pos: usize, item: &str) -> Result<Item> {
    if item.is_empty() {
        return syntax(pos, "empty factor");
    }
    let (base, exp) = split_power(item);
    let exp_pos = pos + item.len() - exp.map_or(0, str::len);
    let unsigned_exp = |what: &str| -> Result<u64> {
        match exp {
            None => Ok(1),
            Some(e) if e.starts_with('-') => Err(Error::domain(format!(
                "negative {what} at offset {exp_pos}"
            ))),
            Some(e) => parse_uint(exp_pos, e, what),
        }
    };
    if let Some(k) = base.strip_prefix("Phi_") {
        let k: u64 = parse_uint(pos + 4, k, "index")?;
        let m = unsigned_exp("multiplicity")?;
        if k == 0 || m == 0 {
            return Err(Error::domain(format!("Phi_{k}^{m} at offset {pos}")));
        }
        Ok(Item::Phi(k, m))
    } else if let Some(k) = base.strip_prefix("C_") {
        let k: u64 = parse_uint(pos + 2, k, "index")?;
        let m: i64 = match exp {
            None => 1,
            Some(e) => match e.strip_prefix('-') {
                Some(d) => -parse_uint::<i64>(exp_pos + 1, d, "multiplicity")?,
                None => parse_uint(exp_pos, e, "multiplicity")?,
            },
        };
        if k == 0 || m == 0 {
            return Err(Error::domain(format!("C_{k}^{m} at offset {pos}")));
        }
        Ok(Item::C(k, m))
    } else if let Some(inner) = base.strip_prefix('(') {
        let Some(inner) = inner.strip_suffix(')') else {
            return syntax(pos, "expected ')'");
        };
        let poly: SparsePoly = inner.parse().map_err(|e| match e {
            Error::Syntax { pos: p, msg } => Error::Syntax { pos: pos + 1 + p, msg },
            other => other,
        })?;
        if poly.is_zero() {
            return Err(Error::domain("zero factor"));
        }
        let m = unsigned_exp("multiplicity")?;
        if poly.degree() == 0 {
            return Ok(Item::Content(poly.constant_term().pow(m as u32)));
        }
        Ok(Item::Block(poly, m))
    } else if base == "x" {
        Ok(Item::X(unsigned_exp("exponent")?))
    } else {
        if exp.is_some() {
            return syntax(exp_pos, "exponent on an integer content");
        }
        let digits = base.strip_prefix('-').unwrap_or(base);
        let value: BigInt = parse_uint(pos, digits, "a factor")?;
        if value == BigInt::from(0) {
            return Err(Error::domain("zero content"));
        }
        Ok(Item::Content(if base.starts_with('-') { -value } else { value }))
    }
}

/// Parses the factorization text form. Items using `Phi_` give a Φ-aware
/// value, items using `C_` a C-aware value, neither a plain one; mixing `Phi_`
/// and `C_` is rejected. Repeated entries are merged.
pub fn parse_factorization(text: &str) -> Result<AnyFactorization> {
    let mut content = BigInt::one();
    let mut x_power = 0u64;
    let mut phi: BTreeMap<u64, u64> = BTreeMap::new();
    let mut c: BTreeMap<u64, i64> = BTreeMap::new();
    let mut blocks: Vec<Factor> = Vec::new();
    let (mut saw_phi, mut saw_c) = (None, None);
    for (pos, item) in split_items(text)? {
        match parse_item(pos, item)? {
            Item::Content(v) => content *= v,
            Item::X(v) => x_power += v,
            Item::Phi(k, m) => {
                saw_phi.get_or_insert(pos);
                *phi.entry(k).or_default() += m;
            }
            Item::C(k, m) => {
                saw_c.get_or_insert(pos);
                *c.entry(k).or_default() += m;
            }
            Item::Block(poly, m) => match blocks.iter_mut().find(|f| f.poly == poly) {
                Some(f) => f.multiplicity += m,
                None => blocks.push(Factor::new(m, poly)),
            },
        }
    }
    if let (Some(a), Some(b)) = (saw_phi, saw_c) {
        return syntax(a.max(b), "cannot mix Phi_ and C_ factors");
    }
    super::sort_factors(&mut blocks);
    if saw_phi.is_some() {
        let phi_factors = phi
            .into_iter()
            .map(|(k, m)| PhiFactor::new(m, k))
            .collect::<Result<Vec<_>>>()?;
        return Ok(AnyFactorization::Phi(PhiAwareFactorization {
            phi_factors,
            other_factors: blocks,
            content,
            x_power,
        }));
    }
    if saw_c.is_some() {
        let c_factors = c
            .into_iter()
            .filter(|&(_, m)| m != 0)
            .map(|(k, m)| CFactor::new(m, k))
            .collect::<Result<Vec<_>>>()?;
        let cf = CAwareFactorization {
            c_factors,
            other_factors: blocks,
            content,
            x_power,
        };
        cf.validate()?;
        return Ok(AnyFactorization::C(cf));
    }
    if x_power > 0 {
        let x = SparsePoly::x();
        match blocks.iter_mut().find(|f| f.poly == x) {
            Some(f) => f.multiplicity += x_power,
            None => blocks.push(Factor::new(x_power, x)),
        }
        super::sort_factors(&mut blocks);
    }
    Ok(AnyFactorization::Plain(PlainFactorization {
        content,
        factors: blocks,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorrep::{factor_full, squarefree_decomposition, to_c_aware};

    fn p(s: &str) -> SparsePoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_examples() {
        let pf = factor_full(&p("x^105-1")).unwrap();
        assert_eq!(
            pf.to_string(),
            "Phi_1 * Phi_3 * Phi_5 * Phi_7 * Phi_15 * Phi_21 * Phi_35 * Phi_105"
        );
        assert_eq!(to_c_aware(&pf).unwrap().to_string(), "C_105");
        let pf = factor_full(&p("x^8+x^3+x^5+1")).unwrap();
        assert_eq!(pf.to_string(), "Phi_2^2 * Phi_6 * Phi_10");
        assert_eq!(
            to_c_aware(&pf).unwrap().to_string(),
            "C_6 * C_10 * C_3^-1 * C_5^-1"
        );
        let pf = factor_full(&p("-3*x^4+3*x^3")).unwrap();
        assert_eq!(pf.to_string(), "-3 * x^3 * Phi_1");
        let pf = factor_full(&p("x^2-x-1")).unwrap();
        assert_eq!(pf.to_string(), "(x^2-x-1)");
        let sq = squarefree_decomposition(&p("2*x^2+4*x+2")).unwrap();
        assert_eq!(sq.to_string(), "2 * (x+1)^2");
        assert_eq!(factor_full(&p("1")).unwrap().to_string(), "1");
    }

    #[test]
    fn parse_examples() {
        let AnyFactorization::C(cf) = parse_factorization("C_6 * C_3^-1").unwrap() else {
            panic!()
        };
        assert_eq!(cf.expand().unwrap(), p("x^3+1"));
        let f = parse_factorization("-3 * x^3 * Phi_1").unwrap();
        assert_eq!(f.expand().unwrap(), p("-3*x^4+3*x^3"));
        let f = parse_factorization("2 * (x + 1)^2 * (x^2-x-1)").unwrap();
        assert!(matches!(f, AnyFactorization::Plain(_)));
        assert_eq!(
            f.expand().unwrap(),
            p("x^2-x-1").mul(&p("x+1").pow(2)).scale(&2.into())
        );
        assert_eq!(parse_factorization("1").unwrap().expand().unwrap(), p("1"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_factorization("Phi_3 * C_3"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_factorization("Phi_"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_factorization("(x+1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_factorization("Phi_3 *"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_factorization("(x+)"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_factorization("Phi_3^-1"), Err(Error::Domain(_))));
        assert!(matches!(parse_factorization("C_1^-1"), Err(Error::NotAPolynomial(1))));
        assert!(matches!(parse_factorization("0"), Err(Error::Domain(_))));
    }

    #[test]
    fn round_trip_through_text() {
        for s in ["x^105-1", "x^8+x^5+x^3+1", "-6*x^7+6*x^2", "x^4+3*x^3-x+2"] {
            let pf = factor_full(&p(s)).unwrap();
            for text in [pf.to_string(), to_c_aware(&pf).unwrap().to_string()] {
                let parsed = parse_factorization(&text).unwrap();
                assert_eq!(parsed.expand().unwrap(), p(s), "{text}");
                assert_eq!(parsed.to_string(), text);
            }
        }
    }
}
