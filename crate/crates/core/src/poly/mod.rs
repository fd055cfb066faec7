//! Exact univariate polynomials over the integers.
//!
//! [`SparsePoly`] is the working representation: a list of nonzero terms in
//! strictly descending exponent order. [`DensePoly`] stores every coefficient
//! from `x^0` up to the degree. Coefficients are arbitrary precision.

mod dense;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use dense::DensePoly;

/// Sparse polynomial: nonzero `(exponent, coefficient)` terms, exponents
/// strictly descending. The zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: Vec<(u64, BigInt)>,
}

/// Height, one-norm, squared two-norm and term count of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Norms {
    pub height: BigInt,
    pub one_norm: BigInt,
    pub two_norm_squared: BigInt,
    pub term_count: usize,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c * x^exp`.
    pub fn monomial(exp: u64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    /// `x^n - 1`; for `n = 0` this is the zero polynomial.
    pub fn binomial(n: u64) -> Self {
        Self::from_terms([(n, BigInt::one()), (0, -BigInt::one())])
    }

    /// Builds a canonical polynomial from arbitrary terms: like exponents are
    /// combined and zero coefficients dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(map: BTreeMap<u64, BigInt>) -> Self {
        Self {
            terms: map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Coefficients listed from `x^0` upward.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as u64, c.clone())))
    }

    /// Terms already in canonical order (strictly descending, nonzero).
    pub(crate) fn from_canonical_unchecked(terms: Vec<(u64, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms }
    }

    /// Validating constructor for terms claimed to be canonical.
    pub fn try_from_canonical(terms: Vec<(u64, BigInt)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(Error::Inconsistency("zero coefficient stored".into()));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::Inconsistency("exponents not strictly descending".into()));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(u64, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(u64, BigInt)> {
        self.terms
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.0)
    }

    /// Smallest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn valuation(&self) -> u64 {
        self.terms.last().map_or(0, |t| t.0)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.terms.first().map_or_else(BigInt::zero, |t| t.1.clone())
    }

    /// Coefficient of the lowest-order nonzero term.
    pub fn trailing_coeff(&self) -> BigInt {
        self.terms.last().map_or_else(BigInt::zero, |t| t.1.clone())
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.terms
            .binary_search_by(|t| exp.cmp(&t.0))
            .map_or_else(|_| BigInt::zero(), |i| self.terms[i].1.clone())
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: u64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, a)| (e + shift, a.clone())).collect(),
        }
    }

    /// Divides by `x^shift`, which must divide `self`.
    pub(crate) fn unshift(&self, shift: u64) -> Self {
        debug_assert!(self.is_zero() || self.valuation() >= shift);
        Self {
            terms: self.terms.iter().map(|(e, a)| (e - shift, a.clone())).collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (*e, sign(c))));
        Self { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    /// Product by heap merge of term products (Johnson's method).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Keep the heap over the shorter operand.
        let (a, b) = if self.terms.len() <= other.terms.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        let mut heap: BinaryHeap<(u64, std::cmp::Reverse<usize>, usize)> = a
            .iter()
            .enumerate()
            .map(|(i, (e, _))| (e + b[0].0, std::cmp::Reverse(i), 0))
            .collect();
        let mut out: Vec<(u64, BigInt)> = Vec::new();
        while let Some((exp, std::cmp::Reverse(i), j)) = heap.pop() {
            let prod = &a[i].1 * &b[j].1;
            match out.last_mut() {
                Some((e, c)) if *e == exp => *c += prod,
                _ => {
                    if matches!(out.last(), Some((_, c)) if c.is_zero()) {
                        out.pop();
                    }
                    out.push((exp, prod));
                }
            }
            if j + 1 < b.len() {
                heap.push((a[i].0 + b[j + 1].0, std::cmp::Reverse(i), j + 1));
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        Self { terms: out }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`. Fails with [`Error::Remainder`] when
    /// the division leaves a remainder (or needs non-integer coefficients).
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::domain("division by the zero polynomial"));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dexp, dlc) = (divisor.terms[0].0, &divisor.terms[0].1);
        let mut rem: BTreeMap<u64, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((&lexp, lc)) = rem.iter().next_back() {
            if lexp < dexp {
                break;
            }
            let (q, r) = lc.div_rem(dlc);
            if !r.is_zero() {
                break;
            }
            let shift = lexp - dexp;
            for (e, c) in &divisor.terms {
                let slot = rem.entry(e + shift).or_default();
                *slot -= &q * c;
                if slot.is_zero() {
                    rem.remove(&(e + shift));
                }
            }
            quotient.push((shift, q));
        }
        if rem.is_empty() {
            Ok(Self { terms: quotient })
        } else {
            Err(Error::Remainder(Self::from_map(rem)))
        }
    }

    /// `x^n f(1/x)` with `n = deg f`.
    pub fn reverse(&self) -> Self {
        let n = self.degree();
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (n - e, c.clone())).collect();
        terms.reverse();
        Self { terms }
    }

    /// `f(-x)`.
    pub fn negate_x(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// `f_e` with `f(x) = f_e(x^2) + x f_o(x^2)`.
    pub fn even_part(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e % 2 == 0)
                .map(|(e, c)| (e / 2, c.clone()))
                .collect(),
        }
    }

    /// `f_o` with `f(x) = f_e(x^2) + x f_o(x^2)`.
    pub fn odd_part(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e % 2 == 1)
                .map(|(e, c)| (e / 2, c.clone()))
                .collect(),
        }
    }

    /// Graeffe root-squaring `f_e^2 - x f_o^2`; satisfies `g(x^2) = f(x) f(-x)`.
    /// The leading sign is left as the formula produces it.
    pub fn graeffe(&self) -> Self {
        let fe = self.even_part();
        let fo = self.odd_part();
        fe.mul(&fe).sub(&fo.mul(&fo).shift(1))
    }

    /// `f(x^m)` for `m >= 1`.
    pub fn compose_power(&self, m: u64) -> Self {
        assert!(m >= 1, "compose_power needs m >= 1");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect(),
        }
    }

    pub fn norms(&self) -> Norms {
        let mut height = BigInt::zero();
        let mut one_norm = BigInt::zero();
        let mut two = BigInt::zero();
        for (_, c) in &self.terms {
            let a = c.abs();
            if a > height {
                height = a.clone();
            }
            two += &a * &a;
            one_norm += a;
        }
        Norms {
            height,
            one_norm,
            two_norm_squared: two,
            term_count: self.terms.len(),
        }
    }

    /// Largest absolute value of a coefficient.
    pub fn height(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, c)| (e - 1, c * BigInt::from(*e)))
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients; `content(0) = 0`.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `f / content(f)` normalised to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        self.content_and_primitive().1
    }

    /// `(c, p)` with `c * p = f`, `p` primitive with positive leading
    /// coefficient; `c` carries the sign. The zero polynomial gives `(0, 0)`.
    pub fn content_and_primitive(&self) -> (BigInt, Self) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        let p = Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a / &c)).collect(),
        };
        (c, p)
    }

    /// Primitive gcd over the integers with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Err(Error::domain("gcd(0, 0) is undefined")),
            (true, false) => Ok(other.primitive_part()),
            (false, true) => Ok(self.primitive_part()),
            (false, false) => {
                // Powers of x are handled directly, the rest through a
                // primitive pseudo-remainder sequence.
                let v = self.valuation().min(other.valuation());
                let a = DensePoly::from_sparse(&self.unshift(self.valuation()));
                let b = DensePoly::from_sparse(&other.unshift(other.valuation()));
                Ok(dense::primitive_prs_gcd(a, b).to_sparse().shift(v))
            }
        }
    }

    /// `f / gcd(f, f')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("square-free part of the zero polynomial"));
        }
        let p = self.primitive_part();
        if p.degree() == 0 {
            return Ok(p);
        }
        let g = p.gcd(&p.derivative())?;
        p.div_exact(&g)
    }

    pub fn eval_at(&self, x0: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut prev = None;
        for (e, c) in &self.terms {
            if let Some(pe) = prev {
                acc *= x0.pow((pe - e) as u32);
            }
            acc += c;
            prev = Some(*e);
        }
        if let Some(pe) = prev {
            acc *= x0.pow(pe as u32);
        }
        acc
    }

    pub fn to_dense(&self) -> DensePoly {
        DensePoly::from_sparse(self)
    }

    /// Orders by degree, then coefficient lists from the top down.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.degree();
            for e in (0..=n).rev() {
                let o = self.coeff(e).cmp(&other.coeff(e));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}

impl std::str::FromStr for SparsePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse_poly(s)
    }
}

/// Parses the polynomial text grammar.
pub fn parse_poly(text: &str) -> Result<SparsePoly> {
    text::parse_poly(text)
}

/// Canonical text form.
pub fn format_poly(f: &SparsePoly) -> String {
    text::format_poly(f)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                SparsePoly::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}
