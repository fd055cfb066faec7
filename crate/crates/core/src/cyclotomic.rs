//! Cyclotomic polynomials: generation of `Phi_k` and `C_n = x^n - 1`,
//! recognition of cyclotomic factors, and the coefficient-height scan.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numtheory::{self, factorize, is_prime, mul_mod, pow_mod};
use crate::poly::SparsePoly;

/// `Phi_k` as dense coefficients (index = exponent), by the Möbius product
/// `prod_{d | k} (x^d - 1)^{mu(k/d)}`: multiply the `mu = +1` binomials, then
/// divide by the `mu = -1` binomials in ascending `d`.
fn phi_dense(k: u64) -> Result<Vec<BigInt>> {
    let fact = factorize(k)?;
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for d in fact.divisors() {
        match factorize(k / d)?.mobius() {
            1 => numer.push(d as usize),
            -1 => denom.push(d as usize),
            _ => {}
        }
    }
    let mut c = vec![BigInt::one()];
    for d in numer {
        // c * (x^d - 1)
        let mut next = vec![BigInt::zero(); c.len() + d];
        for (i, a) in c.iter().enumerate() {
            next[i + d] += a;
            next[i] -= a;
        }
        c = next;
    }
    for d in denom {
        // exact quotient by x^d - 1: q[i] = q[i - d] - c[i]
        let deg = c.len() - 1;
        if deg < d {
            return Err(Error::InvariantViolation(format!("Phi_{k}: degree underflow")));
        }
        let mut q: Vec<BigInt> = Vec::with_capacity(deg - d + 1);
        for i in 0..=deg - d {
            let mut v = -&c[i];
            if i >= d {
                v += &q[i - d];
            }
            q.push(v);
        }
        for i in deg - d + 1..=deg {
            let expected = if i >= d { q[i - d].clone() } else { BigInt::zero() };
            if c[i] != expected {
                return Err(Error::InvariantViolation(format!(
                    "Phi_{k}: division by x^{d}-1 is not exact"
                )));
            }
        }
        c = q;
    }
    Ok(c)
}

fn dense_to_sparse(c: &[BigInt]) -> SparsePoly {
    SparsePoly::from_terms(
        c.iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i as u64, a.clone())),
    )
}

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<SparsePoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<SparsePoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn phi_shared(k: u64) -> Result<Arc<SparsePoly>> {
    if k == 0 {
        return Err(Error::domain("Phi_k needs k >= 1"));
    }
    if let Some(p) = phi_cache().read().unwrap().get(&k) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(dense_to_sparse(&phi_dense(k)?));
    phi_cache().write().unwrap().insert(k, Arc::clone(&p));
    Ok(p)
}

/// The `k`-th cyclotomic polynomial `Phi_k`. Results are memoised.
pub fn phi_poly(k: u64) -> Result<SparsePoly> {
    Ok((*phi_shared(k)?).clone())
}

/// `C_n = x^n - 1`.
pub fn c_poly(n: u64) -> Result<SparsePoly> {
    if n == 0 {
        return Err(Error::domain("C_n needs n >= 1"));
    }
    Ok(SparsePoly::binomial(n))
}

/// Writes `f(x) = g(x^m)` with `m` maximal (the gcd of the exponents).
pub fn substitution_split(f: &SparsePoly) -> Result<(SparsePoly, u64)> {
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(Error::domain("substitution_split needs f != 0 and f(0) != 0"));
    }
    let m = f
        .terms()
        .iter()
        .map(|(e, _)| *e)
        .fold(0u64, num_integer::gcd)
        .max(1);
    let g = SparsePoly::from_canonical_unchecked(
        f.terms().iter().map(|(e, c)| (e / m, c.clone())).collect(),
    );
    Ok((g, m))
}

/// Multiset of irreducible cyclotomic factors: `(k, multiplicity)` ascending in `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CyclotomicDecomposition {
    pub parts: Vec<(u64, u64)>,
}

impl CyclotomicDecomposition {
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `sum multiplicity * phi(k)`.
    pub fn degree(&self) -> u64 {
        self.parts
            .iter()
            .map(|&(k, m)| m * numtheory::totient(k).unwrap())
            .sum()
    }

    pub fn expand(&self) -> Result<SparsePoly> {
        let mut acc = SparsePoly::one();
        for &(k, m) in &self.parts {
            acc = acc.mul(&phi_shared(k)?.pow(m));
        }
        Ok(acc)
    }
}

impl fmt::Display for CyclotomicDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("1");
        }
        for (i, &(k, m)) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "Phi_{k}")?;
            if m != 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Every `k` with `phi(k) <= max_degree`, ascending.
///
/// These are exactly the `k <= 2 max_degree^2` that pass the totient filter
/// (`phi(k) >= sqrt(k / 2)`); they are generated directly from prime powers
/// `p^e` with `p^(e-1) (p - 1) <= max_degree` instead of sieving that range.
pub fn candidate_orders(max_degree: u64) -> Vec<u64> {
    if max_degree == 0 {
        return Vec::new();
    }
    let primes: Vec<u64> = (2..=max_degree + 1).filter(|&p| is_prime(p)).collect();
    let mut out = Vec::new();
    fn walk(primes: &[u64], start: usize, k: u64, phi: u64, bound: u64, out: &mut Vec<u64>) {
        out.push(k);
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let mut phi_next = phi * (p - 1);
            if phi_next > bound {
                break;
            }
            let mut k_next = k * p;
            loop {
                walk(primes, i + 1, k_next, phi_next, bound, out);
                phi_next *= p;
                k_next *= p;
                if phi_next > bound {
                    break;
                }
            }
        }
    }
    walk(&primes, 0, 1, 1, max_degree, &mut out);
    out.sort_unstable();
    out
}

/// A prime `p = 1 (mod k)` together with an element of order exactly `k`
/// modulo `p`. `Phi_k` splits into linear factors mod `p`, so `Phi_k | f`
/// over the integers forces `f(omega) = 0 (mod p)`.
fn root_filter(k: u64) -> (u64, u64) {
    static CACHE: OnceLock<RwLock<HashMap<u64, (u64, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&v) = cache.read().unwrap().get(&k) {
        return v;
    }
    let mut m = (1u64 << 40) / k + 1;
    let p = loop {
        let p = m * k + 1;
        if is_prime(p) {
            break p;
        }
        m += 1;
    };
    let primes: Vec<u64> = factorize(k).unwrap().pairs().iter().map(|&(q, _)| q).collect();
    let omega = (2..)
        .map(|a| pow_mod(a, (p - 1) / k, p))
        .find(|&w| primes.iter().all(|&q| pow_mod(w, k / q, p) != 1))
        .unwrap();
    cache.write().unwrap().insert(k, (p, omega));
    (p, omega)
}

fn may_divide(f: &SparsePoly, k: u64) -> bool {
    let (p, omega) = root_filter(k);
    let pb = BigInt::from(p);
    let mut acc = 0u64;
    for (e, c) in f.terms() {
        let mut r = c % &pb;
        if r.is_negative() {
            r += &pb;
        }
        let term = mul_mod(r.to_u64().unwrap(), pow_mod(omega, e % k, p), p);
        acc = (acc + term) % p;
    }
    acc == 0
}

/// Divides `residual` by `Phi_k` as often as possible; returns the count.
fn divide_out(residual: &mut SparsePoly, k: u64, phi_k: u64) -> Result<u64> {
    let mut mult = 0;
    while residual.degree() >= phi_k && may_divide(residual, k) {
        match residual.div_exact(&*phi_shared(k)?) {
            Ok(q) => {
                *residual = q;
                mult += 1;
            }
            Err(Error::Remainder(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(mult)
}

fn peel_cyclotomic(residual: &mut SparsePoly) -> Result<CyclotomicDecomposition> {
    let mut parts = Vec::new();
    for k in candidate_orders(residual.degree()) {
        if residual.degree() == 0 {
            break;
        }
        let phi_k = numtheory::totient(k)?;
        let m = divide_out(residual, k, phi_k)?;
        if m > 0 {
            parts.push((k, m));
        }
    }
    Ok(CyclotomicDecomposition { parts })
}

/// Complete decomposition of a polynomial all of whose roots are roots of
/// unity. Fails with [`Error::NotPureCyclotomic`] carrying the residual
/// when some factor is not cyclotomic.
pub fn cyclotomic_decompose(f: &SparsePoly) -> Result<CyclotomicDecomposition> {
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(Error::domain("cyclotomic_decompose needs f != 0 and f(0) != 0"));
    }
    if !f.content().is_one() {
        return Err(Error::domain("cyclotomic_decompose needs content +-1"));
    }
    let mut residual = f.clone();
    let dec = peel_cyclotomic(&mut residual)?;
    if residual.degree() == 0 && residual.leading_coeff().abs().is_one() {
        Ok(dec)
    } else {
        Err(Error::NotPureCyclotomic(residual))
    }
}

/// `f = content * x^x_power * prod Phi_k^m * cofactor`, with the signed
/// content folded into `cofactor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicExtraction {
    pub decomposition: CyclotomicDecomposition,
    pub x_power: u64,
    pub cofactor: SparsePoly,
}

/// Splits off every cyclotomic factor and the power of `x`, leaving a cofactor
/// with no cyclotomic divisor.
pub fn extract_cyclotomic_factors(f: &SparsePoly) -> Result<CyclotomicExtraction> {
    if f.is_zero() {
        return Err(Error::domain("extract_cyclotomic_factors of the zero polynomial"));
    }
    let x_power = f.valuation();
    let (content, mut residual) = f.unshift(x_power).content_and_primitive();
    let decomposition = peel_cyclotomic(&mut residual)?;
    Ok(CyclotomicExtraction {
        decomposition,
        x_power,
        cofactor: residual.scale(&content),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuickVerdict {
    Cyclotomic,
    NotCyclotomic,
    Unknown,
}

impl fmt::Display for QuickVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuickVerdict::Cyclotomic => "cyclotomic",
            QuickVerdict::NotCyclotomic => "not-cyclotomic",
            QuickVerdict::Unknown => "unknown",
        })
    }
}

/// Graeffe-iteration test for "every root of `f` is a root of unity".
///
/// Repeated root-squaring of the square-free part permutes a set of roots of
/// unity, so some iterate recurs (possibly as its `x -> -x` image); roots off
/// the unit circle make the height grow past the binomial bound `2^deg`.
/// Neither may happen within the iteration cap, hence `Unknown`.
pub fn is_cyclotomic_quick(f: &SparsePoly) -> Result<QuickVerdict> {
    if f.is_zero() {
        return Err(Error::domain("is_cyclotomic_quick of the zero polynomial"));
    }
    if f.valuation() > 0 {
        // zero is a root
        return Ok(QuickVerdict::NotCyclotomic);
    }
    let g = f.primitive_part();
    let deg = g.degree();
    if deg == 0 {
        return Ok(QuickVerdict::Cyclotomic);
    }
    if !g.leading_coeff().abs().is_one() || !g.trailing_coeff().abs().is_one() {
        return Ok(QuickVerdict::NotCyclotomic);
    }
    let bound = BigInt::one() << deg;
    let cap = (64 - (deg - 1).leading_zeros()) as u64 + 2;
    let mut seen = vec![g.squarefree_part()?];
    for _ in 0..cap {
        let h = seen.last().unwrap().graeffe().squarefree_part()?;
        if h.height() > bound {
            return Ok(QuickVerdict::NotCyclotomic);
        }
        let mirror = h.negate_x().primitive_part();
        if seen.iter().any(|s| *s == h || *s == mirror) {
            return Ok(QuickVerdict::Cyclotomic);
        }
        seen.push(h);
    }
    Ok(QuickVerdict::Unknown)
}

/// A new maximum of `||Phi_k||_inf` met while scanning `k` upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightRecord {
    pub height: BigInt,
    pub first_k: u64,
    pub phi_of_k: u64,
}

/// Odd part of the radical of `k`. `Phi_k` and `Phi_{kernel(k)}` share the
/// same multiset of absolute coefficient values: `Phi_{k}(x) =
/// Phi_{rad k}(x^{k / rad k})` and `Phi_{2m}(x) = +-Phi_m(-x)` for odd `m`.
fn height_kernel(k: u64) -> u64 {
    let rad = factorize(k).unwrap().radical();
    if rad % 2 == 0 {
        rad / 2
    } else {
        rad
    }
}

/// `||Phi_k||_inf`.
pub fn phi_height(k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::domain("Phi_k needs k >= 1"));
    }
    let c = phi_dense(height_kernel(k))?;
    Ok(c.iter().map(|a| a.abs()).max().unwrap_or_default())
}

/// Scans `k = 1..=k_max` and reports each strict increase of `||Phi_k||_inf`.
pub fn height_records(k_max: u64) -> Result<Vec<HeightRecord>> {
    if k_max == 0 {
        return Err(Error::domain("height_records needs k_max >= 1"));
    }
    let kernels: Vec<u64> = (1..=k_max).map(height_kernel).collect();
    let mut unique = kernels.clone();
    unique.sort_unstable();
    unique.dedup();
    let heights: HashMap<u64, BigInt> = unique
        .par_iter()
        .map(|&m| phi_height(m).map(|h| (m, h)))
        .collect::<Result<_>>()?;
    let mut records: Vec<HeightRecord> = Vec::new();
    let mut best = BigInt::zero();
    for (k, kernel) in (1..=k_max).zip(kernels) {
        let h = &heights[&kernel];
        if *h > best {
            best = h.clone();
            records.push(HeightRecord {
                height: h.clone(),
                first_k: k,
                phi_of_k: numtheory::totient(k)?,
            });
        }
    }
    Ok(records)
}
