//! Factorization vocabularies.
//!
//! * [`PlainFactorization`]: content times `(multiplicity, polynomial)` pairs.
//! * [`PhiAwareFactorization`]: cyclotomic factors stored symbolically as
//!   `(multiplicity, k, phi(k))`, plus the remaining square-free blocks.
//! * [`CAwareFactorization`]: factors `x^k - 1` with signed multiplicities and
//!   the prime factorization of `k`, plus the remaining blocks.
//!
//! Content and the power of `x` are normalised out before factoring and kept
//! as explicit fields of the cyclotomic-aware forms.

mod text;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::{extract_cyclotomic_factors, phi_shared};
use crate::error::{Error, Result};
use crate::numtheory::{self, PrimeFactorization};
use crate::poly::SparsePoly;

pub use text::{parse_factorization, AnyFactorization};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub multiplicity: u64,
    pub poly: SparsePoly,
}

impl Factor {
    pub fn new(multiplicity: u64, poly: SparsePoly) -> Self {
        Self { multiplicity, poly }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainFactorization {
    pub content: BigInt,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiFactor {
    pub multiplicity: u64,
    pub k: u64,
    /// Stored `phi(k)`, the degree of `Phi_k`.
    pub degree: u64,
}

impl PhiFactor {
    pub fn new(multiplicity: u64, k: u64) -> Result<Self> {
        Ok(Self {
            multiplicity,
            k,
            degree: numtheory::totient(k)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiAwareFactorization {
    pub phi_factors: Vec<PhiFactor>,
    pub other_factors: Vec<Factor>,
    pub content: BigInt,
    pub x_power: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFactor {
    pub multiplicity: i64,
    pub k: u64,
    pub k_factorization: PrimeFactorization,
}

impl CFactor {
    pub fn new(multiplicity: i64, k: u64) -> Result<Self> {
        Ok(Self {
            multiplicity,
            k,
            k_factorization: numtheory::factorize(k)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CAwareFactorization {
    pub c_factors: Vec<CFactor>,
    pub other_factors: Vec<Factor>,
    pub content: BigInt,
    pub x_power: u64,
}

/// Irreducible-factor count. `other_blocks` are square-free blocks that are
/// not guaranteed irreducible; the count is exact only when it is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibleCount {
    pub cyclotomic: u64,
    pub other_blocks: u64,
    pub has_x: bool,
}

impl IrreducibleCount {
    pub fn total(&self) -> u64 {
        self.cyclotomic + self.other_blocks + self.has_x as u64
    }

    pub fn is_exact(&self) -> bool {
        self.other_blocks == 0
    }
}

/// Queries shared by every factorization vocabulary.
pub trait FactorRep {
    /// The represented polynomial.
    fn expand(&self) -> Result<SparsePoly>;

    /// Degree of the represented polynomial, computed from the stored fields.
    fn degree(&self) -> Result<u64>;

    fn num_irreducible_factors(&self) -> Result<IrreducibleCount>;

    /// Net multiplicity of `Phi_k` in the represented polynomial.
    fn multiplicity_of_phi(&self, k: u64) -> Result<u64>;
}

fn expand_factors(factors: &[Factor]) -> SparsePoly {
    factors
        .iter()
        .fold(SparsePoly::one(), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
}

fn factors_degree(factors: &[Factor]) -> u64 {
    factors.iter().map(|f| f.multiplicity * f.poly.degree()).sum()
}

fn sort_factors(factors: &mut [Factor]) {
    factors.sort_by(|a, b| {
        a.poly
            .canonical_cmp(&b.poly)
            .then(a.multiplicity.cmp(&b.multiplicity))
    });
}

/// How many times `Phi_k` divides `f`.
fn phi_valuation(f: &SparsePoly, k: u64) -> Result<u64> {
    let phi = phi_shared(k)?;
    let mut count = 0;
    let mut g = f.clone();
    while !g.is_zero() && g.degree() >= phi.degree() {
        match g.div_exact(&phi) {
            Ok(q) => {
                g = q;
                count += 1;
            }
            Err(Error::Remainder(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(count)
}

impl FactorRep for PlainFactorization {
    fn expand(&self) -> Result<SparsePoly> {
        Ok(expand_factors(&self.factors).scale(&self.content))
    }

    fn degree(&self) -> Result<u64> {
        Ok(factors_degree(&self.factors))
    }

    fn num_irreducible_factors(&self) -> Result<IrreducibleCount> {
        let x = SparsePoly::x();
        let has_x = self.factors.iter().any(|f| f.poly == x);
        Ok(IrreducibleCount {
            cyclotomic: 0,
            other_blocks: self.factors.len() as u64 - has_x as u64,
            has_x,
        })
    }

    fn multiplicity_of_phi(&self, k: u64) -> Result<u64> {
        let mut total = 0;
        for f in &self.factors {
            total += f.multiplicity * phi_valuation(&f.poly, k)?;
        }
        Ok(total)
    }
}

impl PhiAwareFactorization {
    /// Checks the stored degrees, distinctness of `k` and positivity of
    /// multiplicities.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for p in &self.phi_factors {
            if p.multiplicity == 0 {
                return Err(Error::Inconsistency(format!("Phi_{} has multiplicity 0", p.k)));
            }
            if numtheory::totient(p.k)? != p.degree {
                return Err(Error::Inconsistency(format!(
                    "Phi_{} stored with degree {}",
                    p.k, p.degree
                )));
            }
            if !seen.insert(p.k) {
                return Err(Error::Inconsistency(format!("Phi_{} listed twice", p.k)));
            }
        }
        validate_others(&self.other_factors)
    }
}

fn validate_others(factors: &[Factor]) -> Result<()> {
    for f in factors {
        if f.multiplicity == 0 || f.poly.degree() == 0 {
            return Err(Error::Inconsistency(format!(
                "factor ({})^{} must be nonconstant with positive multiplicity",
                f.poly, f.multiplicity
            )));
        }
    }
    Ok(())
}

impl FactorRep for PhiAwareFactorization {
    fn expand(&self) -> Result<SparsePoly> {
        let mut acc = expand_factors(&self.other_factors);
        for p in &self.phi_factors {
            acc = acc.mul(&phi_shared(p.k)?.pow(p.multiplicity));
        }
        Ok(acc.shift(self.x_power).scale(&self.content))
    }

    fn degree(&self) -> Result<u64> {
        let phi: u64 = self.phi_factors.iter().map(|p| p.multiplicity * p.degree).sum();
        Ok(phi + factors_degree(&self.other_factors) + self.x_power)
    }

    fn num_irreducible_factors(&self) -> Result<IrreducibleCount> {
        Ok(IrreducibleCount {
            cyclotomic: self.phi_factors.len() as u64,
            other_blocks: self.other_factors.len() as u64,
            has_x: self.x_power > 0,
        })
    }

    fn multiplicity_of_phi(&self, k: u64) -> Result<u64> {
        Ok(self
            .phi_factors
            .iter()
            .find(|p| p.k == k)
            .map_or(0, |p| p.multiplicity))
    }
}

impl CAwareFactorization {
    /// Net `Phi_d` multiplicities implied by the `C` entries.
    fn net_phi(&self) -> Result<BTreeMap<u64, i128>> {
        let mut net: BTreeMap<u64, i128> = BTreeMap::new();
        for c in &self.c_factors {
            for d in c.k_factorization.divisors() {
                *net.entry(d).or_default() += c.multiplicity as i128;
            }
        }
        if let Some((&d, _)) = net.iter().find(|(_, &m)| m < 0) {
            return Err(Error::NotAPolynomial(d));
        }
        net.retain(|_, m| *m != 0);
        Ok(net)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for c in &self.c_factors {
            if c.multiplicity == 0 {
                return Err(Error::Inconsistency(format!("C_{} has multiplicity 0", c.k)));
            }
            if c.k_factorization.value() != Some(c.k) {
                return Err(Error::Inconsistency(format!(
                    "C_{} stored with factorization {}",
                    c.k, c.k_factorization
                )));
            }
            if !seen.insert(c.k) {
                return Err(Error::Inconsistency(format!("C_{} listed twice", c.k)));
            }
        }
        validate_others(&self.other_factors)?;
        self.net_phi().map(|_| ())
    }
}

impl FactorRep for CAwareFactorization {
    fn expand(&self) -> Result<SparsePoly> {
        self.net_phi()?;
        let mut acc = expand_factors(&self.other_factors);
        for c in self.c_factors.iter().filter(|c| c.multiplicity > 0) {
            acc = acc.mul(&SparsePoly::binomial(c.k).pow(c.multiplicity as u64));
        }
        for c in self.c_factors.iter().filter(|c| c.multiplicity < 0) {
            let divisor = SparsePoly::binomial(c.k);
            for _ in 0..c.multiplicity.unsigned_abs() {
                acc = acc.div_exact(&divisor).map_err(|_| {
                    Error::InvariantViolation(format!("C_{} does not divide the numerator", c.k))
                })?;
            }
        }
        Ok(acc.shift(self.x_power).scale(&self.content))
    }

    fn degree(&self) -> Result<u64> {
        self.net_phi()?;
        let c: i128 = self
            .c_factors
            .iter()
            .map(|c| c.multiplicity as i128 * c.k as i128)
            .sum();
        Ok(c as u64 + factors_degree(&self.other_factors) + self.x_power)
    }

    fn num_irreducible_factors(&self) -> Result<IrreducibleCount> {
        Ok(IrreducibleCount {
            cyclotomic: self.net_phi()?.len() as u64,
            other_blocks: self.other_factors.len() as u64,
            has_x: self.x_power > 0,
        })
    }

    fn multiplicity_of_phi(&self, k: u64) -> Result<u64> {
        Ok(self.net_phi()?.get(&k).map_or(0, |&m| m as u64))
    }
}

/// Square-free decomposition `f = content * prod g_i^i` (Yun's algorithm
/// over the integers with primitive gcds). Factors are sorted by degree,
/// then coefficients.
pub fn squarefree_decomposition(f: &SparsePoly) -> Result<PlainFactorization> {
    if f.is_zero() {
        return Err(Error::domain("square-free decomposition of the zero polynomial"));
    }
    let (content, pp) = f.content_and_primitive();
    let mut factors = Vec::new();
    if pp.degree() > 0 {
        let dp = pp.derivative();
        let a0 = pp.gcd(&dp)?;
        let mut b = pp.div_exact(&a0)?;
        let mut c = dp.div_exact(&a0)?;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d)?;
            let b_next = b.div_exact(&a)?;
            c = d.div_exact(&a)?;
            d = c.sub(&b_next.derivative());
            if a.degree() > 0 {
                factors.push(Factor::new(i, a));
            }
            b = b_next;
            i += 1;
        }
    }
    sort_factors(&mut factors);
    Ok(PlainFactorization { content, factors })
}

/// Cyclotomic factors as `Phi_k` triples; the remainder as square-free blocks.
pub fn factor_full(f: &SparsePoly) -> Result<PhiAwareFactorization> {
    let ex = extract_cyclotomic_factors(f)?;
    let (content, cofactor) = ex.cofactor.content_and_primitive();
    let sqf = squarefree_decomposition(&cofactor)?;
    debug_assert!(sqf.content.is_one());
    let phi_factors = ex
        .decomposition
        .parts
        .iter()
        .map(|&(k, m)| PhiFactor::new(m, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiAwareFactorization {
        phi_factors,
        other_factors: sqf.factors,
        content,
        x_power: ex.x_power,
    })
}

/// Rewrites a Φ-aware factorization with every `Phi_k` expanded.
pub fn to_plain(pf: &PhiAwareFactorization) -> Result<PlainFactorization> {
    let mut factors = pf.other_factors.clone();
    if pf.x_power > 0 {
        factors.push(Factor::new(pf.x_power, SparsePoly::x()));
    }
    for p in &pf.phi_factors {
        factors.push(Factor::new(p.multiplicity, phi_shared(p.k)?.as_ref().clone()));
    }
    sort_factors(&mut factors);
    Ok(PlainFactorization {
        content: pf.content.clone(),
        factors,
    })
}

/// Φ-aware to C-aware.
///
/// Complete divisor-closed groups `{Phi_d : d | k}` are collected into a
/// single `C_k`, scanning `k` in descending order and taking the largest
/// common multiplicity. Every remaining `Phi_k` becomes
/// `prod_{d | k} C_d^{mu(k/d)}`; net multiplicities are summed per `d`.
pub fn to_c_aware(pf: &PhiAwareFactorization) -> Result<CAwareFactorization> {
    let mut remaining: BTreeMap<u64, u64> = BTreeMap::new();
    for p in &pf.phi_factors {
        *remaining.entry(p.k).or_default() += p.multiplicity;
    }
    let mut net: BTreeMap<u64, i64> = BTreeMap::new();
    let ks: Vec<u64> = remaining.keys().rev().copied().collect();
    for k in ks {
        let divs = numtheory::divisors(k)?;
        let group = divs
            .iter()
            .map(|d| remaining.get(d).copied().unwrap_or(0))
            .min()
            .unwrap_or(0);
        if group == 0 {
            continue;
        }
        for d in &divs {
            let m = remaining.get_mut(d).unwrap();
            *m -= group;
            if *m == 0 {
                remaining.remove(d);
            }
        }
        *net.entry(k).or_default() += group as i64;
    }
    for (&k, &m) in &remaining {
        for d in numtheory::divisors(k)? {
            let mu = numtheory::mobius(k / d)?;
            if mu != 0 {
                *net.entry(d).or_default() += mu as i64 * m as i64;
            }
        }
    }
    let c_factors = net
        .into_iter()
        .filter(|&(_, m)| m != 0)
        .map(|(k, m)| CFactor::new(m, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(CAwareFactorization {
        c_factors,
        other_factors: pf.other_factors.clone(),
        content: pf.content.clone(),
        x_power: pf.x_power,
    })
}

/// C-aware to Φ-aware, using the stored factorizations of each `k`.
pub fn to_phi_aware(cf: &CAwareFactorization) -> Result<PhiAwareFactorization> {
    let phi_factors = cf
        .net_phi()?
        .into_iter()
        .map(|(d, m)| PhiFactor::new(m as u64, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiAwareFactorization {
        phi_factors,
        other_factors: cf.other_factors.clone(),
        content: cf.content.clone(),
        x_power: cf.x_power,
    })
}

impl Default for PlainFactorization {
    fn default() -> Self {
        Self {
            content: BigInt::one(),
            factors: Vec::new(),
        }
    }
}

impl Default for PhiAwareFactorization {
    fn default() -> Self {
        Self {
            phi_factors: Vec::new(),
            other_factors: Vec::new(),
            content: BigInt::one(),
            x_power: 0,
        }
    }
}

impl Default for CAwareFactorization {
    fn default() -> Self {
        Self {
            c_factors: Vec::new(),
            other_factors: Vec::new(),
            content: BigInt::one(),
            x_power: 0,
        }
    }
}
