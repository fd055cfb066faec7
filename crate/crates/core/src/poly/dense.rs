use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::SparsePoly;
use crate::error::{Error, Result};

/// Dense polynomial: `coeffs[i]` is the coefficient of `x^i`.
///
/// The zero polynomial is stored as degree 0 with the single coefficient 0;
/// otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl Default for DensePoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl DensePoly {
    pub fn zero() -> Self {
        Self {
            coeffs: vec![BigInt::zero()],
        }
    }

    /// Trims trailing zeros; an empty or all-zero list becomes the zero polynomial.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Self { coeffs }
    }

    /// Accepts only canonical coefficient lists.
    pub fn try_from_canonical(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::Inconsistency("empty coefficient list".into())),
            Some(c) if c.is_zero() && coeffs.len() > 1 => {
                Err(Error::Inconsistency("leading coefficient is zero".into()))
            }
            _ => Ok(Self { coeffs }),
        }
    }

    pub fn from_sparse(f: &SparsePoly) -> Self {
        let mut coeffs = vec![BigInt::zero(); f.degree() as usize + 1];
        for (e, c) in f.terms() {
            coeffs[*e as usize] = c.clone();
        }
        Self { coeffs }
    }

    pub fn to_sparse(&self) -> SparsePoly {
        SparsePoly::from_canonical_unchecked(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u64, c.clone()))
                .collect(),
        )
    }

    pub fn degree(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("dense polynomial is never empty")
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive(mut self) -> Self {
        let mut c = self.content();
        if c.is_zero() {
            return self;
        }
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        for a in &mut self.coeffs {
            *a /= &c;
        }
        self
    }

    /// Pseudo-remainder of `self` by `divisor`, up to a nonzero constant factor.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        if divisor.degree() == 0 {
            return Self::zero();
        }
        let n = divisor.coeffs.len();
        let lc = divisor.leading_coeff();
        let mut r = self.coeffs.clone();
        while r.len() >= n {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = r.len() + 1 - n;
            for a in r.iter_mut() {
                *a *= lc;
            }
            // the leading term cancels exactly and has been popped
            for (j, b) in divisor.coeffs[..n - 1].iter().enumerate() {
                r[shift + j] -= &lead * b;
            }
        }
        Self::from_coeffs(r)
    }
}

/// Gcd of two nonzero polynomials via a primitive remainder sequence.
pub(super) fn primitive_prs_gcd(a: DensePoly, b: DensePoly) -> DensePoly {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.primitive(), b.primitive())
    } else {
        (b.primitive(), a.primitive())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive();
    }
    a.primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(c: &[i64]) -> DensePoly {
        DensePoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn canonical_form() {
        assert_eq!(d(&[1, 2, 0, 0]).degree(), 1);
        assert!(d(&[0, 0]).is_zero());
        assert!(DensePoly::try_from_canonical(vec![BigInt::from(1), BigInt::zero()]).is_err());
        assert!(DensePoly::try_from_canonical(vec![BigInt::zero()]).is_ok());
    }

    #[test]
    fn dense_arith() {
        assert_eq!(d(&[-1, 1]).mul(&d(&[1, 1])), d(&[-1, 0, 1]));
        assert_eq!(d(&[1, 1]).sub(&d(&[1, 1])), DensePoly::zero());
        assert_eq!(d(&[1]).add(&d(&[0, 0, 3])), d(&[1, 0, 3]));
    }

    #[test]
    fn prs_gcd() {
        // (x-1)(x+2) and (x-1)(2x+3)
        let g = primitive_prs_gcd(d(&[-2, 1, 1]), d(&[-3, 1, 2]));
        assert_eq!(g, d(&[-1, 1]));
        // coprime
        assert_eq!(primitive_prs_gcd(d(&[1, 1]), d(&[-1, 1])), d(&[1]));
        // constant divisor
        assert_eq!(primitive_prs_gcd(d(&[4, 2]), d(&[6])), d(&[1]));
    }
}
