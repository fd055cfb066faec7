//! Integer number theory used throughout the crate: factorization by trial
//! division, divisors, the Möbius function, Euler's totient, the divisor
//! count, and recovery of `p, q` from `k = pq` and `phi(k)`.
//!
//! Inputs are `u64`; zero is rejected with [`Error::Domain`].

use std::fmt;

use crate::error::{Error, Result};

/// Prime factorization `n = prod p_i^e_i` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PrimeFactorization {
    pairs: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking every
    /// invariant.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        let mut last = 1;
        for &(p, e) in &pairs {
            if p <= last {
                return Err(Error::Inconsistency(format!(
                    "primes must be strictly increasing (got {p} after {last})"
                )));
            }
            if e == 0 {
                return Err(Error::Inconsistency(format!("zero exponent on prime {p}")));
            }
            if !is_prime_trial(p) {
                return Err(Error::Inconsistency(format!("{p} is not prime")));
            }
            last = p;
        }
        Ok(Self { pairs })
    }

    /// Builds a factorization from a list of primes with repetition, in any order.
    pub fn from_prime_list(primes: &[u64]) -> Result<Self> {
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        for p in sorted {
            match pairs.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => pairs.push((p, 1)),
            }
        }
        Self::from_pairs(pairs)
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Primes repeated according to their exponent, ascending (12 -> [2, 2, 3]).
    pub fn prime_list(&self) -> Vec<u64> {
        self.pairs
            .iter()
            .flat_map(|&(p, e)| std::iter::repeat(p).take(e as usize))
            .collect()
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.pairs.iter().map(|&(_, e)| e).sum()
    }

    /// The factored integer, or `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
            acc.checked_mul(p.checked_pow(e)?)
        })
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.pairs.iter().map(|&(p, _)| p).product()
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn divisor_count(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn totient(&self) -> u64 {
        self.pairs
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.pairs.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn check_positive(n: u64, op: &str) -> Result<()> {
    if n == 0 {
        Err(Error::domain(format!("{op}: argument must be >= 1")))
    } else {
        Ok(())
    }
}

/// Factors `n` by trial division.  `factorize(1)` is the empty factorization.
pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    check_positive(n, "factorize")?;
    let mut pairs = Vec::new();
    let mut m = n;
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(2, &mut m);
    push(3, &mut m);
    // 6k +- 1 wheel
    let mut d = 5u64;
    while d.saturating_mul(d) <= m {
        push(d, &mut m);
        push(d + 2, &mut m);
        d += 6;
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Ok(PrimeFactorization { pairs })
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

pub fn mobius(n: u64) -> Result<i8> {
    Ok(factorize(n)?.mobius())
}

pub fn totient(n: u64) -> Result<u64> {
    Ok(factorize(n)?.totient())
}

pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?.divisor_count())
}

/// Euler's totient of every integer in `0..=limit` (entry 0 is 0).
pub fn totients_up_to(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= limit {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

fn is_prime_trial(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.pairs == [(n, 1)]).unwrap_or(false)
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact integer square root by Newton iteration; `None` when `n` is not a
/// perfect square.
pub fn exact_isqrt(n: u128) -> Option<u128> {
    if n < 2 {
        return Some(n);
    }
    let mut x = n;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    (x * x == n).then_some(x)
}

/// Recovers distinct primes `p < q` from `k = pq` and `phi = (p-1)(q-1)`
/// using `p, q = (k + 1 - phi -+ sqrt(k^2 - 2k - 2k*phi + (phi-1)^2)) / 2`.
pub fn recover_pq(k: u64, phi: u64) -> Result<(u64, u64)> {
    let inconsistent = |why: &str| Err(Error::Inconsistency(format!("recover_pq({k}, {phi}): {why}")));
    let (k_i, phi_i) = (k as i128, phi as i128);
    let sum = k_i + 1 - phi_i;
    let disc = k_i * k_i - 2 * k_i - 2 * k_i * phi_i + (phi_i - 1) * (phi_i - 1);
    if sum <= 0 || disc < 0 {
        return inconsistent("no real solution");
    }
    let Some(root) = exact_isqrt(disc as u128) else {
        return inconsistent("discriminant is not a perfect square");
    };
    let root = root as i128;
    if (sum - root) % 2 != 0 || sum - root <= 0 {
        return inconsistent("roots are not positive integers");
    }
    let p = ((sum - root) / 2) as u64;
    let q = ((sum + root) / 2) as u64;
    if p == q || !is_prime_trial(p) || !is_prime_trial(q) {
        return inconsistent("recovered values are not distinct primes");
    }
    if p.checked_mul(q) != Some(k) || (p - 1) * (q - 1) != phi {
        return inconsistent("recovered primes do not reproduce the inputs");
    }
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_totient(n: u64) -> u64 {
        (1..=n).filter(|&j| num_integer::gcd(j, n) == 1).count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().pairs().is_empty());
        assert_eq!(factorize(105).unwrap().pairs(), &[(3, 1), (5, 1), (7, 1)]);
        assert_eq!(
            factorize(40755).unwrap().pairs(),
            &[(3, 1), (5, 1), (11, 1), (13, 1), (19, 1)]
        );
        assert_eq!(factorize(15015).unwrap().to_string(), "3*5*7*11*13");
        assert_eq!(factorize(12).unwrap().prime_list(), vec![2, 2, 3]);
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        let brute: Vec<u64> = (1..=12).filter(|d| 12 % d == 0).collect();
        assert_eq!(divisors(12).unwrap(), brute);
        assert_eq!(divisors(105).unwrap(), vec![1, 3, 5, 7, 15, 21, 35, 105]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn mobius_totient_count() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(105).unwrap(), 48);
        assert_eq!(totient(6545).unwrap(), 3840);
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(12).unwrap(), 6);
        assert_eq!(divisor_count(105).unwrap(), 8);
        assert!(mobius(0).is_err() && totient(0).is_err() && divisor_count(0).is_err());
    }

    #[test]
    fn totient_sieve_matches_brute_force() {
        let sieve = totients_up_to(500);
        for n in 1..=500u64 {
            assert_eq!(sieve[n as usize], brute_totient(n), "n={n}");
        }
    }

    #[test]
    fn recover_pq_examples() {
        assert_eq!(recover_pq(15, 8).unwrap(), (3, 5));
        assert_eq!(recover_pq(1363, 1288).unwrap(), (29, 47));
        assert!(matches!(recover_pq(12, 4), Err(Error::Inconsistency(_))));
        // p = q is rejected
        assert!(recover_pq(49, 36).is_err());
    }

    #[test]
    fn exact_isqrt_checks_squares() {
        assert_eq!(exact_isqrt(0), Some(0));
        assert_eq!(exact_isqrt(1), Some(1));
        assert_eq!(exact_isqrt(4), Some(2));
        assert_eq!(exact_isqrt(33), None);
        assert_eq!(exact_isqrt((1u128 << 60) * (1u128 << 60)), Some(1u128 << 60));
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5000u64 {
            assert_eq!(is_prime(n), is_prime_trial(n), "n={n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn prime_factorization_validation() {
        assert!(PrimeFactorization::from_pairs(vec![(2, 1), (2, 1)]).is_err());
        assert!(PrimeFactorization::from_pairs(vec![(4, 1)]).is_err());
        assert!(PrimeFactorization::from_pairs(vec![(3, 0)]).is_err());
        let f = PrimeFactorization::from_prime_list(&[3, 2, 2]).unwrap();
        assert_eq!(f.value(), Some(12));
        assert_eq!(f.big_omega(), 3);
    }
}
