#![allow(dead_code)]

use cyclorep::cyclotomic::phi_poly;
use cyclorep::SparsePoly;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p(s: &str) -> SparsePoly {
    s.parse().unwrap()
}

/// Dense-ish random polynomial of degree at most `max_deg`.
pub fn random_poly(rng: &mut impl Rng, max_deg: u64, bound: i64) -> SparsePoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    SparsePoly::from_coeffs(&coeffs)
}

/// Random polynomial with a few terms and possibly large coefficients.
pub fn random_sparse(rng: &mut impl Rng, max_exp: u64, max_terms: usize) -> SparsePoly {
    let t = rng.gen_range(0..=max_terms);
    let terms: Vec<(u64, BigInt)> = (0..t)
        .map(|_| {
            let e = rng.gen_range(0..=max_exp);
            let bits = rng.gen_range(1..90u32);
            let mag = BigInt::from(rng.gen::<u128>() >> (128 - bits));
            (e, if rng.gen() { -mag } else { mag })
        })
        .collect();
    SparsePoly::from_terms(terms)
}

/// Random product of `Phi_k` with total degree at most `max_degree`,
/// returned with its `(k, multiplicity)` list.
pub fn random_cyclotomic_product(rng: &mut impl Rng, max_k: u64, max_degree: u64) -> (SparsePoly, Vec<(u64, u64)>) {
    let mut f = SparsePoly::one();
    let mut parts: Vec<(u64, u64)> = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let k = rng.gen_range(1..=max_k);
        let phi = phi_poly(k).unwrap();
        if f.degree() + phi.degree() > max_degree {
            continue;
        }
        f = f.mul(&phi);
        match parts.iter_mut().find(|(kk, _)| *kk == k) {
            Some(e) => e.1 += 1,
            None => parts.push((k, 1)),
        }
    }
    parts.sort();
    (f, parts)
}

/// Independent oracle: `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`,
/// built bottom-up by exact division.
pub fn phi_by_division(n_max: u64) -> Vec<SparsePoly> {
    let mut out = vec![SparsePoly::zero(); n_max as usize + 1];
    for n in 1..=n_max {
        let mut f = SparsePoly::binomial(n);
        for d in 1..n {
            if n % d == 0 {
                f = f.div_exact(&out[d as usize]).unwrap();
            }
        }
        out[n as usize] = f;
    }
    out
}
