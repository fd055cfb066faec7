mod common;

use common::{p, random_cyclotomic_product, random_poly, rng};
use cyclorep::cyclotomic::c_poly;
use cyclorep::factorrep::{
    factor_full, squarefree_decomposition, to_c_aware, to_phi_aware, to_plain, FactorRep,
};
use cyclorep::numtheory::divisor_count;
use cyclorep::SparsePoly;

fn random_input(r: &mut impl rand::Rng) -> SparsePoly {
    loop {
        let (c, _) = random_cyclotomic_product(r, 60, 60);
        let cof = random_poly(r, 8, 9);
        if !cof.is_zero() {
            return c.mul(&cof);
        }
    }
}

#[test]
fn factor_full_round_trips_and_vocabularies_agree() {
    let mut r = rng(21);
    for _ in 0..500 {
        let f = random_input(&mut r);
        let pf = factor_full(&f).unwrap();
        assert_eq!(pf.expand().unwrap(), f);
        let cf = to_c_aware(&pf).unwrap();
        assert_eq!(cf.expand().unwrap(), f);
        let back = to_phi_aware(&cf).unwrap();
        assert_eq!(back.expand().unwrap(), f);
        assert_eq!(back.phi_factors, pf.phi_factors);
        let plain = to_plain(&pf).unwrap();
        for rep in [&pf as &dyn FactorRep, &cf, &back, &plain] {
            assert_eq!(rep.degree().unwrap(), f.degree());
        }
        for k in [1, 2, 3, 4, 6, 12, 30] {
            let m = pf.multiplicity_of_phi(k).unwrap();
            assert_eq!(cf.multiplicity_of_phi(k).unwrap(), m);
            assert_eq!(plain.multiplicity_of_phi(k).unwrap(), m, "{f} k={k}");
        }
    }
}

#[test]
fn squarefree_contract() {
    let mut r = rng(22);
    for _ in 0..300 {
        let a = random_poly(&mut r, 4, 5);
        let b = random_poly(&mut r, 4, 5);
        let c = random_poly(&mut r, 3, 5);
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        let f = a.mul(&b.pow(2)).mul(&c.pow(3));
        let sq = squarefree_decomposition(&f).unwrap();
        assert_eq!(sq.expand().unwrap(), f);
        assert_eq!(sq.degree().unwrap(), f.degree());
        for (i, gi) in sq.factors.iter().enumerate() {
            assert_eq!(gi.poly.gcd(&gi.poly.derivative()).unwrap().degree(), 0);
            for gj in &sq.factors[i + 1..] {
                assert_eq!(gi.poly.gcd(&gj.poly).unwrap().degree(), 0);
                assert_ne!(gi.multiplicity, gj.multiplicity);
            }
        }
    }
}

#[test]
fn irreducible_count_of_binomials() {
    for n in 1..=300 {
        let pf = factor_full(&c_poly(n).unwrap()).unwrap();
        let count = pf.num_irreducible_factors().unwrap();
        assert!(count.is_exact());
        assert_eq!(count.total(), divisor_count(n).unwrap(), "{n}");
        assert_eq!(to_c_aware(&pf).unwrap().to_string(), format!("C_{n}"));
    }
}

#[test]
fn text_round_trip() {
    let mut r = rng(23);
    for _ in 0..200 {
        let f = random_input(&mut r).shift(r.gen_range(0..3)).scale(&(r.gen_range(1..5) * if r.gen() { 1 } else { -1 }).into());
        let pf = factor_full(&f).unwrap();
        for text in [
            pf.to_string(),
            to_c_aware(&pf).unwrap().to_string(),
            to_plain(&pf).unwrap().to_string(),
            squarefree_decomposition(&f).unwrap().to_string(),
        ] {
            let parsed = cyclorep::factorrep::parse_factorization(&text).unwrap();
            assert_eq!(parsed.expand().unwrap(), f, "{text}");
            assert_eq!(parsed.to_string(), text);
        }
    }
    assert_eq!(factor_full(&p("x^4-1")).unwrap().to_string(), "Phi_1 * Phi_2 * Phi_4");
}

use rand::Rng;
