mod common;

use common::{random_poly, random_sparse, rng};
use cyclorep::SparsePoly;
use num_bigint::BigInt;
use num_traits::Zero;

#[test]
fn graeffe_identity() {
    let mut r = rng(1);
    for _ in 0..500 {
        let f = random_poly(&mut r, 50, 99);
        let lhs = f.graeffe().compose_power(2);
        let rhs = f.mul(&f.negate_x());
        assert_eq!(lhs, rhs, "{f}");
        // pointwise at small integers
        for a in -3i64..=3 {
            let a = BigInt::from(a);
            assert_eq!(f.graeffe().eval_at(&(&a * &a)), f.eval_at(&a) * f.eval_at(&-&a));
        }
    }
}

#[test]
fn even_odd_split() {
    let mut r = rng(2);
    for _ in 0..500 {
        let f = random_poly(&mut r, 50, 99);
        let rebuilt = f.even_part().compose_power(2).add(&f.odd_part().compose_power(2).shift(1));
        assert_eq!(rebuilt, f);
    }
}

#[test]
fn involutions() {
    let mut r = rng(3);
    for _ in 0..500 {
        let f = random_poly(&mut r, 50, 99);
        if f.is_zero() || f.constant_term().is_zero() {
            continue;
        }
        assert_eq!(f.reverse().reverse(), f);
        assert_eq!(f.negate_x().negate_x(), f);
    }
}

#[test]
fn exact_division_inverts_multiplication() {
    let mut r = rng(4);
    for _ in 0..500 {
        let f = random_poly(&mut r, 30, 99);
        let g = random_poly(&mut r, 20, 99);
        if g.is_zero() {
            continue;
        }
        assert_eq!(f.mul(&g).div_exact(&g).unwrap(), f);
    }
    for _ in 0..200 {
        let f = random_sparse(&mut r, 300, 6);
        let g = random_sparse(&mut r, 300, 4);
        if g.is_zero() {
            continue;
        }
        assert_eq!(f.mul(&g).div_exact(&g).unwrap(), f);
    }
}

#[test]
fn dense_and_sparse_agree() {
    let mut r = rng(5);
    for _ in 0..500 {
        let f = random_poly(&mut r, 40, 1000);
        let g = random_poly(&mut r, 40, 1000);
        let dense = f.to_dense().mul(&g.to_dense()).to_sparse();
        assert_eq!(dense, f.mul(&g));
        assert_eq!(f.to_dense().add(&g.to_dense()).to_sparse(), f.add(&g));
        assert_eq!(f.to_dense().sub(&g.to_dense()).to_sparse(), f.sub(&g));
    }
}

#[test]
fn norm_inequalities() {
    let mut r = rng(6);
    for _ in 0..500 {
        let f = random_poly(&mut r, 50, 99);
        let n = f.norms();
        assert!(n.height <= n.one_norm);
        assert!(n.two_norm_squared <= &n.one_norm * &n.one_norm);
        assert_eq!(n.term_count, f.term_count());
    }
}

#[test]
fn text_round_trip() {
    let mut r = rng(7);
    for _ in 0..500 {
        let f = random_sparse(&mut r, 1000, 12);
        assert_eq!(f.to_string().parse::<SparsePoly>().unwrap(), f);
    }
}
