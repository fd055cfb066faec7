mod common;

use common::{random_poly, random_sparse, rng};
use cyclorep::codec::{
    ceil_log2, decode, encode, measured_bits, represent, EncodedBlob, InnerPoly, Layout,
    Representation, HEADER_LEN,
};
use cyclorep::cyclotomic::c_poly;
use cyclorep::factorrep::{
    to_c_aware, CAwareFactorization, CFactor, Factor, PhiAwareFactorization, PhiFactor,
    PlainFactorization,
};
use cyclorep::SparsePoly;
use num_bigint::BigInt;
use rand::Rng;

const N: u32 = 16;
const K: u32 = 8;

fn factor_poly(r: &mut impl Rng) -> SparsePoly {
    loop {
        let f = if r.gen() { random_poly(r, 12, 200) } else { random_sparse(r, 400, 5) };
        if f.degree() >= 2 {
            return f;
        }
    }
}

fn factors(r: &mut impl Rng) -> Vec<Factor> {
    (0..r.gen_range(0..4)).map(|_| Factor::new(r.gen_range(1..20), factor_poly(r))).collect()
}

fn content(r: &mut impl Rng) -> BigInt {
    match r.gen_range(0..3) {
        0 => BigInt::from(1),
        1 => BigInt::from(-1),
        _ => BigInt::from(r.gen_range(2..1_000_000i64)) * if r.gen() { 1 } else { -1 },
    }
}

fn phi_aware(r: &mut impl Rng) -> PhiAwareFactorization {
    let mut ks: Vec<u64> = (0..r.gen_range(0..6)).map(|_| r.gen_range(1..500)).collect();
    ks.sort();
    ks.dedup();
    PhiAwareFactorization {
        phi_factors: ks.into_iter().map(|k| PhiFactor::new(r.gen_range(1..9), k).unwrap()).collect(),
        other_factors: factors(r),
        content: content(r),
        x_power: r.gen_range(0..3),
    }
}

fn c_aware(r: &mut impl Rng) -> CAwareFactorization {
    let mut cf = to_c_aware(&phi_aware(r)).unwrap();
    if r.gen_bool(0.3) {
        let mut ks: Vec<u64> = cf.c_factors.iter().map(|c| c.k).collect();
        let extra = r.gen_range(1000..60000u64);
        if !ks.contains(&extra) {
            ks.push(extra);
            cf.c_factors.push(CFactor::new(r.gen_range(1..100), extra).unwrap());
        }
    }
    cf
}

fn random_value(r: &mut impl Rng, layout: Layout) -> Representation {
    match layout {
        Layout::Dense => Representation::Dense(random_poly(r, 60, i64::MAX).to_dense()),
        Layout::Sparse => Representation::Sparse(random_sparse(r, 60000, 20)),
        Layout::Plain => {
            let mut fs = factors(r);
            if r.gen() {
                fs.push(Factor::new(r.gen_range(1..5), SparsePoly::x()));
            }
            Representation::Plain(PlainFactorization { content: content(r), factors: fs })
        }
        Layout::PhiAware => Representation::PhiAware(phi_aware(r)),
        Layout::CAware => Representation::CAware(c_aware(r)),
    }
}

fn check_blob(blob: &EncodedBlob) {
    let padding = (blob.bytes.len() - HEADER_LEN) as u64 * 8 - blob.body_bits;
    assert!(padding < 8);
}

#[test]
fn fuzzed_round_trips() {
    let mut r = rng(31);
    for layout in [Layout::Dense, Layout::Sparse, Layout::Plain, Layout::PhiAware, Layout::CAware] {
        for i in 0..1000 {
            let v = random_value(&mut r, layout);
            let inner = if i % 2 == 0 { InnerPoly::Sparse } else { InnerPoly::Dense };
            let blob = encode(&v, N, K, inner).unwrap();
            check_blob(&blob);
            assert_eq!(decode(&blob.bytes).unwrap(), v, "{layout:?}");
            assert_eq!(measured_bits(&v, N, K, inner).unwrap(), blob.body_bits);
        }
    }
}

#[test]
fn corrupted_blobs_never_panic() {
    let mut r = rng(32);
    for layout in [Layout::Dense, Layout::Sparse, Layout::Plain, Layout::PhiAware, Layout::CAware] {
        for _ in 0..200 {
            let v = random_value(&mut r, layout);
            let original = encode(&v, N, K, InnerPoly::Sparse).unwrap().bytes;
            let mut bytes = original.clone();
            let i = r.gen_range(HEADER_LEN..bytes.len());
            bytes[i] ^= 1 << r.gen_range(0..8);
            if let Ok(back) = decode(&bytes) {
                let again = encode(&back, N, K, InnerPoly::Sparse).unwrap();
                assert_eq!(decode(&again.bytes).unwrap(), back);
            }
            let cut = r.gen_range(0..original.len());
            assert!(decode(&original[..cut]).is_err());
        }
    }
}

#[test]
fn monotone_in_widths() {
    let mut r = rng(33);
    for layout in [Layout::Dense, Layout::Sparse, Layout::Plain, Layout::PhiAware, Layout::CAware] {
        for _ in 0..50 {
            let v = random_value(&mut r, layout);
            let mut last = 0;
            for n in 16..=24 {
                let b = measured_bits(&v, n, K, InnerPoly::Sparse).unwrap();
                assert!(b >= last);
                last = b;
            }
            let mut last = 0;
            for kk in 8..=20 {
                let b = measured_bits(&v, N, kk, InnerPoly::Sparse).unwrap();
                assert!(b >= last);
                last = b;
            }
        }
    }
}

#[test]
fn table_two_shape() {
    for n in [105u64, 1365, 2805] {
        let f = c_poly(n).unwrap();
        let sparse = measured_bits(&Representation::Sparse(f.clone()), N, K, InnerPoly::Sparse).unwrap();
        assert!(sparse < 8 * ceil_log2(n) + K as u64 + 16, "{n}: {sparse}");
        let dense_factored = measured_bits(&represent(&f, Layout::Plain, false).unwrap(), N, K, InnerPoly::Dense).unwrap();
        assert!(dense_factored > n, "{n}: {dense_factored}");
    }
}

#[test]
fn x_to_the_k_plus_one_cost_is_flat() {
    let size = |k: u64| {
        let f = SparsePoly::binomial(k).add(&SparsePoly::constant(2));
        let v = represent(&f, Layout::CAware, false).unwrap();
        let Representation::CAware(cf) = &v else { unreachable!() };
        assert_eq!(cf.to_string(), format!("C_{} * C_{}^-1", 2 * k, k));
        measured_bits(&v, N, K, InnerPoly::Sparse).unwrap()
    };
    assert_eq!(size(3), size(5));
    assert_eq!(size(3), size(7));
    // one more prime factor in k and in 2k adds two KFactor fields
    assert_eq!(size(9), size(3) + 2 * N as u64);
}
