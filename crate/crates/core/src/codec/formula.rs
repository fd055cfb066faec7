//! Closed-form size estimates, with `log2` replaced by its ceiling.

use crate::error::{Error, Result};
use crate::numtheory;

/// Vocabulary rows of the size tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableVocab {
    Dense,
    Sparse,
    Phi,
    C,
}

impl TableVocab {
    pub const ALL: [TableVocab; 4] = [Self::Dense, Self::Sparse, Self::Phi, Self::C];

    pub fn label(self) -> &'static str {
        match self {
            Self::Dense => "dense",
            Self::Sparse => "sparse",
            Self::Phi => "phi",
            Self::C => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Expanded,
    SquareFree,
    Factored,
}

impl Form {
    pub const ALL: [Form; 3] = [Self::Expanded, Self::SquareFree, Self::Factored];

    pub fn label(self) -> &'static str {
        match self {
            Self::Expanded => "expanded",
            Self::SquareFree => "square-free",
            Self::Factored => "factored",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeFormula {
    /// Dense polynomial: `(k+1)(n+1) + log2 k + log2 n`.
    Dense { n: u64, k: u64 },
    /// Sparse polynomial: `log2 n + t(k + 1 + log2 n)`.
    Sparse { n: u64, t: u64, k: u64 },
    /// Factorization overhead with `f` factors: `(f+1) log2 n`.
    FactorOverhead { n: u64, f: u64 },
    /// Cost of `l` symbolic `Phi_k` entries: `(3l+1) log2 n`.
    PhiEntries { n: u64, l: u64 },
    /// Cell of the `x^n - 1` table.
    CyclotomicCell { n: u64, vocab: TableVocab, form: Form },
    /// Cell of the `(x^p - 1)(x^q - 1)` table, with `n = p + q`.
    TwoPrimeCell { p: u64, q: u64, vocab: TableVocab, form: Form },
}

/// `ceil(log2 x)` for `x >= 1`.
pub fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}

fn positive(name: &str, v: u64) -> Result<u64> {
    if v == 0 {
        Err(Error::domain(format!("parameter {name} must be positive")))
    } else {
        Ok(v)
    }
}

/// `n^(1 + ln 2 / ln ln n) * log2 e`, rounded up. Needs `n >= 3`.
fn dense_phi_asymptotic(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::domain("asymptotic cell needs n >= 3"));
    }
    let nf = n as f64;
    let exponent = 1.0 + std::f64::consts::LN_2 / nf.ln().ln();
    Ok((nf.powf(exponent) * std::f64::consts::LOG2_E).ceil() as u64)
}

fn cyclotomic_cell(n: u64, vocab: TableVocab, form: Form) -> Result<u64> {
    let l = ceil_log2(positive("n", n)?);
    Ok(match (vocab, form) {
        (TableVocab::Dense, Form::Expanded) => 2 * (n + 1) + l,
        (TableVocab::Dense | TableVocab::Sparse, _) if form != Form::Expanded => {
            dense_phi_asymptotic(n)?
        }
        (_, Form::Expanded) => 3 * l,
        (TableVocab::Phi, _) => (2 * numtheory::divisor_count(n)? + 1) * l,
        (TableVocab::C, _) => l,
        _ => unreachable!(),
    })
}

fn two_prime_cell(p: u64, q: u64, vocab: TableVocab, form: Form) -> Result<u64> {
    if !numtheory::is_prime(p) || !numtheory::is_prime(q) || p == q {
        return Err(Error::domain(format!("{p} and {q} must be distinct primes")));
    }
    let n = p + q;
    let l = ceil_log2(n);
    Ok(match (vocab, form) {
        (TableVocab::Dense, Form::Expanded) => 2 * (n + 1) + l,
        (TableVocab::Dense, Form::SquareFree) => (1 + l) * (n + 2) + 4 * l,
        (TableVocab::Dense, Form::Factored) => 2 * (n + 3) + 6 * l,
        (TableVocab::Sparse, Form::SquareFree) => (2 * n + 2) * l,
        (TableVocab::Sparse, Form::Factored) => (n + 10) * l,
        (_, Form::Expanded) => 4 * l,
        (TableVocab::Phi, _) => 6 * l,
        (TableVocab::C, _) => 2 * l,
    })
}

/// Evaluates a closed-form size estimate in bits.
pub fn paper_size_bits(formula: SizeFormula) -> Result<u64> {
    match formula {
        SizeFormula::Dense { n, k } => {
            Ok((k + 1) * (n + 1) + ceil_log2(positive("k", k)?) + ceil_log2(positive("n", n)?))
        }
        SizeFormula::Sparse { n, t, k } => {
            let l = ceil_log2(positive("n", n)?);
            Ok(l + t * (k + 1 + l))
        }
        SizeFormula::FactorOverhead { n, f } => Ok((f + 1) * ceil_log2(positive("n", n)?)),
        SizeFormula::PhiEntries { n, l } => Ok((3 * l + 1) * ceil_log2(positive("n", n)?)),
        SizeFormula::CyclotomicCell { n, vocab, form } => cyclotomic_cell(n, vocab, form),
        SizeFormula::TwoPrimeCell { p, q, vocab, form } => two_prime_cell(p, q, vocab, form),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let brute = |x: u64| (0..64).find(|&e| 1u128 << e >= x as u128).unwrap();
        for x in 1..5000 {
            assert_eq!(ceil_log2(x), brute(x), "{x}");
        }
        assert_eq!(ceil_log2(u64::MAX), 64);
    }

    #[test]
    fn examples() {
        assert_eq!(paper_size_bits(SizeFormula::Dense { n: 105, k: 1 }).unwrap(), 219);
        let c = |n, vocab, form| paper_size_bits(SizeFormula::CyclotomicCell { n, vocab, form }).unwrap();
        assert_eq!(c(105, TableVocab::Sparse, Form::Expanded), 21);
        assert_eq!(c(105, TableVocab::Phi, Form::Factored), 17 * 7);
        assert_eq!(c(105, TableVocab::C, Form::Factored), 7);
        assert_eq!(
            c(105, TableVocab::Dense, Form::SquareFree),
            c(105, TableVocab::Dense, Form::Factored)
        );
        let t = |vocab, form| paper_size_bits(SizeFormula::TwoPrimeCell { p: 5, q: 7, vocab, form }).unwrap();
        assert_eq!(t(TableVocab::Phi, Form::SquareFree), 24);
        assert_eq!(t(TableVocab::Phi, Form::Factored), 24);
        assert_eq!(t(TableVocab::Sparse, Form::Factored), 22 * 4);
        assert_eq!(t(TableVocab::Dense, Form::SquareFree), 5 * 14 + 16);
        assert_eq!(paper_size_bits(SizeFormula::Sparse { n: 105, t: 2, k: 1 }).unwrap(), 7 + 2 * 9);
        assert_eq!(paper_size_bits(SizeFormula::PhiEntries { n: 105, l: 8 }).unwrap(), 25 * 7);
    }

    #[test]
    fn asymptotic_cell() {
        // 105^(1 + ln2/lnln105) * log2(e), evaluated independently
        let n = 105f64;
        let expected = (n.powf(1.0 + 2f64.ln() / n.ln().ln()) / 2f64.ln()).ceil() as u64;
        assert_eq!(dense_phi_asymptotic(105).unwrap(), expected);
        assert!(expected > 105);
    }

    #[test]
    fn domain_errors() {
        assert!(paper_size_bits(SizeFormula::Sparse { n: 0, t: 1, k: 1 }).is_err());
        assert!(paper_size_bits(SizeFormula::CyclotomicCell {
            n: 2,
            vocab: TableVocab::Dense,
            form: Form::Factored
        })
        .is_err());
        assert!(paper_size_bits(SizeFormula::TwoPrimeCell {
            p: 4,
            q: 7,
            vocab: TableVocab::C,
            form: Form::Factored
        })
        .is_err());
    }
}
