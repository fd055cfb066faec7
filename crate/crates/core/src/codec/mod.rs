//! Packed binary encodings of polynomials and factorizations.
//!
//! A blob is a 7-byte header followed by an MSB-first bit stream padded with
//! zero bits to a byte boundary:
//!
//! | bytes | field                                                        |
//! |-------|--------------------------------------------------------------|
//! | 0..2  | magic `"CP"`                                                 |
//! | 2     | version, `1`                                                 |
//! | 3     | layout: 0 dense, 1 sparse, 2 plain, 3 Φ-aware, 4 C-aware     |
//! | 4     | inner polynomial layout for factors: 0 dense, 1 sparse       |
//! | 5     | `N`, width of counts, degrees and indices (1..=63)           |
//! | 6     | `K`, width of the coefficient-size field `k` (1..=63)        |
//!
//! Coefficients are `(k+1)`-bit two's complement. `k` is written once per
//! outermost structure; for factorizations it opens the trailing factor
//! block and bounds every nested polynomial. C-aware multiplicities are
//! `(N+1)`-bit two's complement.
//!
//! Content other than 1 is stored as a degree-0 factor of multiplicity 1 at
//! the head of the factor block. In the cyclotomic-aware layouts a power of
//! `x` is stored next, as the factor `x` with multiplicity equal to the power.

mod bits;
mod formula;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use bits::{BitReader, BitWriter};
pub use formula::{ceil_log2, paper_size_bits, Form, SizeFormula, TableVocab};

use crate::error::{Error, Result};
use crate::factorrep::{
    factor_full, squarefree_decomposition, to_c_aware, to_plain, CAwareFactorization, CFactor,
    Factor, FactorRep, PhiAwareFactorization, PhiFactor, PlainFactorization,
};
use crate::numtheory::PrimeFactorization;
use crate::poly::{DensePoly, SparsePoly};

pub const MAGIC: [u8; 2] = *b"CP";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layout {
    Dense = 0,
    Sparse = 1,
    Plain = 2,
    PhiAware = 3,
    CAware = 4,
}

impl Layout {
    fn from_tag(tag: u8) -> Result<Self> {
        Ok(match tag {
            0 => Self::Dense,
            1 => Self::Sparse,
            2 => Self::Plain,
            3 => Self::PhiAware,
            4 => Self::CAware,
            _ => return Err(Error::malformed(format!("unknown layout tag {tag}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Dense => "dense",
            Self::Sparse => "sparse",
            Self::Plain => "plain",
            Self::PhiAware => "phi",
            Self::CAware => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InnerPoly {
    Dense = 0,
    #[default]
    Sparse = 1,
}

impl InnerPoly {
    fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            0 => Ok(Self::Dense),
            1 => Ok(Self::Sparse),
            _ => Err(Error::malformed(format!("unknown inner polynomial tag {tag}"))),
        }
    }
}

/// A value in any of the encodable vocabularies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Dense(DensePoly),
    Sparse(SparsePoly),
    Plain(PlainFactorization),
    PhiAware(PhiAwareFactorization),
    CAware(CAwareFactorization),
}

impl Representation {
    pub fn layout(&self) -> Layout {
        match self {
            Self::Dense(_) => Layout::Dense,
            Self::Sparse(_) => Layout::Sparse,
            Self::Plain(_) => Layout::Plain,
            Self::PhiAware(_) => Layout::PhiAware,
            Self::CAware(_) => Layout::CAware,
        }
    }

    pub fn expand(&self) -> Result<SparsePoly> {
        match self {
            Self::Dense(d) => Ok(d.to_sparse()),
            Self::Sparse(s) => Ok(s.clone()),
            Self::Plain(p) => p.expand(),
            Self::PhiAware(p) => p.expand(),
            Self::CAware(c) => c.expand(),
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Dense(d) => d.to_sparse().fmt(f),
            Self::Sparse(s) => s.fmt(f),
            Self::Plain(p) => p.fmt(f),
            Self::PhiAware(p) => p.fmt(f),
            Self::CAware(c) => c.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlobHeader {
    pub layout: Layout,
    pub inner: InnerPoly,
    pub n_bits: u8,
    pub k_bits: u8,
}

impl BlobHeader {
    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        [
            MAGIC[0],
            MAGIC[1],
            VERSION,
            self.layout as u8,
            self.inner as u8,
            self.n_bits,
            self.k_bits,
        ]
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::malformed(format!(
                "blob of {} bytes is shorter than the header",
                bytes.len()
            )));
        }
        if bytes[..2] != MAGIC {
            return Err(Error::malformed(format!("bad magic {:02x?}", &bytes[..2])));
        }
        if bytes[2] != VERSION {
            return Err(Error::malformed(format!("unsupported version {}", bytes[2])));
        }
        let layout = Layout::from_tag(bytes[3])?;
        let inner = InnerPoly::from_tag(bytes[4])?;
        for (name, v) in [("N", bytes[5]), ("K", bytes[6])] {
            if !(1..=63).contains(&v) {
                return Err(Error::malformed(format!("{name} = {v} outside 1..=63")));
            }
        }
        Ok(Self {
            layout,
            inner,
            n_bits: bytes[5],
            k_bits: bytes[6],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedBlob {
    pub header: BlobHeader,
    /// Body bits before padding.
    pub body_bits: u64,
    /// Header and padded body.
    pub bytes: Vec<u8>,
}

impl EncodedBlob {
    pub fn body(&self) -> &[u8] {
        &self.bytes[HEADER_LEN..]
    }
}

/// Smallest `k` such that `c` fits in `(k+1)`-bit two's complement.
pub fn coefficient_bits(c: &BigInt) -> u64 {
    if c.is_negative() {
        (-c - 1u32).bits()
    } else {
        c.bits()
    }
}

fn max_bits<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> u64 {
    coeffs.map(coefficient_bits).max().unwrap_or(0)
}

/// A factor block entry: multiplicity and polynomial.
type Block = Vec<(u64, SparsePoly)>;

fn block_with_extras(content: &BigInt, x_power: u64, factors: &[Factor]) -> Block {
    let mut out = Vec::with_capacity(factors.len() + 2);
    if !content.is_one() {
        out.push((1, SparsePoly::constant(content.clone())));
    }
    if x_power > 0 {
        out.push((x_power, SparsePoly::x()));
    }
    out.extend(factors.iter().map(|f| (f.multiplicity, f.poly.clone())));
    out
}

fn block_bits(block: &Block) -> u64 {
    max_bits(block.iter().flat_map(|(_, p)| p.terms().iter().map(|(_, c)| c)))
}

struct Encoder {
    w: BitWriter,
    n: u32,
    kk: u32,
    k: u64,
    inner: InnerPoly,
}

impl Encoder {
    fn field(&mut self, name: &'static str, v: u64) -> Result<()> {
        if self.n < 64 && v >> self.n != 0 {
            return Err(Error::Capacity {
                field: name,
                value: v.to_string(),
                bits: self.n,
            });
        }
        self.w.write_u64(v, self.n);
        Ok(())
    }

    fn k_field(&mut self) -> Result<()> {
        if self.k >> self.kk != 0 {
            return Err(Error::Capacity {
                field: "k",
                value: self.k.to_string(),
                bits: self.kk,
            });
        }
        self.w.write_u64(self.k, self.kk);
        Ok(())
    }

    fn coeff(&mut self, c: &BigInt) -> Result<()> {
        if coefficient_bits(c) > self.k {
            return Err(Error::Capacity {
                field: "Coefficient",
                value: c.to_string(),
                bits: (self.k + 1).min(u32::MAX as u64) as u32,
            });
        }
        self.w.write_int(c, self.k + 1);
        Ok(())
    }

    fn dense(&mut self, p: &DensePoly) -> Result<()> {
        self.field("Degree", p.degree())?;
        for c in p.coeffs() {
            self.coeff(c)?;
        }
        Ok(())
    }

    fn sparse(&mut self, p: &SparsePoly) -> Result<()> {
        self.field("TermCount", p.term_count() as u64)?;
        for (e, c) in p.terms() {
            self.field("Degree", *e)?;
            self.coeff(c)?;
        }
        Ok(())
    }

    fn block(&mut self, block: &Block) -> Result<()> {
        self.k_field()?;
        self.field("FactorCount", block.len() as u64)?;
        for (m, p) in block {
            self.field("Multiplicity", *m)?;
            match self.inner {
                InnerPoly::Dense => self.dense(&p.to_dense())?,
                InnerPoly::Sparse => self.sparse(p)?,
            }
        }
        Ok(())
    }

    fn phi(&mut self, entries: &[PhiFactor]) -> Result<()> {
        self.field("PhiFactorCount", entries.len() as u64)?;
        for e in entries {
            self.field("Multiplicity", e.multiplicity)?;
            self.field("k", e.k)?;
            self.field("Degree", e.degree)?;
        }
        Ok(())
    }

    fn c(&mut self, entries: &[CFactor]) -> Result<()> {
        self.field("CFactorCount", entries.len() as u64)?;
        for e in entries {
            let m = e.multiplicity as i128;
            let bound = 1i128 << self.n;
            if m < -bound || m >= bound {
                return Err(Error::Capacity {
                    field: "Multiplicity",
                    value: m.to_string(),
                    bits: self.n + 1,
                });
            }
            self.w.write_int(&BigInt::from(m), self.n as u64 + 1);
            self.field("Degree", e.k)?;
            let primes = e.k_factorization.prime_list();
            self.field("NumFactors", primes.len() as u64)?;
            for p in primes {
                self.field("KFactor", p)?;
            }
        }
        Ok(())
    }
}

fn check_widths(n: u32, kk: u32) -> Result<()> {
    for (name, v) in [("N", n), ("K", kk)] {
        if !(1..=63).contains(&v) {
            return Err(Error::domain(format!("{name} = {v} outside 1..=63")));
        }
    }
    Ok(())
}

fn encode_with(
    value: &Representation,
    n: u32,
    kk: u32,
    inner: InnerPoly,
    forced_k: Option<u64>,
) -> Result<EncodedBlob> {
    check_widths(n, kk)?;
    let mut enc = Encoder {
        w: BitWriter::new(),
        n,
        kk,
        k: 0,
        inner,
    };
    let minimal_k = match value {
        Representation::Dense(d) => max_bits(d.coeffs().iter()),
        Representation::Sparse(s) => max_bits(s.terms().iter().map(|(_, c)| c)),
        Representation::Plain(p) => block_bits(&block_with_extras(&p.content, 0, &p.factors)),
        Representation::PhiAware(p) => {
            block_bits(&block_with_extras(&p.content, p.x_power, &p.other_factors))
        }
        Representation::CAware(c) => {
            block_bits(&block_with_extras(&c.content, c.x_power, &c.other_factors))
        }
    };
    enc.k = forced_k.unwrap_or(minimal_k);
    match value {
        Representation::Dense(d) => {
            enc.field("Degree", d.degree())?;
            enc.k_field()?;
            for c in d.coeffs() {
                enc.coeff(c)?;
            }
        }
        Representation::Sparse(s) => {
            enc.k_field()?;
            enc.sparse(s)?;
        }
        Representation::Plain(p) => enc.block(&block_with_extras(&p.content, 0, &p.factors))?,
        Representation::PhiAware(p) => {
            enc.phi(&p.phi_factors)?;
            enc.block(&block_with_extras(&p.content, p.x_power, &p.other_factors))?;
        }
        Representation::CAware(c) => {
            enc.c(&c.c_factors)?;
            enc.block(&block_with_extras(&c.content, c.x_power, &c.other_factors))?;
        }
    }
    let header = BlobHeader {
        layout: value.layout(),
        inner,
        n_bits: n as u8,
        k_bits: kk as u8,
    };
    let body_bits = enc.w.bit_len();
    let mut bytes = header.to_bytes().to_vec();
    bytes.extend(enc.w.into_bytes());
    Ok(EncodedBlob {
        header,
        body_bits,
        bytes,
    })
}

/// Encodes `value` with count width `n` and coefficient-size width `kk`,
/// choosing the smallest coefficient size `k` that fits every coefficient.
/// `inner` selects the layout of polynomials nested in factorizations.
pub fn encode(value: &Representation, n: u32, kk: u32, inner: InnerPoly) -> Result<EncodedBlob> {
    encode_with(value, n, kk, inner, None)
}

/// Body bits before padding.
pub fn measured_bits(value: &Representation, n: u32, kk: u32, inner: InnerPoly) -> Result<u64> {
    Ok(encode(value, n, kk, inner)?.body_bits)
}

struct Decoder<'a> {
    r: BitReader<'a>,
    n: u32,
    k: u64,
    inner: InnerPoly,
}

impl Decoder<'_> {
    fn field(&mut self, name: &str) -> Result<u64> {
        self.r.read_u64(self.n, name)
    }

    /// A count that must be backed by at least `min_bits` per item.
    fn count(&mut self, name: &str, min_bits: u64) -> Result<usize> {
        let c = self.field(name)?;
        let left = self.r.remaining();
        if min_bits > 0 && c > left / min_bits {
            return Err(Error::malformed(format!(
                "{name} = {c} exceeds the remaining body"
            )));
        }
        Ok(c as usize)
    }

    fn k_field(&mut self, kk: u32) -> Result<()> {
        self.k = self.r.read_u64(kk, "k")?;
        Ok(())
    }

    fn coeff(&mut self) -> Result<BigInt> {
        self.r.read_int(self.k + 1, "Coefficient")
    }

    fn dense_after_degree(&mut self, degree: u64) -> Result<DensePoly> {
        if degree >= self.r.remaining() / (self.k + 1) {
            return Err(Error::malformed(format!("Degree = {degree} exceeds the remaining body")));
        }
        let coeffs = (0..=degree).map(|_| self.coeff()).collect::<Result<Vec<_>>>()?;
        DensePoly::try_from_canonical(coeffs).map_err(|e| Error::malformed(e.to_string()))
    }

    fn dense(&mut self) -> Result<DensePoly> {
        let degree = self.field("Degree")?;
        self.dense_after_degree(degree)
    }

    fn sparse(&mut self) -> Result<SparsePoly> {
        let t = self.count("TermCount", self.n as u64 + self.k + 1)?;
        let mut terms = Vec::with_capacity(t);
        for _ in 0..t {
            let e = self.field("Degree")?;
            terms.push((e, self.coeff()?));
        }
        SparsePoly::try_from_canonical(terms).map_err(|e| Error::malformed(e.to_string()))
    }

    fn block(&mut self, kk: u32) -> Result<Block> {
        self.k_field(kk)?;
        let f = self.count("FactorCount", 2 * self.n as u64)?;
        let mut out = Vec::with_capacity(f);
        for _ in 0..f {
            let m = self.field("Multiplicity")?;
            let p = match self.inner {
                InnerPoly::Dense => self.dense()?.to_sparse(),
                InnerPoly::Sparse => self.sparse()?,
            };
            out.push((m, p));
        }
        Ok(out)
    }

    fn phi(&mut self) -> Result<Vec<PhiFactor>> {
        let l = self.count("PhiFactorCount", 3 * self.n as u64)?;
        let mut out = Vec::with_capacity(l);
        for _ in 0..l {
            let multiplicity = self.field("Multiplicity")?;
            let k = self.field("k")?;
            let degree = self.field("Degree")?;
            out.push(PhiFactor {
                multiplicity,
                k,
                degree,
            });
        }
        Ok(out)
    }

    fn c(&mut self) -> Result<Vec<CFactor>> {
        let l = self.count("CFactorCount", 3 * self.n as u64 + 1)?;
        let mut out = Vec::with_capacity(l);
        for _ in 0..l {
            let m = self.r.read_int(self.n as u64 + 1, "Multiplicity")?;
            let multiplicity = i64::try_from(m).map_err(|_| Error::malformed("multiplicity out of range"))?;
            let k = self.field("Degree")?;
            let count = self.count("NumFactors", self.n as u64)?;
            let primes = (0..count).map(|_| self.field("KFactor")).collect::<Result<Vec<_>>>()?;
            let k_factorization = PrimeFactorization::from_prime_list(&primes)
                .map_err(|e| Error::malformed(format!("C_{k}: {e}")))?;
            out.push(CFactor {
                multiplicity,
                k,
                k_factorization,
            });
        }
        Ok(out)
    }
}

/// Splits a decoded factor block into content, power of `x` and the rest.
fn split_block(block: Block, take_x: bool) -> Result<(BigInt, u64, Vec<Factor>)> {
    let mut content = BigInt::one();
    let mut x_power = 0;
    let mut factors = Vec::new();
    let x = SparsePoly::x();
    for (m, p) in block {
        if p.is_constant() {
            content *= num_traits::pow::pow(p.constant_term(), m as usize);
        } else if take_x && p == x {
            x_power += m;
        } else {
            factors.push(Factor::new(m, p));
        }
    }
    Ok((content, x_power, factors))
}

/// Inverse of [`encode`]. Rejects bad headers, truncated bodies, trailing
/// bytes, nonzero padding, and bodies that are not the canonical encoding
/// of the value they describe.
pub fn decode(bytes: &[u8]) -> Result<Representation> {
    let header = BlobHeader::parse(bytes)?;
    let mut d = Decoder {
        r: BitReader::new(&bytes[HEADER_LEN..]),
        n: header.n_bits as u32,
        k: 0,
        inner: header.inner,
    };
    let kk = header.k_bits as u32;
    let invalid = |e: Error| Error::malformed(e.to_string());
    let value = match header.layout {
        Layout::Dense => {
            let degree = d.field("Degree")?;
            d.k_field(kk)?;
            Representation::Dense(d.dense_after_degree(degree)?)
        }
        Layout::Sparse => {
            d.k_field(kk)?;
            Representation::Sparse(d.sparse()?)
        }
        Layout::Plain => {
            let (content, _, factors) = split_block(d.block(kk)?, false)?;
            Representation::Plain(PlainFactorization { content, factors })
        }
        Layout::PhiAware => {
            let phi_factors = d.phi()?;
            let (content, x_power, other_factors) = split_block(d.block(kk)?, true)?;
            let pf = PhiAwareFactorization {
                phi_factors,
                other_factors,
                content,
                x_power,
            };
            pf.validate().map_err(invalid)?;
            Representation::PhiAware(pf)
        }
        Layout::CAware => {
            let c_factors = d.c()?;
            let (content, x_power, other_factors) = split_block(d.block(kk)?, true)?;
            let cf = CAwareFactorization {
                c_factors,
                other_factors,
                content,
                x_power,
            };
            cf.validate().map_err(invalid)?;
            Representation::CAware(cf)
        }
    };
    let k = d.k;
    let body_bits = d.r.position();
    d.r.finish()?;
    let again = encode_with(&value, header.n_bits as u32, kk, header.inner, Some(k))
        .map_err(invalid)?;
    if again.body_bits != body_bits || again.bytes != bytes {
        return Err(Error::malformed("body is not a canonical encoding"));
    }
    Ok(value)
}

/// Builds the representation of `f` in the given layout. Dense and sparse
/// give the expanded polynomial. Plain gives the full factorization with
/// every `Phi_k` expanded, or the square-free decomposition when
/// `squarefree_only` is set. The cyclotomic-aware layouts ignore
/// `squarefree_only`: their symbolic factors are already distinct.
pub fn represent(f: &SparsePoly, layout: Layout, squarefree_only: bool) -> Result<Representation> {
    Ok(match layout {
        Layout::Dense => Representation::Dense(f.to_dense()),
        Layout::Sparse => Representation::Sparse(f.clone()),
        Layout::Plain if squarefree_only => {
            Representation::Plain(squarefree_decomposition(f)?)
        }
        Layout::Plain => Representation::Plain(to_plain(&factor_full(f)?)?),
        Layout::PhiAware => Representation::PhiAware(factor_full(f)?),
        Layout::CAware => Representation::CAware(to_c_aware(&factor_full(f)?)?),
    })
}

/// Parameters used by the closed-form estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SizeParams {
    /// Degree of the represented polynomial.
    pub n: u64,
    /// Nonzero terms of the represented polynomial.
    pub t: u64,
    /// Coefficient size chosen by the encoder.
    pub k: u64,
    /// Entries in the trailing factor block.
    pub f: u64,
    /// Symbolic cyclotomic entries.
    pub l: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub layout: Layout,
    pub measured_bits: u64,
    /// `None` when the closed form is undefined for these parameters.
    pub paper_formula_bits: Option<u64>,
    pub params: SizeParams,
}

/// Measured size next to the matching closed form: the dense or sparse
/// formula for single polynomials, `(f+1) log2 n` for plain and C-aware
/// factorizations and `(3l+1) log2 n` for Φ-aware ones.
pub fn size_report(value: &Representation, n: u32, kk: u32, inner: InnerPoly) -> Result<SizeReport> {
    let blob = encode(value, n, kk, inner)?;
    let expanded = value.expand()?;
    let mut params = SizeParams {
        n: expanded.degree(),
        t: expanded.term_count() as u64,
        k: 0,
        ..Default::default()
    };
    let mut r = BitReader::new(blob.body());
    let formula = match value {
        Representation::Dense(_) => {
            r.read_u64(n, "Degree")?;
            params.k = r.read_u64(kk, "k")?;
            SizeFormula::Dense {
                n: params.n,
                k: params.k,
            }
        }
        Representation::Sparse(_) => {
            params.k = r.read_u64(kk, "k")?;
            SizeFormula::Sparse {
                n: params.n,
                t: params.t,
                k: params.k,
            }
        }
        Representation::Plain(p) => {
            params.k = block_bits(&block_with_extras(&p.content, 0, &p.factors));
            params.f = p.factors.len() as u64;
            SizeFormula::FactorOverhead { n: params.n, f: params.f }
        }
        Representation::PhiAware(p) => {
            params.k = block_bits(&block_with_extras(&p.content, p.x_power, &p.other_factors));
            params.f = p.other_factors.len() as u64;
            params.l = p.phi_factors.len() as u64;
            SizeFormula::PhiEntries { n: params.n, l: params.l }
        }
        Representation::CAware(c) => {
            params.k = block_bits(&block_with_extras(&c.content, c.x_power, &c.other_factors));
            params.f = c.other_factors.len() as u64;
            params.l = c.c_factors.len() as u64;
            SizeFormula::FactorOverhead { n: params.n, f: params.l }
        }
    };
    Ok(SizeReport {
        layout: value.layout(),
        measured_bits: blob.body_bits,
        paper_formula_bits: paper_size_bits(formula).ok(),
        params,
    })
}
