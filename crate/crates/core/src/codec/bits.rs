//! MSB-first bit streams.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    bytes: Vec<u8>,
    bits: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bit_len(&self) -> u64 {
        self.bits
    }

    fn push_bit(&mut self, bit: bool) {
        let offset = (self.bits % 8) as u32;
        if offset == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 0x80 >> offset;
        }
        self.bits += 1;
    }

    /// Low `width` bits of `value`, most significant first.
    pub fn write_u64(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        debug_assert!(width == 64 || value >> width == 0);
        for i in (0..width).rev() {
            self.push_bit((value >> i) & 1 == 1);
        }
    }

    /// `value` as a `width`-bit two's-complement integer. The caller
    /// guarantees `-2^(width-1) <= value < 2^(width-1)`.
    pub fn write_int(&mut self, value: &BigInt, width: u64) {
        if width <= 64 {
            if let Some(v) = value.to_i64() {
                let w = width as u32;
                let mask = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
                self.write_u64(v as u64 & mask, w);
                return;
            }
        }
        let unsigned: BigUint = if value.sign() == Sign::Minus {
            ((BigInt::from(1) << width) + value).to_biguint().unwrap()
        } else {
            value.to_biguint().unwrap()
        };
        for i in (0..width).rev() {
            self.push_bit(unsigned.bit(i));
        }
    }

    /// The stream, zero-padded to a byte boundary.
    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.data.len() as u64 * 8 - self.pos
    }

    fn need(&self, width: u64, field: &str) -> Result<()> {
        if width > self.remaining() {
            return Err(Error::Malformed(format!(
                "truncated body reading {field} at bit {}",
                self.pos
            )));
        }
        Ok(())
    }

    fn bit(&mut self) -> bool {
        let byte = self.data[(self.pos / 8) as usize];
        let bit = byte & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        bit
    }

    pub fn read_u64(&mut self, width: u32, field: &str) -> Result<u64> {
        self.need(width as u64, field)?;
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.bit() as u64;
        }
        Ok(v)
    }

    pub fn read_int(&mut self, width: u64, field: &str) -> Result<BigInt> {
        self.need(width, field)?;
        if width == 0 {
            return Ok(BigInt::zero());
        }
        if width <= 64 {
            let w = width as u32;
            let raw = self.read_u64(w, field)?;
            let v = if w < 64 && raw >> (w - 1) == 1 {
                raw as i128 - (1i128 << w)
            } else {
                raw as i64 as i128
            };
            return Ok(BigInt::from(v));
        }
        let mut u = BigUint::zero();
        for _ in 0..width {
            u = (u << 1u32) + BigUint::from(self.bit() as u8);
        }
        let v = BigInt::from(u);
        if v.bit(width - 1) {
            Ok(v - (BigInt::from(1) << width))
        } else {
            Ok(v)
        }
    }

    /// Checks that only zero padding (less than one byte) remains.
    pub fn finish(self) -> Result<()> {
        let rest = self.remaining();
        if rest >= 8 {
            return Err(Error::Malformed(format!("{} trailing bytes", rest / 8)));
        }
        let mut r = self;
        for _ in 0..rest {
            if r.bit() {
                return Err(Error::Malformed("nonzero padding bits".into()));
            }
        }
        Ok(())
    }
}
