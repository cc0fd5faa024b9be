//! Bit-packed ±1 sequences.
//!
//! A [`LittlewoodSeq`] of length `ℓ ≤ 64` keeps coefficient `j` in bit
//! `ℓ - 1 - j` of a `u64`, with a set bit meaning `-1`. This is the bit
//! order of the hexadecimal seed code, so comparing the packed words of two
//! sequences of the same length compares their hex encodings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::IntLaurentPoly;

/// Longest sequence that fits the packed representation.
pub const MAX_LEN: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LittlewoodSeq {
    len: u8,
    bits: u64,
}

/// Mask of the low `len` bits.
#[inline]
pub fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Bits holding the odd-exponent coefficients of a length-`len` sequence.
#[inline]
pub fn odd_mask(len: usize) -> u64 {
    // coefficient j sits at bit len-1-j
    let every_other = 0xAAAA_AAAA_AAAA_AAAAu64;
    let m = if len % 2 == 0 { every_other >> 1 } else { every_other };
    m & low_mask(len)
}

impl LittlewoodSeq {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::UnsupportedLength {
                len,
                reason: format!("packed sequences need 1 <= len <= {MAX_LEN}"),
            });
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::BadHex {
                text: format!("{bits:X}"),
                len,
                reason: "value has bits above the sequence length".into(),
            });
        }
        Ok(LittlewoodSeq {
            len: len as u8,
            bits,
        })
    }

    /// Caller guarantees `1 <= len <= 64` and `bits < 2^len`.
    #[inline]
    pub(crate) const fn from_raw(len: usize, bits: u64) -> Self {
        LittlewoodSeq {
            len: len as u8,
            bits,
        }
    }

    /// The all-`+1` sequence.
    pub fn ones(len: usize) -> Result<Self> {
        Self::new(len, 0)
    }

    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let len = signs.len();
        let mut bits = 0u64;
        for (j, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => bits |= 1 << (len - 1 - j),
                _ => return Err(Error::NotLittlewood),
            }
        }
        Self::new(len, bits)
    }

    pub fn from_poly(p: &IntLaurentPoly) -> Result<Self> {
        if !p.is_littlewood() {
            return Err(Error::NotLittlewood);
        }
        let signs: Vec<i8> = p
            .coeffs()
            .iter()
            .map(|c| if c.is_one() { 1 } else { -1 })
            .collect();
        Self::from_signs(&signs)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The packed word; equal to the numeric value of the hex encoding.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Coefficient `j` as `±1`.
    pub fn coeff(&self, j: usize) -> i8 {
        assert!(j < self.len(), "coefficient index out of range");
        if self.bits >> (self.len() - 1 - j) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len()).map(|j| self.coeff(j)).collect()
    }

    /// Bits in coefficient order: bit `j` holds coefficient `j`.
    #[inline]
    pub fn coeff_order_bits(&self) -> u64 {
        self.bits.reverse_bits() >> (64 - self.len())
    }

    pub fn to_poly(&self) -> IntLaurentPoly {
        IntLaurentPoly::from_coeffs(
            self.signs()
                .into_iter()
                .map(|s| if s == 1 { BigInt::one() } else { -BigInt::one() })
                .collect(),
        )
    }

    /// `-f`.
    #[inline]
    pub fn negate(&self) -> Self {
        Self::from_raw(self.len(), self.bits ^ low_mask(self.len()))
    }

    /// `f(-z)`.
    #[inline]
    pub fn alternate(&self) -> Self {
        Self::from_raw(self.len(), self.bits ^ odd_mask(self.len()))
    }

    /// `f†`, which for real coefficients is the reversal.
    #[inline]
    pub fn reverse(&self) -> Self {
        Self::from_raw(self.len(), self.coeff_order_bits())
    }

    /// Every sequence of length `len`, in hex order.
    pub fn all(len: usize) -> impl Iterator<Item = LittlewoodSeq> {
        assert!((1..MAX_LEN).contains(&len), "exhaustive iteration needs len < 64");
        (0..1u64 << len).map(move |b| Self::from_raw(len, b))
    }
}

impl fmt::Debug for LittlewoodSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LittlewoodSeq({self})")
    }
}

impl fmt::Display for LittlewoodSeq {
    /// `+` / `-` per coefficient, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_layout_matches_coefficients() {
        let f = LittlewoodSeq::from_signs(&[1, 1, 1, -1]).unwrap();
        assert_eq!(f.bits(), 1);
        assert_eq!(f.coeff_order_bits(), 0b1000);
        assert_eq!(f.to_string(), "+++-");
        assert_eq!(LittlewoodSeq::from_poly(&f.to_poly()).unwrap(), f);
    }

    #[test]
    fn generator_actions() {
        let ones = LittlewoodSeq::ones(4).unwrap();
        assert_eq!(ones.alternate().signs(), vec![1, -1, 1, -1]);
        let f = LittlewoodSeq::from_signs(&[1, 1, -1]).unwrap();
        assert_eq!(f.reverse().signs(), vec![-1, 1, 1]);
        assert_eq!(f.alternate().signs(), vec![1, -1, -1]);
        assert_eq!(ones.negate().signs(), vec![-1; 4]);
        let one = LittlewoodSeq::ones(1).unwrap();
        assert_eq!(one.alternate(), one);
    }

    #[test]
    fn packed_actions_agree_with_polynomial_actions() {
        for len in 1..=7 {
            for f in LittlewoodSeq::all(len) {
                let p = f.to_poly();
                assert_eq!(f.alternate().to_poly(), p.alternate());
                assert_eq!(f.reverse().to_poly(), p.conj_reciprocal().unwrap());
                assert_eq!(f.negate().to_poly(), -&p);
            }
        }
    }

    #[test]
    fn rejects_invalid() {
        assert!(LittlewoodSeq::new(0, 0).is_err());
        assert!(LittlewoodSeq::new(65, 0).is_err());
        assert!(LittlewoodSeq::new(3, 8).is_err());
        assert!(LittlewoodSeq::from_signs(&[1, 0]).is_err());
        assert!(LittlewoodSeq::new(64, u64::MAX).is_ok());
    }
}
