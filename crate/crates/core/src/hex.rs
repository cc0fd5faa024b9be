//! The hexadecimal seed code used in the result tables.
//!
//! Each hex digit expands to four bits, most significant first. Leading
//! zero bits beyond the sequence length are dropped, then `0 → +1` and
//! `1 → -1` gives the coefficients, constant term first. For example the
//! length-14 seed `149B` expands to `0001 0100 1001 1011`, loses its first
//! two zeros, and reads `+-+-++-++--+--`.
//!
//! ```
//! use rsl_core::hex::{decode_hex, encode_hex};
//!
//! let g = decode_hex("149B", 14).unwrap();
//! assert_eq!(g.to_string(), "+-+-++-++--+--");
//! assert_eq!(encode_hex(&g), "149B");
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::littlewood::{LittlewoodSeq, MAX_LEN};

/// A hex seed together with the sequence length it encodes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HexSeed {
    pub text: String,
    pub len: usize,
}

impl HexSeed {
    pub fn new(text: impl Into<String>, len: usize) -> Self {
        HexSeed {
            text: text.into(),
            len,
        }
    }

    pub fn decode(&self) -> Result<LittlewoodSeq> {
        decode_hex(&self.text, self.len)
    }
}

impl From<LittlewoodSeq> for HexSeed {
    fn from(f: LittlewoodSeq) -> Self {
        HexSeed::new(encode_hex(&f), f.len())
    }
}

impl fmt::Display for HexSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn decode_hex(text: &str, len: usize) -> Result<LittlewoodSeq> {
    let bad = |reason: &str| Error::BadHex {
        text: text.to_string(),
        len,
        reason: reason.to_string(),
    };
    if len == 0 || len > MAX_LEN {
        return Err(bad("length must be between 1 and 64"));
    }
    if text.is_empty() {
        return Err(bad("empty string"));
    }
    let mut digits = Vec::with_capacity(text.len());
    for ch in text.chars() {
        digits.push(ch.to_digit(16).ok_or_else(|| bad("not a hexadecimal digit"))? as u64);
    }
    if digits.len() * 4 < len {
        return Err(bad("too few bits for the requested length"));
    }
    let lead = digits.iter().take_while(|&&d| d == 0).count();
    let significant = &digits[lead..];
    if significant.len() > 16 {
        return Err(bad("nonzero bits before the sequence start"));
    }
    let value = significant.iter().fold(0u64, |acc, &d| acc << 4 | d);
    if len < 64 && value >> len != 0 {
        return Err(bad("nonzero bits before the sequence start"));
    }
    LittlewoodSeq::new(len, value)
}

/// Minimal-width encoding: `⌈ℓ/4⌉` uppercase digits, zero padded.
pub fn encode_hex(f: &LittlewoodSeq) -> String {
    let width = f.len().div_ceil(4);
    format!("{:0width$X}", f.bits(), width = width)
}
