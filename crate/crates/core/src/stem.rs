//! The Rudin-Shapiro-like recursion
//! `f_{n+1}(z) = f_n(z) + σ_n z^{len f_n} f_n†(-z)`.
//!
//! Starting from a seed with nonzero constant coefficient, each step doubles
//! the length and the squared L² norm. With seed `1` and signs
//! `+, +, -, +, -, …` the stem is Shapiro's original sequence.
//!
//! ```
//! use rsl_core::poly::IntLaurentPoly;
//! use rsl_core::stem::{stem, StemSpec, Sign};
//!
//! let spec = StemSpec::new(IntLaurentPoly::from_i64s(&[1]), vec![Sign::Plus; 3]).unwrap();
//! let lengths: Vec<usize> = stem(&spec, 3).unwrap().iter().map(|f| f.len()).collect();
//! assert_eq!(lengths, vec![1, 2, 4, 8]);
//! ```

use std::fmt;
use std::str::FromStr;


use crate::error::{Error, Result};
use crate::poly::{Coeff, LaurentPoly};

/// Deepest stem materialized exactly; that is `2^20 · ℓ` coefficients.
pub const MAX_DEPTH: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Product of two signs.
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Parses the `+--+` flag syntax, one character per step.
    pub fn parse_sequence(text: &str) -> Result<Vec<Sign>> {
        text.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::BadSeed(format!("sign sequence {text:?} must use only '+' and '-'"))),
            })
            .collect()
    }

    /// Shapiro's signs: `σ_0 = +1`, `σ_n = (-1)^(n+1)`.
    pub fn shapiro(depth: usize) -> Vec<Sign> {
        (0..depth)
            .map(|n| if n == 0 || n % 2 == 1 { Sign::Plus } else { Sign::Minus })
            .collect()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match Sign::parse_sequence(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::BadSeed(format!("expected a single sign, got {s:?}"))),
        }
    }
}

/// A seed and the sign sequence driving its stem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemSpec<C: Coeff> {
    seed: LaurentPoly<C>,
    signs: Vec<Sign>,
}

impl<C: Coeff> StemSpec<C> {
    pub fn new(seed: LaurentPoly<C>, signs: Vec<Sign>) -> Result<Self> {
        check_seed(&seed)?;
        Ok(StemSpec { seed, signs })
    }

    pub fn seed(&self) -> &LaurentPoly<C> {
        &self.seed
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }
}

pub(crate) fn check_seed<C: Coeff>(f: &LaurentPoly<C>) -> Result<()> {
    if f.is_zero() {
        return Err(Error::BadSeed("seed is the zero polynomial".into()));
    }
    if f.offset() != 0 || f.coeff(0).is_zero() {
        return Err(Error::BadSeed(format!(
            "seed must be a polynomial with nonzero constant coefficient, got {f}"
        )));
    }
    Ok(())
}

/// One application of the recursion.
pub fn step<C: Coeff>(f: &LaurentPoly<C>, sign: Sign) -> Result<LaurentPoly<C>> {
    check_seed(f)?;
    let tail = f.conj_reciprocal()?.alternate().shift(f.len() as i64);
    Ok(match sign {
        Sign::Plus => f + &tail,
        Sign::Minus => f - &tail,
    })
}

/// `f_0, f_1, …, f_depth`.
pub fn stem<C: Coeff>(spec: &StemSpec<C>, depth: usize) -> Result<Vec<LaurentPoly<C>>> {
    if depth > spec.signs.len() {
        return Err(Error::DepthExceedsSigns {
            depth,
            signs: spec.signs.len(),
        });
    }
    if depth > MAX_DEPTH {
        return Err(Error::DepthTooLarge {
            depth,
            max: MAX_DEPTH,
        });
    }
    let mut out = Vec::with_capacity(depth + 1);
    out.push(spec.seed.clone());
    for &sign in &spec.signs[..depth] {
        let next = step(out.last().expect("stem is never empty"), sign)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntLaurentPoly;

    fn p(c: &[i64]) -> IntLaurentPoly {
        IntLaurentPoly::from_i64s(c)
    }

    #[test]
    fn step_examples() {
        assert_eq!(step(&p(&[1]), Sign::Plus).unwrap(), p(&[1, 1]));
        assert_eq!(step(&p(&[1, 1]), Sign::Plus).unwrap(), p(&[1, 1, 1, -1]));
        assert_eq!(step(&p(&[1, -1]), Sign::Plus).unwrap(), p(&[1, -1, -1, -1]));
        assert_eq!(step(&p(&[1, 1]), Sign::Minus).unwrap(), p(&[1, 1, -1, 1]));
        let f = p(&[1, -1, -1, 1, 1]);
        assert_eq!(step(&f, Sign::Minus).unwrap().len(), 10);
    }

    #[test]
    fn step_rejects_bad_seeds() {
        assert!(matches!(step(&p(&[0, 1]), Sign::Plus), Err(Error::BadSeed(_))));
        assert!(matches!(step(&IntLaurentPoly::zero(), Sign::Plus), Err(Error::BadSeed(_))));
        let laurent = IntLaurentPoly::new(-1, vec![1.into(), 1.into()]);
        assert!(step(&laurent, Sign::Plus).is_err());
    }

    #[test]
    fn shapiro_stem() {
        let spec = StemSpec::new(p(&[1]), Sign::shapiro(3)).unwrap();
        let s = stem(&spec, 3).unwrap();
        assert_eq!(s[2], p(&[1, 1, 1, -1]));
        assert_eq!(s[3], p(&[1, 1, 1, -1, 1, 1, -1, 1]));
    }

    #[test]
    fn stem_errors() {
        let spec = StemSpec::new(p(&[1, 1]), vec![Sign::Plus; 2]).unwrap();
        assert!(matches!(
            stem(&spec, 3),
            Err(Error::DepthExceedsSigns { depth: 3, signs: 2 })
        ));
        let deep = StemSpec::new(p(&[1]), vec![Sign::Plus; 21]).unwrap();
        assert!(matches!(stem(&deep, 21), Err(Error::DepthTooLarge { .. })));
        assert!(StemSpec::new(p(&[0, 1]), vec![]).is_err());
    }

    #[test]
    fn sign_parsing() {
        assert_eq!(
            Sign::parse_sequence("+--+").unwrap(),
            vec![Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus]
        );
        assert!(Sign::parse_sequence("+x").is_err());
        assert_eq!("-".parse::<Sign>().unwrap(), Sign::Minus);
        assert_eq!(Sign::Minus.times(Sign::Minus), Sign::Plus);
    }
}
