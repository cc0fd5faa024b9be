//! Aperiodic correlations and exact demerit factors.
//!
//! For sequences `f`, `g` of length `ℓ` the crosscorrelation at shift `s`
//! is `C(s) = Σ_j f_{j+s} conj(g_j)`, and the values at all shifts are the
//! coefficients of `f(z)·conj(g(z))`. The crosscorrelation demerit factor is
//! `Σ_s |C(s)|² / (‖f‖₂² ‖g‖₂²)`; the autocorrelation demerit factor drops
//! the peak `|C_{f,f}(0)|²` from the numerator. Merit factors are the
//! reciprocals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Coeff, LaurentPoly};

/// Correlation values `C(s)` for `s` in `min_shift ..= max_shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationProfile<C> {
    min_shift: i64,
    values: Vec<C>,
}

impl<C: Coeff> CorrelationProfile<C> {
    pub fn min_shift(&self) -> i64 {
        self.min_shift
    }

    pub fn max_shift(&self) -> i64 {
        self.min_shift + self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    /// `C(s)`, zero outside the stored range.
    pub fn at(&self, s: i64) -> C {
        let idx = s - self.min_shift;
        if idx < 0 || idx as usize >= self.values.len() {
            C::zero()
        } else {
            self.values[idx as usize].clone()
        }
    }

    pub fn shifts(&self) -> std::ops::RangeInclusive<i64> {
        self.min_shift..=self.max_shift()
    }

    /// `Σ_s |C(s)|²`.
    pub fn energy(&self) -> BigInt {
        self.values.iter().map(Coeff::norm_sq).sum()
    }
}

fn require_sequence<C: Coeff>(f: &LaurentPoly<C>) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroSequence);
    }
    if !f.is_polynomial() {
        return Err(Error::NotAPolynomial { offset: f.offset() });
    }
    Ok(())
}

fn require_same_length<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<()> {
    require_sequence(f)?;
    require_sequence(g)?;
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    Ok(())
}

/// Aperiodic crosscorrelation of two sequences, read off `f · conj(g)`.
pub fn crosscorrelation<C: Coeff>(
    f: &LaurentPoly<C>,
    g: &LaurentPoly<C>,
) -> Result<CorrelationProfile<C>> {
    require_sequence(f)?;
    require_sequence(g)?;
    let product = f.mul(&g.laurent_conj());
    let min_shift = 1 - g.len() as i64;
    let max_shift = f.len() as i64 - 1;
    Ok(CorrelationProfile {
        min_shift,
        values: (min_shift..=max_shift).map(|s| product.coeff(s)).collect(),
    })
}

/// Crosscorrelation demerit factor from the correlation profile.
pub fn cdf<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<BigRational> {
    require_same_length(f, g)?;
    let energy = crosscorrelation(f, g)?.energy();
    Ok(BigRational::new(energy, f.norm2_sq() * g.norm2_sq()))
}

/// Crosscorrelation demerit factor as `‖f g‖₂² / (‖f‖₂² ‖g‖₂²)`.
///
/// Agrees with [`cdf`] because `|f ḡ| = |f g|` on the unit circle; kept as
/// an independent route through the plain product.
pub fn cdf_from_product<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<BigRational> {
    require_same_length(f, g)?;
    Ok(BigRational::new(
        f.mul(g).norm2_sq(),
        f.norm2_sq() * g.norm2_sq(),
    ))
}

/// Autocorrelation demerit factor `Σ_{s≠0} |C(s)|² / |C(0)|²`.
pub fn adf<C: Coeff>(f: &LaurentPoly<C>) -> Result<BigRational> {
    let profile = crosscorrelation(f, f)?;
    let peak = profile.at(0).norm_sq();
    let off_peak = profile.energy() - &peak;
    Ok(BigRational::new(off_peak, peak))
}

pub fn amf<C: Coeff>(f: &LaurentPoly<C>) -> Result<BigRational> {
    reciprocal(adf(f)?)
}

pub fn cmf<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<BigRational> {
    reciprocal(cdf(f, g)?)
}

fn reciprocal(x: BigRational) -> Result<BigRational> {
    if x.is_zero() {
        Err(Error::ZeroDemeritFactor)
    } else {
        Ok(x.recip())
    }
}

/// `√(ADF(f)·ADF(g)) + CDF(f,g)` together with its exact parts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactPsc {
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub cdf: BigRational,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub adf_f: BigRational,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub adf_g: BigRational,
    pub psc_float: f64,
    /// Present when the two autocorrelation demerit factors coincide, in
    /// which case the criterion is `adf + cdf`.
    #[serde(serialize_with = "crate::report::ser_opt_ratio")]
    pub psc_exact: Option<BigRational>,
}

impl ExactPsc {
    pub fn from_parts(adf_f: BigRational, adf_g: BigRational, cdf: BigRational) -> Self {
        let product = (&adf_f * &adf_g).to_f64().unwrap_or(f64::NAN);
        let psc_float = product.sqrt() + cdf.to_f64().unwrap_or(f64::NAN);
        let psc_exact = (adf_f == adf_g).then(|| &adf_f + &cdf);
        ExactPsc {
            cdf,
            adf_f,
            adf_g,
            psc_float,
            psc_exact,
        }
    }
}

/// Pursley-Sarwate Criterion of two equal-length sequences.
pub fn psc<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<ExactPsc> {
    let c = cdf(f, g)?;
    Ok(ExactPsc::from_parts(adf(f)?, adf(g)?, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntLaurentPoly;

    fn p(c: &[i64]) -> IntLaurentPoly {
        IntLaurentPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn crosscorrelation_examples() {
        let a = crosscorrelation(&p(&[1, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(a.shifts(), -1..=1);
        assert_eq!(ints(a.values()), vec![1, 2, 1]);
        let c = crosscorrelation(&p(&[1, 1]), &p(&[1, -1])).unwrap();
        assert_eq!(ints(c.values()), vec![-1, 0, 1]);
        let f = p(&[1, -1, -1, 1, -1]);
        assert_eq!(crosscorrelation(&f, &f).unwrap().at(0), f.norm2_sq());
        assert!(matches!(
            crosscorrelation(&IntLaurentPoly::zero(), &f),
            Err(Error::ZeroSequence)
        ));
    }

    #[test]
    fn profile_keeps_vanishing_end_shifts() {
        // product has zero coefficients at the ends of the shift range
        let f = p(&[1, 0, 0, 1]);
        let g = p(&[0, 0, 0, 1]);
        let c = crosscorrelation(&f, &g).unwrap();
        assert_eq!(c.shifts(), -3..=3);
        assert_eq!(ints(c.values()), vec![1, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn demerit_examples() {
        assert_eq!(cdf(&p(&[1, 1]), &p(&[1, -1])).unwrap(), q(1, 2));
        assert_eq!(adf(&p(&[1])).unwrap(), q(0, 1));
        assert_eq!(adf(&p(&[1, 1])).unwrap(), q(1, 2));
        assert_eq!(adf(&p(&[1, 1, 1, 1])).unwrap(), q(7, 4));
        let f = p(&[1, 1, -1, 1, -1, -1]);
        assert_eq!(cdf(&f, &f).unwrap(), adf(&f).unwrap() + q(1, 1));
        assert_eq!(amf(&p(&[1, 1])).unwrap(), q(2, 1));
        assert_eq!(cmf(&p(&[1, 1]), &p(&[1, -1])).unwrap(), q(2, 1));
    }

    #[test]
    fn demerit_errors() {
        assert!(matches!(
            cdf(&p(&[1, 1]), &p(&[1, 1, 1])),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
        assert!(matches!(amf(&p(&[1])), Err(Error::ZeroDemeritFactor)));
        assert!(matches!(adf(&IntLaurentPoly::zero()), Err(Error::ZeroSequence)));
        assert!(matches!(
            psc(&p(&[1]), &p(&[1, 1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn product_route_agrees() {
        let f = p(&[1, 1, 1, 1]);
        let g = p(&[1, -1, -1, 1]);
        assert_eq!(cdf(&f, &g).unwrap(), cdf_from_product(&f, &g).unwrap());
        let f = p(&[3, -2, 0, 5]);
        let g = p(&[1, 4, -1, 2]);
        assert_eq!(cdf(&f, &g).unwrap(), cdf_from_product(&f, &g).unwrap());
    }

    #[test]
    fn psc_of_identical_pair() {
        let f = p(&[1, 1, 1, -1, 1]);
        let r = psc(&f, &f).unwrap();
        let a = adf(&f).unwrap();
        assert_eq!(r.psc_exact, Some(&a + &a + q(1, 1)));
        assert!((r.psc_float - (&a + &a + q(1, 1)).to_f64().unwrap()).abs() < 1e-12);
        let r = psc(&p(&[1, 1]), &p(&[1, 1, ])).unwrap();
        assert_eq!(r.psc_exact, Some(q(2, 1)));
        let mixed = psc(&p(&[1, 1, 1]), &p(&[1, 1, -1])).unwrap();
        assert_eq!(mixed.psc_exact, None);
    }
}
