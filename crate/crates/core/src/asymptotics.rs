//! Closed forms for demerit factors along pairs of stems.
//!
//! For equal-length seeds `f`, `g` the triple
//!
//! ```text
//! u = ‖f g‖₂²,   v = ‖f g̃‖₂²,   w = Re ∫ f f̃ · conj(g g̃)
//! ```
//!
//! evolves linearly under one step of the recursion (with `ε = σ τ` the
//! product of the two step signs):
//!
//! ```text
//! u' = 2u + 2v + 2εw
//! v' = 2u + 2v - 2εw
//! w' = 2εu - 2εv + 2w
//! ```
//!
//! When both stems share one sign sequence (`ε = +1` at every step) the
//! transition matrix has eigenvalues `4, 4, -2`, which gives the finite-depth
//! formula
//!
//! ```text
//! CDF(f_n, g_n) = [(2u + v + w) + (-1/2)^n (u - v - w)] / (3 ‖f‖₂² ‖g‖₂²)
//! ```
//!
//! and its limit. Setting `g = f` recovers the limiting autocorrelation
//! demerit factor `-1 + (2/3)(‖f‖₄⁴ + ‖f f̃‖₂²)/‖f‖₂⁴ ≥ 1/3`.
//!
//! Everything here is exact integer or rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::correlation::ExactPsc;
use crate::error::{Error, Result};
use crate::poly::{Coeff, IntLaurentPoly, LaurentPoly};
use crate::stem::{check_seed, Sign};

/// The `(u, v, w)` state of a pair of equal-length polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UvwState {
    pub u: BigInt,
    pub v: BigInt,
    pub w: BigInt,
}

impl UvwState {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>, w: impl Into<BigInt>) -> Self {
        UvwState {
            u: u.into(),
            v: v.into(),
            w: w.into(),
        }
    }

    /// One step of the linear recursion with sign product `eps`.
    pub fn step(&self, eps: Sign) -> UvwState {
        let e = BigInt::from(eps.value());
        let two = BigInt::from(2);
        UvwState {
            u: &two * (&self.u + &self.v + &e * &self.w),
            v: &two * (&self.u + &self.v - &e * &self.w),
            w: &two * (&e * (&self.u - &self.v) + &self.w),
        }
    }
}

/// Exact `(u, v, w)` of two seeds.
pub fn uvw_of<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<UvwState> {
    check_pair(f, g)?;
    let f_alt = f.alternate();
    let g_alt = g.alternate();
    let u = f.mul(g).norm2_sq();
    let v = f.mul(&g_alt).norm2_sq();
    let w = f
        .mul(&f_alt)
        .mul(&g.mul(&g_alt).laurent_conj())
        .integral()
        .re();
    Ok(UvwState { u, v, w })
}

/// `uvw_step` as a free function.
pub fn uvw_step(s: &UvwState, sign_product: Sign) -> UvwState {
    s.step(sign_product)
}

fn check_pair<C: Coeff>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<()> {
    check_seed(f)?;
    check_seed(g)?;
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    Ok(())
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// Exact `CDF(f_n, g_n)` after `n` steps.
///
/// `sign_products[k]` is `σ_k τ_k` for step `k`. When every product is `+1`
/// (both stems driven by one sign sequence) the closed form is used;
/// otherwise the `(u, v, w)` recursion is iterated.
pub fn finite_cdf_closed_form<C: Coeff>(
    f0: &LaurentPoly<C>,
    g0: &LaurentPoly<C>,
    n: usize,
    sign_products: &[Sign],
) -> Result<BigRational> {
    if sign_products.len() < n {
        return Err(Error::DepthExceedsSigns {
            depth: n,
            signs: sign_products.len(),
        });
    }
    let s = uvw_of(f0, g0)?;
    let norms = f0.norm2_sq() * g0.norm2_sq();
    let products = &sign_products[..n];
    if products.iter().all(|&e| e == Sign::Plus) {
        let steady = BigInt::from(2) * &s.u + &s.v + &s.w;
        let transient = &s.u - &s.v - &s.w;
        let decay = ratio(
            if n % 2 == 0 { BigInt::one() } else { -BigInt::one() },
            BigInt::from(2).pow(n as u32),
        );
        let numer = BigRational::from_integer(steady) + decay * BigRational::from_integer(transient);
        return Ok(numer / BigRational::from_integer(BigInt::from(3) * norms));
    }
    let end = products.iter().fold(s, |acc, &e| acc.step(e));
    Ok(ratio(end.u, norms * BigInt::from(4).pow(n as u32)))
}

/// `lim ADF(f_n)` for the stem of `f0`.
pub fn limiting_adf<C: Coeff>(f0: &LaurentPoly<C>) -> Result<BigRational> {
    check_seed(f0)?;
    let n2 = f0.norm2_sq();
    let n4 = f0.norm4_4();
    let cross = f0.mul(&f0.alternate()).norm2_sq();
    let numer = BigInt::from(2) * (n4 + cross) - BigInt::from(3) * &n2 * &n2;
    Ok(ratio(numer, BigInt::from(3) * &n2 * &n2))
}

/// `lim CDF(f_n, g_n)` for stems driven by a common sign sequence.
pub fn limiting_cdf<C: Coeff>(f0: &LaurentPoly<C>, g0: &LaurentPoly<C>) -> Result<BigRational> {
    let s = uvw_of(f0, g0)?;
    Ok(ratio(
        BigInt::from(2) * s.u + s.v + s.w,
        BigInt::from(3) * f0.norm2_sq() * g0.norm2_sq(),
    ))
}

pub fn limiting_psc<C: Coeff>(f0: &LaurentPoly<C>, g0: &LaurentPoly<C>) -> Result<ExactPsc> {
    Ok(limits(f0, g0)?.psc)
}

/// All limiting values for a pair of seeds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub adf_f: BigRational,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub adf_g: BigRational,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub cdf: BigRational,
    pub psc: ExactPsc,
}

pub fn limits<C: Coeff>(f0: &LaurentPoly<C>, g0: &LaurentPoly<C>) -> Result<LimitReport> {
    let adf_f = limiting_adf(f0)?;
    let adf_g = limiting_adf(g0)?;
    let cdf = limiting_cdf(f0, g0)?;
    let psc = ExactPsc::from_parts(adf_f.clone(), adf_g.clone(), cdf.clone());
    Ok(LimitReport {
        adf_f,
        adf_g,
        cdf,
        psc,
    })
}

/// `‖f_n‖₄⁴ / ‖f_n‖₂⁴` along the all-plus stem of a Littlewood seed.
pub fn bm_ratio(f0: &IntLaurentPoly, n: usize) -> Result<BigRational> {
    if !f0.is_littlewood() {
        return Err(Error::NotLittlewood);
    }
    let n2 = f0.norm2_sq();
    let n4 = f0.norm4_4();
    let cross = f0.mul(&f0.alternate()).norm2_sq();
    let denom = &n2 * &n2;
    let steady = ratio(BigInt::from(2) * (&n4 + &cross), BigInt::from(3) * &denom);
    let transient = ratio(n4 - BigInt::from(2) * cross, BigInt::from(3) * denom);
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let decay = ratio(sign, BigInt::from(2).pow(n as u32));
    Ok(steady + decay * transient)
}

/// The seed pair whose limiting CDF is `1/(3k)`: all-ones of length `4k`,
/// and `k` copies of `(1, -1, -1, 1)`.
pub fn reciprocal_cdf_pair(k: usize) -> Result<(IntLaurentPoly, IntLaurentPoly)> {
    if k == 0 {
        return Err(Error::BadSeed("k must be a positive integer".into()));
    }
    let f = IntLaurentPoly::from_i64s(&vec![1; 4 * k]);
    let block = [1, -1, -1, 1];
    let g: Vec<i64> = block.iter().copied().cycle().take(4 * k).collect();
    Ok((f, IntLaurentPoly::from_i64s(&g)))
}

/// Whether a rational lies at or above `1/3`.
pub fn at_least_one_third(x: &BigRational) -> bool {
    x * BigRational::from_integer(3.into()) >= BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::cdf;
    use crate::stem::step;
    use num_traits::Signed;

    fn p(c: &[i64]) -> IntLaurentPoly {
        IntLaurentPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn uvw_examples() {
        assert_eq!(uvw_of(&p(&[1, 1]), &p(&[1, -1])).unwrap(), UvwState::new(2, 6, 2));
        let f = p(&[1, -1, 1, 1, -1]);
        assert_eq!(uvw_of(&f, &f).unwrap().u, f.norm4_4());
        let (f, g) = reciprocal_cdf_pair(1).unwrap();
        assert_eq!(uvw_of(&f, &g).unwrap(), UvwState::new(4, 12, -4));
        assert!(matches!(
            uvw_of(&p(&[1, 1]), &p(&[1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn uvw_step_examples() {
        let s = UvwState::new(2, 6, 2);
        assert_eq!(s.step(Sign::Plus), UvwState::new(20, 12, -4));
        let stepped = uvw_of(
            &step(&p(&[1, 1]), Sign::Plus).unwrap(),
            &step(&p(&[1, -1]), Sign::Plus).unwrap(),
        )
        .unwrap();
        assert_eq!(stepped, UvwState::new(20, 12, -4));
        let same = UvwState::new(7, 7, -3);
        for eps in [Sign::Plus, Sign::Minus] {
            assert_eq!(same.step(eps).w, BigInt::from(-6));
        }
    }

    #[test]
    fn eigen_structure() {
        assert_eq!(UvwState::new(1, 1, 0).step(Sign::Plus), UvwState::new(4, 4, 0));
        assert_eq!(UvwState::new(1, 0, 1).step(Sign::Plus), UvwState::new(4, 0, 4));
        assert_eq!(UvwState::new(-1, 1, 1).step(Sign::Plus), UvwState::new(2, -2, -2));
    }

    #[test]
    fn finite_closed_form_examples() {
        let (f, g) = (p(&[1, 1]), p(&[1, -1]));
        assert_eq!(finite_cdf_closed_form(&f, &g, 0, &[]).unwrap(), cdf(&f, &g).unwrap());
        assert_eq!(finite_cdf_closed_form(&f, &g, 1, &[Sign::Plus]).unwrap(), q(5, 4));
        let f1 = step(&f, Sign::Plus).unwrap();
        let g1 = step(&g, Sign::Plus).unwrap();
        assert_eq!(cdf(&f1, &g1).unwrap(), q(5, 4));
        // deep depth approaches the limit
        let deep = finite_cdf_closed_form(&f, &g, 40, &[Sign::Plus; 40]).unwrap();
        let gap = deep - limiting_cdf(&f, &g).unwrap();
        assert!(gap.abs() < q(1, 1 << 30));
        assert!(finite_cdf_closed_form(&f, &g, 2, &[Sign::Plus]).is_err());
    }

    #[test]
    fn mixed_sign_products_iterate() {
        let (f, g) = (p(&[1, 1, -1]), p(&[1, -1, -1]));
        let (f1, g1) = (step(&f, Sign::Plus).unwrap(), step(&g, Sign::Minus).unwrap());
        let (f2, g2) = (step(&f1, Sign::Minus).unwrap(), step(&g1, Sign::Minus).unwrap());
        let got = finite_cdf_closed_form(&f, &g, 2, &[Sign::Minus, Sign::Plus]).unwrap();
        assert_eq!(got, cdf(&f2, &g2).unwrap());
    }

    #[test]
    fn limiting_adf_examples() {
        assert_eq!(limiting_adf(&p(&[1])).unwrap(), q(1, 3));
        assert_eq!(limiting_adf(&p(&[1, 1, 1, 1])).unwrap(), q(1, 1));
        assert_eq!(limiting_adf(&p(&[1, 1, 1, -1])).unwrap(), q(1, 3));
        assert!(limiting_adf(&p(&[0, 1])).is_err());
    }

    #[test]
    fn limiting_cdf_examples() {
        assert_eq!(limiting_cdf(&p(&[1, 1]), &p(&[1, -1])).unwrap(), q(1, 1));
        let (f, g) = reciprocal_cdf_pair(1).unwrap();
        assert_eq!(limiting_cdf(&f, &g).unwrap(), q(1, 3));
        let f = p(&[1, -1, -1, 1, 1, 1]);
        assert_eq!(
            limiting_cdf(&f, &f).unwrap(),
            limiting_adf(&f).unwrap() + q(1, 1)
        );
    }

    #[test]
    fn limiting_psc_examples() {
        let r = limiting_psc(&p(&[1, 1]), &p(&[1, -1])).unwrap();
        assert_eq!(r.psc_exact, Some(q(4, 3)));
        let r = limiting_psc(&p(&[1]), &p(&[1])).unwrap();
        assert_eq!(r.cdf, q(4, 3));
        assert_eq!(r.psc_exact, Some(q(5, 3)));
    }

    #[test]
    fn bm_ratio_examples() {
        let f = p(&[1, 1, -1, 1, 1]);
        assert_eq!(
            bm_ratio(&f, 0).unwrap(),
            BigRational::new(f.norm4_4(), BigInt::from(25))
        );
        // Shapiro P_2 = (1, 1, 1, -1): ‖·‖₄⁴ = 20 by direct autocorrelation
        assert_eq!(bm_ratio(&p(&[1]), 2).unwrap(), q(20, 16));
        let limit = limiting_adf(&f).unwrap() + q(1, 1);
        let deep = bm_ratio(&f, 60).unwrap();
        assert!((deep - limit).abs() < q(1, 1 << 40));
        assert!(matches!(bm_ratio(&p(&[2, 1]), 1), Err(Error::NotLittlewood)));
    }

    #[test]
    fn reciprocal_cdf_pair_examples() {
        let (f, g) = reciprocal_cdf_pair(1).unwrap();
        assert_eq!(f, p(&[1, 1, 1, 1]));
        assert_eq!(g, p(&[1, -1, -1, 1]));
        let (f, g) = reciprocal_cdf_pair(3).unwrap();
        assert_eq!(g, p(&[1, -1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1]));
        assert_eq!(f.len(), 12);
        assert!(reciprocal_cdf_pair(0).is_err());
    }
}
