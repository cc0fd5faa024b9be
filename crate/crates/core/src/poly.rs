//! Exact Laurent-polynomial algebra over the integers and the Gaussian
//! integers.
//!
//! A [`LaurentPoly`] stores a contiguous run of coefficients together with
//! the exponent of the first one. Values are always trimmed, so the first
//! and last stored coefficients are nonzero and structural equality is
//! polynomial equality. The zero polynomial stores no coefficients.
//!
//! ```
//! use rsl_core::poly::IntLaurentPoly;
//!
//! let a = IntLaurentPoly::from_i64s(&[1, 1]);
//! let b = IntLaurentPoly::from_i64s(&[1, -1]);
//! assert_eq!(a.mul(&b), IntLaurentPoly::from_i64s(&[1, 0, -1]));
//! assert_eq!(a.norm4_4(), 6u32.into());
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, ToPrimitive, Zero};
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Gaussian integer `a + b i`.
pub type GaussInt = Complex<BigInt>;

/// Trimmed-magnitude bound under which the floating convolution is attempted.
const FFT_MAGNITUDE_LIMIT: f64 = (1u64 << 50) as f64;

/// Largest pre-rounding deviation accepted by [`LaurentPoly::mul_fast`].
pub const FFT_ROUNDING_GUARD: f64 = 1e-6;

/// Coefficient rings supported by [`LaurentPoly`].
pub trait Coeff:
    Clone
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn conj(&self) -> Self;
    /// `|c|^2`.
    fn norm_sq(&self) -> BigInt;
    fn re(&self) -> BigInt;
    fn from_i64(v: i64) -> Self;
    /// Real and imaginary parts as machine integers, if both fit.
    fn to_i64_parts(&self) -> Option<(i64, i64)>;
    fn from_i128_parts(re: i128, im: i128) -> Self;
    /// Rounds a floating value to the nearest ring element, returning the
    /// element and the rounding deviation.
    fn from_rounded(z: Complex64) -> (Self, f64);
}

impl Coeff for BigInt {
    fn conj(&self) -> Self {
        self.clone()
    }
    fn norm_sq(&self) -> BigInt {
        self * self
    }
    fn re(&self) -> BigInt {
        self.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_i64_parts(&self) -> Option<(i64, i64)> {
        self.to_i64().map(|v| (v, 0))
    }
    fn from_i128_parts(re: i128, _im: i128) -> Self {
        BigInt::from(re)
    }
    fn from_rounded(z: Complex64) -> (Self, f64) {
        let r = z.re.round();
        let dev = (z.re - r).abs().max(z.im.abs());
        (BigInt::from(r as i128), dev)
    }
}

impl Coeff for GaussInt {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn norm_sq(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
    fn re(&self) -> BigInt {
        self.re.clone()
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(BigInt::from(v), BigInt::zero())
    }
    fn to_i64_parts(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }
    fn from_i128_parts(re: i128, im: i128) -> Self {
        Complex::new(BigInt::from(re), BigInt::from(im))
    }
    fn from_rounded(z: Complex64) -> (Self, f64) {
        let (r, i) = (z.re.round(), z.im.round());
        let dev = (z.re - r).abs().max((z.im - i).abs());
        (Complex::new(BigInt::from(r as i128), BigInt::from(i as i128)), dev)
    }
}

/// A Laurent polynomial `Σ c_j z^(offset + j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    offset: i64,
    coeffs: Vec<C>,
}

/// Laurent polynomial with arbitrary-precision integer coefficients.
pub type IntLaurentPoly = LaurentPoly<BigInt>;
/// Laurent polynomial with Gaussian-integer coefficients.
pub type GaussLaurentPoly = LaurentPoly<GaussInt>;

impl<C: Coeff> LaurentPoly<C> {
    /// Builds `Σ coeffs[j] z^(offset + j)`, trimming zero ends.
    pub fn new(offset: i64, mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            offset: offset + lead as i64,
            coeffs,
        }
    }

    /// An ordinary polynomial with the given coefficients, constant term first.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        Self::new(0, coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(0, coeffs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    /// The monomial `c z^k`.
    pub fn monomial(c: C, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first stored coefficient.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Number of stored coefficients, `max_exp - min_exp + 1`.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest exponent with a nonzero coefficient. Zero for the zero polynomial.
    pub fn max_exp(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.offset + self.coeffs.len() as i64 - 1
        }
    }

    /// Length of an ordinary polynomial, `1 + deg`.
    pub fn len(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            (self.max_exp() + 1).max(0) as usize
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.offset >= 0
    }

    /// Coefficient of `z^exp`.
    pub fn coeff(&self, exp: i64) -> C {
        let idx = exp - self.offset;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            C::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Coefficients `c_0 .. c_{deg}` of an ordinary polynomial.
    pub fn dense(&self) -> Result<Vec<C>> {
        if !self.is_polynomial() {
            return Err(Error::NotAPolynomial {
                offset: self.offset,
            });
        }
        Ok((0..self.len() as i64).map(|e| self.coeff(e)).collect())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Exact product by direct convolution.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let offset = self.offset + other.offset;
        if let Some(v) = small_convolution(&self.coeffs, &other.coeffs) {
            return Self::new(offset, v);
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let acc = std::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = acc + a.clone() * b.clone();
            }
        }
        Self::new(offset, out)
    }

    /// Product through a floating-point FFT, rounded back to the ring.
    ///
    /// Fails with [`Error::RoundingUnsafe`] when the inputs are too large for
    /// `f64` convolution or any coefficient lands `>= 1e-6` from the ring.
    pub fn mul_fast(&self, other: &Self) -> Result<Self> {
        self.mul_fast_with_deviation(other).map(|(p, _)| p)
    }

    /// Like [`mul_fast`](Self::mul_fast), also reporting the largest
    /// pre-rounding deviation seen.
    pub fn mul_fast_with_deviation(&self, other: &Self) -> Result<(Self, f64)> {
        if self.is_zero() || other.is_zero() {
            return Ok((Self::zero(), 0.0));
        }
        let a = to_complex(&self.coeffs)?;
        let b = to_complex(&other.coeffs)?;
        let max_a = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let max_b = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let bound = max_a * max_b * a.len().min(b.len()) as f64;
        if !(bound < FFT_MAGNITUDE_LIMIT) {
            return Err(Error::RoundingUnsafe {
                deviation: f64::INFINITY,
            });
        }
        let out_len = a.len() + b.len() - 1;
        let n = out_len.next_power_of_two();
        let mut planner = FftPlanner::<f64>::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let mut fa = a;
        fa.resize(n, Complex64::zero());
        let mut fb = b;
        fb.resize(n, Complex64::zero());
        fwd.process(&mut fa);
        fwd.process(&mut fb);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x *= *y;
        }
        inv.process(&mut fa);
        let scale = 1.0 / n as f64;
        let mut max_dev = 0.0f64;
        let mut out = Vec::with_capacity(out_len);
        for z in &fa[..out_len] {
            let (c, dev) = C::from_rounded(*z * scale);
            max_dev = max_dev.max(dev);
            out.push(c);
        }
        if max_dev >= FFT_ROUNDING_GUARD {
            return Err(Error::RoundingUnsafe { deviation: max_dev });
        }
        Ok((Self::new(self.offset + other.offset, out), max_dev))
    }

    /// FFT product when it rounds safely, exact convolution otherwise.
    pub fn mul_auto(&self, other: &Self) -> Self {
        self.mul_fast(other).unwrap_or_else(|_| self.mul(other))
    }

    /// `f†(z) = z^deg f · conj(f(1/z))`: coefficients conjugated and reversed.
    ///
    /// Defined for ordinary polynomials (no negative exponents). The result
    /// has the same degree as `self` exactly when the constant coefficient
    /// is nonzero.
    pub fn conj_reciprocal(&self) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(Error::NotAPolynomial {
                offset: self.offset,
            });
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let coeffs = self.coeffs.iter().rev().map(Coeff::conj).collect();
        Ok(Self::new(0, coeffs))
    }

    /// `f(-z)`.
    pub fn alternate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if (self.offset + j as i64).rem_euclid(2) == 1 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect();
        Self::new(self.offset, coeffs)
    }

    /// `conj(f(z))` on the unit circle: conjugated coefficients, negated exponents.
    pub fn laurent_conj(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().rev().map(Coeff::conj).collect();
        Self::new(-self.max_exp(), coeffs)
    }

    /// The constant coefficient, i.e. the mean over the unit circle.
    pub fn integral(&self) -> C {
        self.coeff(0)
    }

    /// `‖f‖₂² = Σ |c_j|²`.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(Coeff::norm_sq).sum()
    }

    /// `‖f‖₄⁴ = ‖f · conj f‖₂²`, the energy of the aperiodic autocorrelation.
    pub fn norm4_4(&self) -> BigInt {
        self.mul(&self.laurent_conj()).norm2_sq()
    }

    /// True when every coefficient of an ordinary polynomial is ±1.
    pub fn is_littlewood(&self) -> bool {
        let one = C::one();
        let minus = -C::one();
        self.offset == 0 && self.coeffs.iter().all(|c| *c == one || *c == minus)
    }
}

impl IntLaurentPoly {
    /// Embeds an integer polynomial into the Gaussian integers.
    pub fn to_gaussian(&self) -> GaussLaurentPoly {
        LaurentPoly {
            offset: self.offset,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::new(c.clone(), BigInt::zero()))
                .collect(),
        }
    }
}

impl GaussLaurentPoly {
    /// The real-coefficient polynomial, if every imaginary part vanishes.
    pub fn to_real(&self) -> Option<IntLaurentPoly> {
        if self.coeffs.iter().any(|c| !c.im.is_zero()) {
            return None;
        }
        Some(LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c.re.clone()).collect(),
        })
    }
}

fn to_complex<C: Coeff>(coeffs: &[C]) -> Result<Vec<Complex64>> {
    const EXACT: i64 = 1 << 53;
    coeffs
        .iter()
        .map(|c| match c.to_i64_parts() {
            Some((re, im)) if re.abs() <= EXACT && im.abs() <= EXACT => {
                Ok(Complex64::new(re as f64, im as f64))
            }
            _ => Err(Error::RoundingUnsafe {
                deviation: f64::INFINITY,
            }),
        })
        .collect()
}

/// Convolution in machine integers when every coefficient and every partial
/// sum fit comfortably in `i128`.
fn small_convolution<C: Coeff>(a: &[C], b: &[C]) -> Option<Vec<C>> {
    const LIMIT: i64 = 1 << 40;
    let parts = |v: &[C]| -> Option<Vec<(i128, i128)>> {
        v.iter()
            .map(|c| {
                let (re, im) = c.to_i64_parts()?;
                (re.abs() < LIMIT && im.abs() < LIMIT).then_some((re as i128, im as i128))
            })
            .collect()
    };
    if a.len().min(b.len()) > 1 << 20 {
        return None;
    }
    let (pa, pb) = (parts(a)?, parts(b)?);
    let mut out = vec![(0i128, 0i128); a.len() + b.len() - 1];
    for (i, &(ar, ai)) in pa.iter().enumerate() {
        if ar == 0 && ai == 0 {
            continue;
        }
        for (j, &(br, bi)) in pb.iter().enumerate() {
            let o = &mut out[i + j];
            o.0 += ar * br - ai * bi;
            o.1 += ar * bi + ai * br;
        }
    }
    Some(out.into_iter().map(|(r, i)| C::from_i128_parts(r, i)).collect())
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = self.max_exp().max(rhs.max_exp());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        LaurentPoly::mul(self, rhs)
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + j as i64;
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntLaurentPoly {
        IntLaurentPoly::from_i64s(c)
    }

    fn g(parts: &[(i64, i64)]) -> GaussLaurentPoly {
        GaussLaurentPoly::from_coeffs(
            parts
                .iter()
                .map(|&(r, i)| Complex::new(BigInt::from(r), BigInt::from(i)))
                .collect(),
        )
    }

    #[test]
    fn trimming_is_canonical() {
        let a = IntLaurentPoly::new(-2, vec![0.into(), 0.into(), 3.into(), 0.into()]);
        assert_eq!(a.offset(), 0);
        assert_eq!(a.coeffs(), &[BigInt::from(3)]);
        assert!(IntLaurentPoly::new(5, vec![0.into(); 4]).is_zero());
        assert_eq!(IntLaurentPoly::new(5, vec![0.into(); 4]), IntLaurentPoly::zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[1, 1]).mul(&p(&[1, -1])), p(&[1, 0, -1]));
        assert_eq!(
            p(&[1, 1, 1, 1]).mul(&p(&[1, -1, 1, -1])),
            p(&[1, 0, 1, 0, -1, 0, -1])
        );
        assert!(p(&[1, 2, 3]).mul(&IntLaurentPoly::zero()).is_zero());
        let a = IntLaurentPoly::new(-3, vec![1.into(), 2.into()]);
        let b = IntLaurentPoly::new(2, vec![1.into()]);
        assert_eq!(a.mul(&b).offset(), -1);
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let big: BigInt = BigInt::from(1u8) << 100u32;
        let a = IntLaurentPoly::from_coeffs(vec![big.clone(), 1.into()]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeffs()[0], &big * &big);
        assert_eq!(sq.coeffs()[1], &big * 2);
    }

    #[test]
    fn mul_fast_matches_examples() {
        for (a, b) in [
            (p(&[1, 1]), p(&[1, -1])),
            (p(&[1, 1, 1, 1]), p(&[1, -1, 1, -1])),
            (p(&[1, 2, 3]), IntLaurentPoly::zero()),
        ] {
            assert_eq!(a.mul_fast(&b).unwrap(), a.mul(&b));
        }
        let a = g(&[(1, 2), (0, -1), (3, 0)]);
        let b = g(&[(2, -1), (1, 1)]);
        assert_eq!(a.mul_fast(&b).unwrap(), a.mul(&b));
    }

    #[test]
    fn mul_fast_rejects_huge_coefficients() {
        let huge = IntLaurentPoly::from_coeffs(vec![BigInt::from(1i64 << 60); 8]);
        assert!(matches!(
            huge.mul_fast(&huge),
            Err(Error::RoundingUnsafe { .. })
        ));
        let wide = IntLaurentPoly::from_coeffs(vec![BigInt::from((1i64 << 53) + 1); 2]);
        assert!(wide.mul_fast(&wide).is_err());
        assert_eq!(huge.mul_auto(&huge), huge.mul(&huge));
    }

    #[test]
    fn conj_reciprocal_examples() {
        assert_eq!(p(&[1, 1, -1]).conj_reciprocal().unwrap(), p(&[-1, 1, 1]));
        assert_eq!(p(&[1, -1, 1]).conj_reciprocal().unwrap(), p(&[1, -1, 1]));
        let a = p(&[2, 0, 5, -1]);
        assert_eq!(a.conj_reciprocal().unwrap().conj_reciprocal().unwrap(), a);
        // zero constant coefficient drops the degree
        let b = p(&[0, 1, 1]);
        assert_eq!(b.conj_reciprocal().unwrap(), p(&[1, 1]));
        let err = IntLaurentPoly::new(-1, vec![1.into()]).conj_reciprocal();
        assert!(matches!(err, Err(Error::NotAPolynomial { offset: -1 })));
        let c = g(&[(1, 0), (0, 1)]);
        assert_eq!(c.conj_reciprocal().unwrap(), g(&[(0, -1), (1, 0)]));
    }

    #[test]
    fn alternate_examples() {
        assert_eq!(p(&[1, 1, 1, 1]).alternate(), p(&[1, -1, 1, -1]));
        let a = p(&[3, -1, 4, 1, -5]);
        assert_eq!(a.alternate().alternate(), a);
        let even = p(&[1, 0, 1, 0, -1, 0, -1]);
        assert_eq!(even.alternate(), even);
        let l = IntLaurentPoly::new(-1, vec![1.into(), 1.into()]);
        assert_eq!(l.alternate(), IntLaurentPoly::new(-1, vec![(-1).into(), 1.into()]));
    }

    #[test]
    fn laurent_conj_examples() {
        assert_eq!(
            p(&[1, 2]).laurent_conj(),
            IntLaurentPoly::new(-1, vec![2.into(), 1.into()])
        );
        let pal = IntLaurentPoly::new(-1, vec![1.into(), 3.into(), 1.into()]);
        assert_eq!(pal.laurent_conj(), pal);
        let c = g(&[(1, 1), (2, -3)]).shift(-4);
        assert_eq!(c.laurent_conj().laurent_conj(), c);
    }

    #[test]
    fn integral_examples() {
        let a = p(&[1, 0, -1]);
        assert_eq!(a.mul(&a.laurent_conj()).integral(), BigInt::from(2));
        let b = IntLaurentPoly::new(-1, vec![1.into(), 0.into(), 1.into()]);
        assert_eq!(b.integral(), BigInt::from(0));
        let c = p(&[3, -2, 7, 1]);
        assert_eq!(c.mul(&c.laurent_conj()).integral(), c.norm2_sq());
    }

    #[test]
    fn norms() {
        assert_eq!(p(&[1, -1, -1, 1, -1]).norm2_sq(), BigInt::from(5));
        assert_eq!(p(&[1, 1, 1, 1]).norm4_4(), BigInt::from(44));
        assert_eq!(p(&[1, 1]).norm4_4(), BigInt::from(6));
        assert_eq!(p(&[1, 1, 1, -1]).norm4_4(), BigInt::from(20));
        assert_eq!(IntLaurentPoly::zero().norm2_sq(), BigInt::from(0));
        assert_eq!(IntLaurentPoly::zero().norm4_4(), BigInt::from(0));
        assert_eq!(g(&[(1, 1)]).norm2_sq(), BigInt::from(2));
    }

    #[test]
    fn gaussian_round_trip() {
        let a = p(&[1, -2, 3]);
        assert_eq!(a.to_gaussian().to_real(), Some(a));
        assert_eq!(g(&[(0, 1)]).to_real(), None);
    }
}
