//! Popcount kernels for the limiting demerit factors of ±1 seeds.
//!
//! For packed sequences `x`, `y` the correlation at shift `s ≥ 0` is
//! `(ℓ - s) - 2·popcount(((x >> s) ^ y) & mask(ℓ - s))`, and the sum of its
//! squares over all shifts is `‖x · ȳ‖₂²`. Every quantity in the closed
//! forms is one such energy, except `w`, which is a dot product of the
//! (even-indexed) coefficients of `f f̃` and `g g̃`.
//!
//! Energies are unchanged by reversing both arguments, so the hex-order bit
//! layout of [`LittlewoodSeq`] can be used as is.

use std::cmp::Ordering;

use crate::littlewood::{low_mask, LittlewoodSeq};

#[inline]
fn one_sided(len: usize, x: u64, y: u64, from: usize) -> i64 {
    let mut e = 0i64;
    for s in from..len {
        let overlap = len - s;
        let c = overlap as i64 - 2 * (((x >> s) ^ y) & low_mask(overlap)).count_ones() as i64;
        e += c * c;
    }
    e
}

/// `Σ_s C_{x,y}(s)²` over all shifts.
#[inline]
pub fn correlation_energy(len: usize, x: u64, y: u64) -> i64 {
    one_sided(len, x, y, 0) + one_sided(len, y, x, 1)
}

/// `‖f‖₄⁴`, the autocorrelation energy.
#[inline]
pub fn norm4_4(f: LittlewoodSeq) -> i64 {
    let len = f.len();
    (len * len) as i64 + 2 * one_sided(len, f.bits(), f.bits(), 1)
}

/// `‖f f̃‖₂²`.
#[inline]
pub fn alt_product_energy(f: LittlewoodSeq) -> i64 {
    correlation_energy(f.len(), f.bits(), f.alternate().reverse().bits())
}

/// `‖f‖₄⁴ + ‖f f̃‖₂²`; the limiting ADF is `(2K - 3ℓ²) / (3ℓ²)`.
#[inline]
pub fn adf_key(f: LittlewoodSeq) -> i64 {
    norm4_4(f) + alt_product_energy(f)
}

/// `3ℓ² · ADF_∞(f) = 2K - 3ℓ²`.
#[inline]
pub fn adf_numerator(len: usize, key: i64) -> i64 {
    2 * key - 3 * (len * len) as i64
}

/// Even-indexed coefficients of `f(z) f(-z)` (the odd ones vanish).
pub fn alt_product_even_coeffs(f: LittlewoodSeq) -> Vec<i32> {
    let len = f.len();
    let s = f.signs();
    let mut out = vec![0i32; len];
    for i in 0..len {
        for j in 0..len {
            if (i + j) % 2 == 0 {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                out[(i + j) / 2] += sign * i32::from(s[i]) * i32::from(s[j]);
            }
        }
    }
    out
}

/// What the pair kernels need about one seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedStats {
    pub seq: LittlewoodSeq,
    pub key: i64,
    reversed: u64,
    reversed_alt: u64,
    alt_coeffs: Vec<i32>,
}

impl SeedStats {
    pub fn new(seq: LittlewoodSeq) -> Self {
        SeedStats {
            seq,
            key: adf_key(seq),
            reversed: seq.reverse().bits(),
            reversed_alt: seq.alternate().reverse().bits(),
            alt_coeffs: alt_product_even_coeffs(seq),
        }
    }

    /// `3ℓ² · ADF_∞`.
    pub fn adf_numerator(&self) -> i64 {
        adf_numerator(self.seq.len(), self.key)
    }
}

/// `(u, v, w)` of two seeds in machine integers.
#[inline]
pub fn uvw(f: &SeedStats, g: &SeedStats) -> (i64, i64, i64) {
    let len = f.seq.len();
    let a = f.seq.bits();
    let u = correlation_energy(len, a, g.reversed);
    let v = correlation_energy(len, a, g.reversed_alt);
    let w = f
        .alt_coeffs
        .iter()
        .zip(&g.alt_coeffs)
        .map(|(&x, &y)| i64::from(x) * i64::from(y))
        .sum();
    (u, v, w)
}

/// `3ℓ² · CDF_∞(f, g) = 2u + v + w`.
#[inline]
pub fn cdf_numerator(f: &SeedStats, g: &SeedStats) -> i64 {
    let (u, v, w) = uvw(f, g);
    2 * u + v + w
}

/// Limiting PSC scaled by `3ℓ²`, as `p + √q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Score {
    pub p: i64,
    pub q: i128,
}

impl Score {
    pub fn adf(key: i64) -> Self {
        Score { p: key, q: 0 }
    }

    pub fn psc(f: &SeedStats, g: &SeedStats) -> Self {
        Score {
            p: cdf_numerator(f, g),
            q: i128::from(f.adf_numerator()) * i128::from(g.adf_numerator()),
        }
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_sqrt_sums(self.p, self.q, other.p, other.q)
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact comparison of `a + √b` with `c + √d` for `b, d ≥ 0`.
pub fn cmp_sqrt_sums(a: i64, b: i128, c: i64, d: i128) -> Ordering {
    assert!(b >= 0 && d >= 0, "square roots of negative numbers");
    // sign of t + (√b - √d)
    let t = i128::from(a) - i128::from(c);
    let s = b.cmp(&d);
    let t_sign = t.cmp(&0);
    if s == Ordering::Equal || t_sign == s {
        return if t_sign == Ordering::Equal { s } else { t_sign };
    }
    if t_sign == Ordering::Equal {
        return s;
    }
    // opposite signs: compare |t| with |√b - √d| via
    // t² - (√b - √d)² = (t² - b - d) + 2√(bd)
    let m = t * t - b - d;
    let t_wins = if m >= 0 {
        if m == 0 && (b == 0 || d == 0) {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    } else {
        (4 * b * d).cmp(&(m * m))
    };
    match t_wins {
        Ordering::Greater => t_sign,
        Ordering::Less => s,
        Ordering::Equal => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{limiting_adf, limiting_cdf, uvw_of};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_seq(rng: &mut ChaCha8Rng, len: usize) -> LittlewoodSeq {
        LittlewoodSeq::new(len, rng.gen::<u64>() & low_mask(len)).unwrap()
    }

    #[test]
    fn norms_match_exact_path() {
        for len in 1..=8 {
            for f in LittlewoodSeq::all(len) {
                let p = f.to_poly();
                assert_eq!(BigInt::from(norm4_4(f)), p.norm4_4());
                assert_eq!(
                    BigInt::from(alt_product_energy(f)),
                    p.mul(&p.alternate()).norm2_sq()
                );
            }
        }
    }

    #[test]
    fn adf_key_gives_limiting_adf() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let len = rng.gen_range(1..=40);
            let f = random_seq(&mut rng, len);
            let l2 = 3 * (len * len) as i64;
            let fast = BigRational::new(adf_numerator(len, adf_key(f)).into(), l2.into());
            assert_eq!(fast, limiting_adf(&f.to_poly()).unwrap());
        }
    }

    #[test]
    fn uvw_matches_exact_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let len = rng.gen_range(1..=30);
            let (f, g) = (random_seq(&mut rng, len), random_seq(&mut rng, len));
            let (sf, sg) = (SeedStats::new(f), SeedStats::new(g));
            let exact = uvw_of(&f.to_poly(), &g.to_poly()).unwrap();
            let (u, v, w) = uvw(&sf, &sg);
            assert_eq!((BigInt::from(u), BigInt::from(v), BigInt::from(w)), (exact.u, exact.v, exact.w));
            let l2 = 3 * (len * len) as i64;
            assert_eq!(
                BigRational::new(cdf_numerator(&sf, &sg).into(), l2.into()),
                limiting_cdf(&f.to_poly(), &g.to_poly()).unwrap()
            );
        }
    }

    #[test]
    fn full_length_sequences() {
        let f = LittlewoodSeq::new(64, 0x0123_4567_89AB_CDEF).unwrap();
        assert_eq!(BigInt::from(norm4_4(f)), f.to_poly().norm4_4());
    }

    fn as_f64(a: i64, b: i128) -> f64 {
        a as f64 + (b as f64).sqrt()
    }

    #[test]
    fn sqrt_comparison() {
        use Ordering::*;
        assert_eq!(cmp_sqrt_sums(1, 4, 3, 0), Equal);
        assert_eq!(cmp_sqrt_sums(0, 2, 1, 1), Less);
        assert_eq!(cmp_sqrt_sums(1, 2, 0, 5), Greater);
        assert_eq!(cmp_sqrt_sums(0, 8, 0, 2), Greater);
        assert_eq!(cmp_sqrt_sums(2, 2, 0, 8), Greater);
        assert_eq!(cmp_sqrt_sums(5, 0, 5, 0), Equal);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20_000 {
            let (a, c) = (rng.gen_range(-50..50), rng.gen_range(-50..50));
            let (b, d) = (rng.gen_range(0..3000i128), rng.gen_range(0..3000i128));
            let (x, y) = (as_f64(a, b), as_f64(c, d));
            let got = cmp_sqrt_sums(a, b, c, d);
            if (x - y).abs() > 1e-9 {
                assert_eq!(got, x.partial_cmp(&y).unwrap(), "{a} {b} {c} {d}");
            }
            assert_eq!(got, cmp_sqrt_sums(c, d, a, b).reverse());
        }
    }
}
