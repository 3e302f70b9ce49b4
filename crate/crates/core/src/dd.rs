//! Double-double arithmetic (about 32 significant digits).
//!
//! Only what the Mittag-Leffler series needs: the four operations, `exp`,
//! `ln`, and `ln Gamma` for real arguments, plus a minimal complex type.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

const HALF_LN_TWO_PI: DoubleDouble = DoubleDouble {
    hi: 0.918_938_533_204_672_8,
    lo: -3.878_294_158_067_241_4e-17,
};

// Bernoulli numbers B_2 .. B_30 as exact (numerator, denominator) pairs
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43_867.0, 798.0),
    (-174_611.0, 330.0),
    (854_513.0, 138.0),
    (-236_364_091.0, 2730.0),
    (8_553_103.0, 6.0),
    (-23_749_461_029.0, 870.0),
    (8_615_841_276_005.0, 14_322.0),
];

const STIRLING_MIN: f64 = 30.0;

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact product of two doubles.
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn recip_f64(self) -> f64 {
        (Self::ONE / self).to_f64()
    }

    #[cfg(test)]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 += self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }

    pub fn add_f64(self, b: f64) -> Self {
        let (s1, mut s2) = two_sum(self.hi, b);
        s2 += self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }

    /// Multiply by `2^k` (exact unless the result leaves the normal range).
    pub fn ldexp(self, k: i32) -> Self {
        let mut out = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            out = Self {
                hi: out.hi * f,
                lo: out.lo * f,
            };
            k -= step;
        }
        out
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::new(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2.mul_f64(k)).ldexp(-10);
        // expm1 by Taylor series, then undo the 2^-10 scaling with s -> s(s+2)
        let mut s = r;
        let mut p = r;
        for i in 2..=12 {
            p = (p * r) / Self::new(i as f64);
            s = s + p;
            if p.hi.abs() < 1e-36 * s.hi.abs() {
                break;
            }
        }
        for _ in 0..10 {
            s = s * s.add_f64(2.0);
        }
        s.add_f64(1.0).ldexp(k as i32)
    }

    /// Natural logarithm for positive arguments (one Newton step from f64).
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let x = Self::new(self.hi.ln());
        x + self * (-x).exp() - Self::ONE
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, mut s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        s2 += t1;
        let (s1, mut s2) = quick_two_sum(s1, s2);
        s2 += t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }.add_f64(q3)
    }
}

/// `ln Gamma(x)` for `x >= STIRLING_MIN` by the Stirling series.
fn ln_gamma_stirling(x: DoubleDouble) -> DoubleDouble {
    let inv = DoubleDouble::ONE / x;
    let inv2 = inv * inv;
    let mut sum = DoubleDouble::ZERO;
    let mut pow = inv;
    for (n, (num, den)) in BERNOULLI.iter().enumerate() {
        let two_n = 2.0 * (n + 1) as f64;
        let c = DoubleDouble::new(*num) / DoubleDouble::new(den * two_n * (two_n - 1.0));
        let term = c * pow;
        sum = sum + term;
        if term.hi.abs() < 1e-34 {
            break;
        }
        pow = pow * inv2;
    }
    (x.add_f64(-0.5)) * x.ln() - x + HALF_LN_TWO_PI + sum
}

/// `Gamma(x)` for `x >= 20` rounded from double-double.
pub(crate) fn gamma_large(x: f64) -> f64 {
    debug_assert!(x >= 20.0);
    let (pre, lg) = rgamma_parts(DoubleDouble::new(x));
    ((-lg).exp() * pre).recip_f64()
}

/// `ln Gamma(x)` for `x >= 20`.
pub(crate) fn ln_gamma_large(x: f64) -> f64 {
    let (pre, lg) = rgamma_parts(DoubleDouble::new(x));
    (lg - pre.ln()).to_f64()
}

/// Reciprocal gamma split as `prefactor * exp(-log_part)`, so that callers can
/// fold extra scaling into the exponent before exponentiating.
///
/// Zero prefactor at the poles of Gamma (exact when `x` is exactly an integer).
pub(crate) fn rgamma_parts(x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let mut prefactor = DoubleDouble::ONE;
    let mut y = x;
    while y.hi < STIRLING_MIN {
        prefactor = prefactor * y;
        y = y.add_f64(1.0);
    }
    (prefactor, ln_gamma_stirling(y))
}

/// `k^e` for a nonnegative integer `k`.
pub(crate) fn int_pow(k: usize, e: DoubleDouble) -> DoubleDouble {
    match k {
        0 => DoubleDouble::ZERO,
        1 => DoubleDouble::ONE,
        _ => (DoubleDouble::new(k as f64).ln() * e).exp(),
    }
}

/// `Gamma(a) / Gamma(b)` for positive `a`, `b`.
pub(crate) fn gamma_ratio(a: DoubleDouble, b: DoubleDouble) -> DoubleDouble {
    let (pa, la) = rgamma_parts(a);
    let (pb, lb) = rgamma_parts(b);
    (pb / pa) * (la - lb).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct ComplexDD {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDD {
    pub const ZERO: Self = Self {
        re: DoubleDouble::ZERO,
        im: DoubleDouble::ZERO,
    };
    pub const ONE: Self = Self {
        re: DoubleDouble::ONE,
        im: DoubleDouble::ZERO,
    };

    pub fn from_c64(z: Complex64) -> Self {
        Self {
            re: DoubleDouble::new(z.re),
            im: DoubleDouble::new(z.im),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_approx(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    pub fn scale(self, s: DoubleDouble) -> Self {
        Self {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn ldexp(self, k: i32) -> Self {
        Self {
            re: self.re.ldexp(k),
            im: self.im.ldexp(k),
        }
    }
}

impl Add for ComplexDD {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Mul for ComplexDD {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Self {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_ln_round_trip() {
        for x in [-40.0, -3.5, -1e-3, 0.0, 0.7, 12.25, 300.0] {
            let d = DoubleDouble::new(x);
            let back = d.exp().ln();
            assert!((back - d).abs().hi <= 1e-30 * x.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn exp_one_matches_e_to_double_double() {
        // e = 2.718281828459045 + 1.4456468917292502e-16
        let e = DoubleDouble::ONE.exp();
        assert_eq!(e.hi, std::f64::consts::E);
        assert!((e.lo - 1.445_646_891_729_250_2e-16).abs() < 1e-31);
    }

    #[test]
    fn ln_gamma_integer_arguments() {
        // ln(40!) from the exact factorial built in double-double
        let mut f = DoubleDouble::ONE;
        for k in 2..=40 {
            f = f.mul_f64(k as f64);
        }
        let (pre, lg) = rgamma_parts(DoubleDouble::new(41.0));
        assert_eq!(pre, DoubleDouble::ONE);
        let d = (lg - f.ln()).abs().hi;
        assert!(d < 1e-28, "diff {d:e}");
        // shifted path: Gamma(5) = 24
        let (pre, lg) = rgamma_parts(DoubleDouble::new(5.0));
        let g = DoubleDouble::ONE / (pre * (-lg).exp());
        assert!((g.add_f64(-24.0)).abs().hi < 1e-27);
    }

    #[test]
    fn powers_and_gamma_ratio() {
        let half = DoubleDouble::new(0.5);
        let r = int_pow(9, half).add_f64(-3.0);
        assert!(r.abs().hi < 1e-30);
        // Gamma(4.5) / Gamma(2.5) = 3.5 * 2.5
        let g = gamma_ratio(DoubleDouble::new(4.5), DoubleDouble::new(2.5));
        assert!(g.add_f64(-8.75).abs().hi < 1e-29);
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        let (pre, _) = rgamma_parts(DoubleDouble::new(-3.0));
        assert_eq!(pre.hi, 0.0);
    }
}
