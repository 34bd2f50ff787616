//! Complex numbers with a detached power-of-two exponent.
//!
//! Products such as `(a;q)_inf` with `|a| ~ q^-60` overflow `f64` long
//! before the ratios built from them do. Intermediate values are kept as
//! `mant * 2^exp2` and only collapsed at the end.

use super::CNum;
use std::ops::{Div, Mul};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    mant: CNum,
    exp2: i64,
}

const LN2: f64 = std::f64::consts::LN_2;

pub(crate) fn ldexp(x: f64, e: i64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    if e > 2200 {
        return x * f64::INFINITY;
    }
    if e < -2200 {
        return 0.0;
    }
    let mut v = x;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mant: CNum::new(0.0, 0.0), exp2: 0 };
    pub const ONE: Scaled = Scaled { mant: CNum::new(1.0, 0.0), exp2: 0 };

    pub fn new(z: CNum) -> Self {
        Scaled { mant: z, exp2: 0 }.normalized()
    }

    /// `e^z` without overflow.
    pub fn exp(z: CNum) -> Self {
        let k = (z.re / LN2).floor();
        let r = z.re - k * LN2;
        Scaled { mant: CNum::from_polar(r.exp(), z.im), exp2: k as i64 }
    }

    pub(crate) fn from_parts(mant: CNum, exp2: i64) -> Self {
        Scaled { mant, exp2 }.normalized()
    }

    pub fn mantissa(&self) -> CNum {
        self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp2
    }

    pub fn is_zero(&self) -> bool {
        self.mant.re == 0.0 && self.mant.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mant.re.is_finite() && self.mant.im.is_finite()
    }

    pub(crate) fn normalized(self) -> Self {
        let m = self.mant.re.abs().max(self.mant.im.abs());
        if m == 0.0 || !m.is_finite() {
            return if m == 0.0 { Scaled::ZERO } else { self };
        }
        let e = m.log2().floor() as i64;
        Scaled { mant: CNum::new(ldexp(self.mant.re, -e), ldexp(self.mant.im, -e)), exp2: self.exp2 + e }
    }

    /// Multiply by a plain complex number, renormalizing only when the
    /// mantissa drifts far from 1.
    #[inline]
    pub fn mul_c(self, z: CNum) -> Self {
        let s = Scaled { mant: self.mant * z, exp2: self.exp2 };
        let n = s.mant.norm_sqr();
        if !(1e-200..=1e200).contains(&n) {
            s.normalized()
        } else {
            s
        }
    }

    #[inline]
    pub fn div_c(self, z: CNum) -> Self {
        let s = Scaled { mant: self.mant / z, exp2: self.exp2 };
        let n = s.mant.norm_sqr();
        if !(1e-200..=1e200).contains(&n) {
            s.normalized()
        } else {
            s
        }
    }

    pub fn recip(self) -> Self {
        Scaled { mant: self.mant.inv(), exp2: -self.exp2 }.normalized()
    }

    pub fn to_complex(self) -> CNum {
        CNum::new(ldexp(self.mant.re, self.exp2), ldexp(self.mant.im, self.exp2))
    }

    /// `log2 |value|`, `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mant.norm().log2() + self.exp2 as f64
    }

    /// Complex logarithm (principal branch of the mantissa).
    pub fn ln(&self) -> CNum {
        self.mant.ln() + CNum::new(self.exp2 as f64 * LN2, 0.0)
    }

    pub fn add(self, other: Scaled) -> Scaled {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp2 >= other.exp2 { (self, other) } else { (other, self) };
        let d = lo.exp2 - hi.exp2;
        if d < -1100 {
            return hi;
        }
        let lo_m = CNum::new(ldexp(lo.mant.re, d), ldexp(lo.mant.im, d));
        Scaled { mant: hi.mant + lo_m, exp2: hi.exp2 }.normalized()
    }

    pub fn neg(self) -> Scaled {
        Scaled { mant: -self.mant, exp2: self.exp2 }
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant * rhs.mant, exp2: self.exp2 + rhs.exp2 }.normalized()
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant / rhs.mant, exp2: self.exp2 - rhs.exp2 }.normalized()
    }
}

impl From<CNum> for Scaled {
    fn from(z: CNum) -> Self {
        Scaled::new(z)
    }
}

impl From<f64> for Scaled {
    fn from(x: f64) -> Self {
        Scaled::new(CNum::new(x, 0.0))
    }
}
