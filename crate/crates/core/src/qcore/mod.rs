//! q-Pochhammer symbols, q-gamma, h-products and q-Bessel functions.

mod bessel;
mod gamma;
mod hprod;
mod pochhammer;
mod scaled;

pub use bessel::{qbessel_j1, qbessel_j2, qbessel_series, BesselKind};
pub use gamma::{qgamma, qgamma_recip};
pub(crate) use gamma::qgamma_recip_scaled;
pub use hprod::{h_multi, h_product, h_product_scaled};
pub use pochhammer::{
    product_ratio, qpoch_fin, qpoch_general_index, qpoch_inf, qpoch_inf_scaled, qpoch_multi, PochIndex,
};
pub use scaled::Scaled;


use crate::error::{QError, QResult};
use serde::Serialize;

pub type CNum = num_complex::Complex64;

/// Default relative truncation tolerance for infinite products and series.
pub const DEFAULT_EPS: f64 = 1.1102230246251565e-16;
/// Default cap on the number of factors or terms.
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;
/// A factor `1 - t` is treated as an exact zero below this relative size.
pub const ZERO_TOL: f64 = 1e-14;

/// A base `0 < q < 1` together with the truncation policy used with it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QBase {
    q: f64,
    ln_q: f64,
    eps: f64,
    max_terms: usize,
}

impl QBase {
    pub fn new(q: f64) -> QResult<Self> {
        Self::with_tolerance(q, DEFAULT_EPS, DEFAULT_MAX_TERMS)
    }

    pub fn with_tolerance(q: f64, eps: f64, max_terms: usize) -> QResult<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::InvalidBase(q));
        }
        if !(eps > 0.0) || max_terms == 0 {
            return Err(QError::InvalidConfig(format!("eps {eps}, max_terms {max_terms}")));
        }
        Ok(QBase { q, ln_q: q.ln(), eps, max_terms })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `ln q`, negative.
    pub fn ln_q(&self) -> f64 {
        self.ln_q
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// The base `q^2` with the same truncation policy.
    pub fn squared(&self) -> QBase {
        QBase { q: self.q * self.q, ln_q: 2.0 * self.ln_q, ..*self }
    }

    /// `q^w` for complex `w`.
    pub fn pow(&self, w: CNum) -> CNum {
        (w * self.ln_q).exp()
    }

    /// `q^x` for real `x`.
    pub fn powf(&self, x: f64) -> f64 {
        (x * self.ln_q).exp()
    }
}

/// How a truncated infinite product or series was cut off.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Default)]
pub struct TruncationReceipt {
    pub terms_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
    /// Sum of the magnitudes of the terms added up (0 for products).
    /// Rounding error of a sum is about `eps * abs_sum`.
    pub abs_sum: f64,
}

impl TruncationReceipt {
    pub fn exact(terms_used: usize) -> Self {
        TruncationReceipt { terms_used, tail_bound: 0.0, converged: true, abs_sum: 0.0 }
    }

    /// Combine receipts of independent pieces of one computation.
    pub fn merge(self, other: TruncationReceipt) -> Self {
        TruncationReceipt {
            terms_used: self.terms_used + other.terms_used,
            tail_bound: self.tail_bound + other.tail_bound,
            converged: self.converged && other.converged,
            abs_sum: self.abs_sum + other.abs_sum,
        }
    }
}

impl TruncationReceipt {
    /// `abs_sum / |value|`, at least 1.
    pub fn conditioning(&self, value: CNum) -> f64 {
        condition_ratio(self.abs_sum, value)
    }
}

/// `mass / |value|` clamped below at 1; infinite for a zero value with
/// nonzero mass.
pub fn condition_ratio(mass: f64, value: CNum) -> f64 {
    let v = value.norm();
    if mass <= v {
        1.0
    } else if v > 0.0 {
        mass / v
    } else {
        f64::INFINITY
    }
}

/// Principal power `z^w`, with `0^w = 0` for `Re w > 0`.
pub fn cpow(z: CNum, w: CNum) -> CNum {
    if z == CNum::new(0.0, 0.0) {
        return if w.re > 0.0 { z } else if w == z { CNum::new(1.0, 0.0) } else { CNum::new(f64::INFINITY, 0.0) };
    }
    (w * z.ln()).exp()
}

pub(crate) fn is_zero_factor(f: CNum, t: CNum) -> bool {
    f.norm() < ZERO_TOL * (1.0 + t.norm())
}

pub fn finite(z: CNum, what: &'static str) -> QResult<CNum> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(QError::NonFinite(what))
    }
}

/// Convenience constructor for complex literals.
pub fn c(re: f64, im: f64) -> CNum {
    CNum::new(re, im)
}
