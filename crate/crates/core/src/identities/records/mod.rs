//! The identity records, grouped by the kind of evaluation they need.

mod antiperiodic;
mod askey;
mod fold;
mod intro;
mod psi88;

use super::{IdentityRecord, ParameterPoint};
use crate::qcore::CNum;

pub(crate) use antiperiodic::ap_gamma_rhs_parts;
pub(crate) use intro::ramanujan_integral_rhs;
pub(crate) use askey::{askey_product, eta_closed, eta_quadrature, ismail_masson_integral};

pub(super) fn all() -> Vec<IdentityRecord> {
    let mut v = Vec::new();
    v.extend(intro::records());
    v.extend(fold::records());
    v.extend(askey::records());
    v.extend(antiperiodic::records());
    v.extend(psi88::records());
    v
}

/// Smallest exponential decay rate, per unit of the integration variable,
/// the samplers accept for integrals over the real line.
pub(crate) const MIN_RATE: f64 = 0.2;

/// Smallest angle, in radians, kept between a parameter and the positive
/// real axis when it would otherwise put a pole on the integration path.
pub(crate) const ARG_MARGIN: f64 = 0.1;

pub(crate) fn g(p: &ParameterPoint, name: &str) -> Option<CNum> {
    p.get(name)
}

pub(crate) fn lnq(p: &ParameterPoint) -> f64 {
    -p.q.ln()
}

/// `z` is at least `margin` radians away from the positive real axis.
pub(crate) fn off_positive_axis(z: CNum, margin: f64) -> bool {
    z.norm() > 0.0 && z.arg().abs() >= margin
}

/// `v` is not within relative distance `1e-6` of any `q^k`, `k` integer.
pub(crate) fn off_lattice(v: CNum, q: f64) -> bool {
    let r = v.norm();
    if r == 0.0 || v.im.abs() > 1e-6 * r || v.re < 0.0 {
        return true;
    }
    let k = (v.re.ln() / q.ln()).round();
    (v - q.powf(k)).norm() > 1e-6 * r
}

pub(crate) fn all_off_lattice(vs: &[CNum], q: f64) -> bool {
    vs.iter().all(|&v| off_lattice(v, q))
}

/// Distance from `z` to the nearest integer.
pub(crate) fn int_dist(z: CNum) -> f64 {
    (z - CNum::new(z.re.round(), 0.0)).norm()
}

pub(crate) fn c(re: f64, im: f64) -> CNum {
    CNum::new(re, im)
}
