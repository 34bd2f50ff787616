use super::{cpow, finite, pochhammer::qpoch_inf_scaled, CNum, QBase, Scaled};
use crate::error::{QError, QResult};

/// Jackson's two q-Bessel functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BesselKind {
    /// `J^(1)_nu`, defined for `|x| < 2`.
    First,
    /// `J^(2)_nu`, entire in `x`.
    Second,
}

/// The power series part of the q-Bessel functions,
///
/// `S(nu,x) = sum_m (-1)^m (x/2)^(2m) (q^(nu+1+m);q)_inf / ((q;q)_m (q;q)_inf)`
///
/// with an extra `q^(m(nu+m))` in each term for [`BesselKind::Second`], so
/// that `J_nu(x) = (x/2)^nu S(nu,x)`. `S` is entire in `nu` and has no
/// branch cut, which makes it the right object to integrate over the order.
pub fn qbessel_series(kind: BesselKind, nu: CNum, x: CNum, q: &QBase) -> QResult<Scaled> {
    let half = x / 2.0;
    if kind == BesselKind::First && half.norm() >= 1.0 {
        return Err(QError::OutsideDisk { z_abs: half.norm() });
    }
    let w = -(half * half);
    let qq = q.q();
    let (qinf, _) = qpoch_inf_scaled(CNum::new(qq, 0.0), q)?;
    let shift = q.pow(nu + 1.0);
    let (mut pm, _) = qpoch_inf_scaled(shift, q)?;
    let mut qm = Scaled::ONE;
    let mut wm = Scaled::ONE;
    let mut sum = Scaled::ZERO;
    let mut small = 0;
    let log2_eps = q.eps().log2();
    let mut qpow_m = 1.0;
    for m in 0..q.max_terms() {
        let mut term = wm * pm / qm;
        if kind == BesselKind::Second {
            let mf = m as f64;
            term = term * Scaled::exp(mf * (nu + mf) * q.ln_q());
        }
        sum = sum.add(term);
        if term.is_zero() || term.log2_abs() <= log2_eps + sum.log2_abs() {
            small += 1;
            if small >= 3 && m >= 2 {
                if !sum.is_finite() {
                    return Err(QError::NonFinite("q-Bessel series"));
                }
                return Ok(sum / qinf);
            }
        } else {
            small = 0;
        }
        let t = shift * qpow_m;
        let f = CNum::new(1.0, 0.0) - t;
        if pm.is_zero() || super::is_zero_factor(f, t) {
            pm = qpoch_inf_scaled(t * qq, q)?.0;
        } else {
            pm = pm.div_c(f);
        }
        qpow_m *= qq;
        qm = qm.mul_c(CNum::new(1.0 - qpow_m, 0.0));
        wm = wm.mul_c(w);
    }
    Err(QError::NonConvergence { what: "q-Bessel series", terms: q.max_terms() })
}

fn bessel(kind: BesselKind, nu: CNum, x: CNum, q: &QBase) -> QResult<CNum> {
    let integral = nu.im == 0.0 && nu.re == nu.re.round();
    if x.im == 0.0 && x.re < 0.0 && !integral {
        return Err(QError::BranchAmbiguity);
    }
    if x == CNum::new(0.0, 0.0) && nu.re <= 0.0 && nu != CNum::new(0.0, 0.0) {
        return Err(QError::OutsideDomain("q-Bessel at x = 0 with Re(nu) <= 0".into()));
    }
    let s = qbessel_series(kind, nu, x, q)?;
    let p = if integral && x.im == 0.0 && x.re < 0.0 {
        let n = nu.re as i32;
        CNum::new((x.re / 2.0).powi(n), 0.0)
    } else {
        cpow(x / 2.0, nu)
    };
    finite(s.to_complex() * p, "q-Bessel")
}

/// Jackson's `J^(1)_nu(x;q)`, for `|x| < 2`. Non-integer orders on the
/// negative real axis are rejected as [`QError::BranchAmbiguity`].
pub fn qbessel_j1(nu: CNum, x: CNum, q: &QBase) -> QResult<CNum> {
    bessel(BesselKind::First, nu, x, q)
}

/// Jackson's `J^(2)_nu(x;q)`.
pub fn qbessel_j2(nu: CNum, x: CNum, q: &QBase) -> QResult<CNum> {
    bessel(BesselKind::Second, nu, x, q)
}
