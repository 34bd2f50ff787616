use super::{finite, pochhammer::qpoch_inf_scaled, CNum, QBase, Scaled};
use crate::error::{QError, QResult};

fn nonpositive_integer(x: CNum) -> Option<f64> {
    let n = (-x.re).round();
    if n >= 0.0 && (x.re + n).abs() < 1e-12 && x.im.abs() < 1e-12 {
        Some(-n)
    } else {
        None
    }
}

/// `Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^(1-x)`.
pub fn qgamma(x: CNum, q: &QBase) -> QResult<CNum> {
    if let Some(n) = nonpositive_integer(x) {
        return Err(QError::PoleAtNonpositiveInteger(n));
    }
    let (num, _) = qpoch_inf_scaled(CNum::new(q.q(), 0.0), q)?;
    let (den, _) = qpoch_inf_scaled(q.pow(x), q)?;
    if den.is_zero() {
        return Err(QError::PoleAtNonpositiveInteger(x.re.round()));
    }
    let power = Scaled::exp((CNum::new(1.0, 0.0) - x) * (1.0 - q.q()).ln());
    finite((num / den * power).to_complex(), "q-gamma")
}

/// `1 / Gamma_q(x)`, an entire function of `x`.
pub fn qgamma_recip(x: CNum, q: &QBase) -> QResult<CNum> {
    finite(qgamma_recip_scaled(x, q)?.to_complex(), "reciprocal q-gamma")
}

pub(crate) fn qgamma_recip_scaled(x: CNum, q: &QBase) -> QResult<Scaled> {
    let (num, _) = qpoch_inf_scaled(q.pow(x), q)?;
    let (den, _) = qpoch_inf_scaled(CNum::new(q.q(), 0.0), q)?;
    let power = Scaled::exp((x - 1.0) * (1.0 - q.q()).ln());
    Ok(num / den * power)
}
