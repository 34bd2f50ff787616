//! Closed-form summations and the series they evaluate.

use super::{rpsir_eval, sum_bilateral_terms, SeriesSpec};
use crate::error::{QError, QResult};
use crate::qcore::{finite, product_ratio, CNum, QBase, Scaled, TruncationReceipt};

fn ratio(num: &[CNum], den: &[CNum], q: &QBase) -> QResult<CNum> {
    finite(product_ratio(num, den, q)?.to_complex(), "product ratio")
}

/// Product side of Ramanujan's `1ψ1` sum,
/// `(q, b/a, az, q/az;q)_inf / (b, q/a, z, b/az;q)_inf`, for `|b/a| < |z| < 1`.
pub fn ramanujan_1psi1_rhs(a: CNum, b: CNum, z: CNum, q: &QBase) -> QResult<CNum> {
    let inner = (b / a).norm();
    if !(inner < z.norm() && z.norm() < 1.0) {
        return Err(QError::OutsideAnnulus { inner, z_abs: z.norm(), outer: 1.0 });
    }
    let qc = CNum::new(q.q(), 0.0);
    ratio(&[qc, b / a, a * z, qc / (a * z)], &[b, qc / a, z, b / (a * z)], q)
}

/// `1ψ1(a; b; q, z)` summed directly.
pub fn ramanujan_1psi1_lhs(a: CNum, b: CNum, z: CNum, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    rpsir_eval(&SeriesSpec::bilateral(vec![a], vec![b], z), q)
}

/// q-Gauss sum `(c/a, c/b;q)_inf / (c, c/ab;q)_inf`, `|c/ab| < 1`.
pub fn qgauss_rhs(a: CNum, b: CNum, c: CNum, q: &QBase) -> QResult<CNum> {
    let z = c / (a * b);
    if z.norm() >= 1.0 {
        return Err(QError::OutsideDisk { z_abs: z.norm() });
    }
    ratio(&[c / a, c / b], &[c, z], q)
}

/// Left side of the two-term `2ψ2` formula at `z = cd/abq`:
/// `2ψ2(a,b;c,d) - (α/q) P 2ψ2(aq/α, bq/α; cq/α, dq/α)` with
/// `P = (q/c, q/d, α/a, α/b;q)_inf / (q/a, q/b, α/c, α/d;q)_inf`.
///
/// The receipt's `abs_sum` covers both series, the second one scaled by
/// its coefficient.
pub fn psi22_twoterm_lhs(
    a: CNum,
    b: CNum,
    c: CNum,
    d: CNum,
    alpha: CNum,
    q: &QBase,
) -> QResult<(CNum, TruncationReceipt)> {
    let qq = q.q();
    let z = c * d / (a * b * qq);
    let (first, r1) = rpsir_eval(&SeriesSpec::bilateral(vec![a, b], vec![c, d], z), q)?;
    let s = qq / alpha;
    let (second, mut r2) = rpsir_eval(&SeriesSpec::bilateral(vec![a * s, b * s], vec![c * s, d * s], z), q)?;
    let qc = CNum::new(qq, 0.0);
    let p = ratio(&[qc / c, qc / d, alpha / a, alpha / b], &[qc / a, qc / b, alpha / c, alpha / d], q)?;
    let k = alpha / qq * p;
    r2.abs_sum *= k.norm();
    r2.tail_bound *= k.norm();
    Ok((first - k * second, r1.merge(r2)))
}

/// Product side of the two-term `2ψ2` formula.
pub fn psi22_twoterm_rhs(a: CNum, b: CNum, c: CNum, d: CNum, alpha: CNum, q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let qc = CNum::new(qq, 0.0);
    let z = c * d / (a * b * qq);
    if z.norm() >= 1.0 {
        return Err(QError::OutsideAnnulus { inner: 0.0, z_abs: z.norm(), outer: 1.0 });
    }
    let cd = c * d;
    ratio(
        &[alpha, qc / alpha, cd / (alpha * qq), alpha * qq * qq / cd, qc, c / a, c / b, d / a, d / b],
        &[c / alpha, alpha * qq / c, d / alpha, alpha * qq / d, c, d, qc / a, qc / b, z],
        q,
    )
}

/// `|LHS - RHS| / |RHS|` of the two-term `2ψ2` formula.
pub fn psi22_twoterm_residual(a: CNum, b: CNum, c: CNum, d: CNum, alpha: CNum, q: &QBase) -> QResult<f64> {
    let r = psi22_twoterm_rhs(a, b, c, d, alpha, q)?;
    let (l, _) = psi22_twoterm_lhs(a, b, c, d, alpha, q)?;
    Ok((l - r).norm() / r.norm())
}

/// Bailey's very-well-poised `6ψ6` at `z = qa²/bcde`, summed directly.
pub fn bailey_6psi6_lhs(a: CNum, b: CNum, c: CNum, d: CNum, e: CNum, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    let z = q.q() * a * a / (b * c * d * e);
    rpsir_eval(&SeriesSpec::vwp_bilateral(a, vec![b, c, d, e], z), q)
}

/// Product side of Bailey's `6ψ6` sum, `|qa²/bcde| < 1`.
pub fn bailey_6psi6_rhs(a: CNum, b: CNum, c: CNum, d: CNum, e: CNum, q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let qc = CNum::new(qq, 0.0);
    let z = qq * a * a / (b * c * d * e);
    if z.norm() >= 1.0 {
        return Err(QError::OutsideDomain(format!("|qa^2/bcde| = {} >= 1", z.norm())));
    }
    let aq = a * qq;
    ratio(
        &[aq, aq / (b * c), aq / (b * d), aq / (b * e), aq / (c * d), aq / (c * e), aq / (d * e), qc, qc / a],
        &[aq / b, aq / c, aq / d, aq / e, qc / b, qc / c, qc / d, qc / e, z],
        q,
    )
}

/// Bailey's sum with the denominators cleared:
///
/// `sum_n (aq^(n+1)/b, .., aq^(n+1)/e, q^(1-n)/b, .., q^(1-n)/e;q)_inf (1-aq^(2n)) a^(2n) q^(2n²-n)`.
pub fn bailey_6psi6_folded_sum(
    a: CNum,
    b: CNum,
    c: CNum,
    d: CNum,
    e: CNum,
    q: &QBase,
) -> QResult<(CNum, TruncationReceipt)> {
    let ln_a = a.ln();
    let qq = q.q();
    let one = CNum::new(1.0, 0.0);
    sum_bilateral_terms(q, 4, |n| {
        let nf = n as f64;
        let qn1 = q.powf(nf + 1.0);
        let q1n = q.powf(1.0 - nf);
        let p = product_ratio(
            &[a * qn1 / b, a * qn1 / c, a * qn1 / d, a * qn1 / e, q1n / b, q1n / c, q1n / d, q1n / e],
            &[],
            q,
        )?;
        let w = if n >= 0 {
            Scaled::new(one - a * q.powf(2.0 * nf))
        } else {
            Scaled::new(CNum::new(q.powf(-2.0 * nf), 0.0) - a) * Scaled::exp(CNum::new(2.0 * nf * qq.ln(), 0.0))
        };
        let pw = Scaled::exp(2.0 * nf * ln_a + (2.0 * nf * nf - nf) * qq.ln());
        Ok((p * w * pw).to_complex())
    })
}

/// `(q, a, q/a, aq/bc, aq/bd, aq/be, aq/cd, aq/ce, aq/de;q)_inf / (qa²/bcde;q)_inf`.
pub fn bailey_6psi6_folded_rhs(a: CNum, b: CNum, c: CNum, d: CNum, e: CNum, q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let qc = CNum::new(qq, 0.0);
    let aq = a * qq;
    ratio(
        &[qc, a, qc / a, aq / (b * c), aq / (b * d), aq / (b * e), aq / (c * d), aq / (c * e), aq / (d * e)],
        &[qq * a * a / (b * c * d * e)],
        q,
    )
}

/// Left side of the well-poised `2ψ2` sum in product form,
/// `sum_n (aq^(n+1)/b, aq^(n+1)/c, q^(1-n)/b, q^(1-n)/c;q)_inf (-1)^n a^n q^(n²)`.
pub fn wellpoised_2psi2_lhs(a: CNum, b: CNum, c: CNum, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    let ln_a = a.ln();
    let lq = q.ln_q();
    sum_bilateral_terms(q, 4, |n| {
        let nf = n as f64;
        let qn1 = q.powf(nf + 1.0);
        let q1n = q.powf(1.0 - nf);
        let p = product_ratio(&[a * qn1 / b, a * qn1 / c, q1n / b, q1n / c], &[], q)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok((p * Scaled::exp(nf * ln_a + nf * nf * lq)).to_complex() * sign)
    })
}

/// `(aq/bc;q)_inf / (-aq/bc;q)_inf (q², aq, q/a, aq²/b², aq²/c²; q²)_inf`, `|aq/bc| < 1`.
pub fn wellpoised_2psi2_rhs(a: CNum, b: CNum, c: CNum, q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let w = a * qq / (b * c);
    if w.norm() >= 1.0 {
        return Err(QError::OutsideDomain(format!("|aq/bc| = {} >= 1", w.norm())));
    }
    let q2 = q.squared();
    let first = ratio(&[w], &[-w], q)?;
    let second = ratio(
        &[CNum::new(qq * qq, 0.0), a * qq, CNum::new(qq, 0.0) / a, a * qq * qq / (b * b), a * qq * qq / (c * c)],
        &[],
        &q2,
    )?;
    Ok(first * second)
}

/// Very-well-poised `6φ5` sum
/// `6W5(a; b, c, d; q, aq/bcd) = (aq, aq/bc, aq/bd, aq/cd;q)_inf / (aq/b, aq/c, aq/d, aq/bcd;q)_inf`.
pub fn vwp_6phi5_sum(a: CNum, b: CNum, c: CNum, d: CNum, q: &QBase) -> QResult<CNum> {
    let aq = a * q.q();
    let z = aq / (b * c * d);
    if z.norm() >= 1.0 {
        return Err(QError::OutsideDisk { z_abs: z.norm() });
    }
    ratio(&[aq, aq / (b * c), aq / (b * d), aq / (c * d)], &[aq / b, aq / c, aq / d, z], q)
}
