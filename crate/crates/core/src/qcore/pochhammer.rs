use super::{finite, is_zero_factor, CNum, QBase, Scaled, TruncationReceipt};
use crate::error::{QError, QResult};

/// Index of a q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PochIndex {
    Finite(i64),
    Infinite,
}

/// `(a;q)_inf` as a scaled value. The receipt's `tail_bound` is relative
/// to the returned value.
///
/// Factors are multiplied until `|a| q^(N+1) / (1-q)` drops below the
/// base's tolerance, followed by three guard factors. A factor that
/// vanishes to within [`super::ZERO_TOL`] makes the product exactly zero.
pub fn qpoch_inf_scaled(a: CNum, q: &QBase) -> QResult<(Scaled, TruncationReceipt)> {
    let qq = q.q();
    let mut tabs = a.norm();
    if !tabs.is_finite() {
        return Err(QError::NonFinite("(a;q)_inf argument"));
    }
    if tabs == 0.0 {
        return Ok((Scaled::ONE, TruncationReceipt::exact(0)));
    }
    let cut = q.eps() * (1.0 - qq);
    let zero_tol2 = super::ZERO_TOL * super::ZERO_TOL;
    let mut t = a;
    let mut acc = CNum::new(1.0, 0.0);
    let mut exp2: i64 = 0;
    let mut guard = 0u32;
    let mut k = 0usize;
    loop {
        if k >= q.max_terms() {
            return Err(QError::NonConvergence { what: "(a;q)_inf", terms: k });
        }
        let f = CNum::new(1.0 - t.re, -t.im);
        let fn2 = f.norm_sqr();
        if fn2 < zero_tol2 * (1.0 + tabs) * (1.0 + tabs) {
            return Ok((Scaled::ZERO, TruncationReceipt::exact(k + 1)));
        }
        acc *= f;
        let n = acc.norm_sqr();
        if !(1e-200..=1e200).contains(&n) {
            let s = Scaled::from_parts(acc, exp2);
            acc = s.mantissa();
            exp2 = s.exponent();
        }
        k += 1;
        t *= qq;
        tabs *= qq;
        if guard > 0 {
            guard += 1;
            if guard > 3 {
                break;
            }
        } else if tabs < cut {
            guard = 1;
        }
    }
    let r = tabs / (1.0 - qq);
    let receipt = TruncationReceipt { terms_used: k, tail_bound: r / (1.0 - r), converged: true, abs_sum: 0.0 };
    Ok((Scaled::from_parts(acc, exp2), receipt))
}

/// `(a;q)_inf`.
pub fn qpoch_inf(a: CNum, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    let (s, mut r) = qpoch_inf_scaled(a, q)?;
    let v = finite(s.to_complex(), "(a;q)_inf")?;
    r.tail_bound *= v.norm();
    Ok((v, r))
}

/// `(a;q)_n` for any integer `n`, with
/// `(a;q)_{-n} = 1 / prod_{k=1..n} (1 - a q^-k)`.
pub fn qpoch_fin(a: CNum, q: &QBase, n: i64) -> QResult<CNum> {
    finite(qpoch_fin_scaled(a, q, n)?.to_complex(), "(a;q)_n")
}

pub(crate) fn qpoch_fin_scaled(a: CNum, q: &QBase, n: i64) -> QResult<Scaled> {
    let mut acc = Scaled::ONE;
    if n >= 0 {
        let mut t = a;
        for _ in 0..n {
            let f = CNum::new(1.0, 0.0) - t;
            if is_zero_factor(f, t) {
                return Ok(Scaled::ZERO);
            }
            acc = acc.mul_c(f);
            t *= q.q();
        }
        Ok(acc)
    } else {
        let qi = 1.0 / q.q();
        let mut t = a * qi;
        for k in 1..=(-n) {
            let f = CNum::new(1.0, 0.0) - t;
            if is_zero_factor(f, t) {
                return Err(QError::PoleAtNegativeIndex { factor: -k });
            }
            acc = acc.mul_c(f);
            t *= qi;
        }
        Ok(acc.recip())
    }
}

/// `(a_1,...,a_k;q)_n`, the product of the individual symbols.
pub fn qpoch_multi(params: &[CNum], q: &QBase, n: PochIndex) -> QResult<CNum> {
    let mut acc = Scaled::ONE;
    for (i, &a) in params.iter().enumerate() {
        let v = match n {
            PochIndex::Finite(n) => qpoch_fin_scaled(a, q, n),
            PochIndex::Infinite => qpoch_inf_scaled(a, q).map(|p| p.0),
        };
        let v = v.map_err(|e| QError::Component { index: i, source: Box::new(e) })?;
        acc = acc * v;
    }
    finite(acc.to_complex(), "(a_1,...,a_k;q)_n")
}

/// `(a;q)_lambda = (a;q)_inf / (a q^lambda;q)_inf` for complex `lambda`.
/// Integer `lambda` is delegated to [`qpoch_fin`], which also covers the
/// cases where both infinite products vanish.
pub fn qpoch_general_index(a: CNum, q: &QBase, lambda: CNum) -> QResult<CNum> {
    let r = lambda.re.round();
    if lambda.im == 0.0 && (lambda.re - r).abs() < 1e-13 {
        return qpoch_fin(a, q, r as i64);
    }
    let (den, _) = qpoch_inf_scaled(a * q.pow(lambda), q)?;
    if den.is_zero() {
        return Err(QError::PoleAtNegativeIndex { factor: 0 });
    }
    let (num, _) = qpoch_inf_scaled(a, q)?;
    finite((num / den).to_complex(), "(a;q)_lambda")
}

/// `prod (num_i;q)_inf / prod (den_j;q)_inf` as a scaled value.
/// A vanishing denominator is a [`QError::PoleInProduct`].
pub fn product_ratio(num: &[CNum], den: &[CNum], q: &QBase) -> QResult<Scaled> {
    let mut acc = Scaled::ONE;
    for &d in den {
        let (v, _) = qpoch_inf_scaled(d, q)?;
        if v.is_zero() {
            return Err(QError::PoleInProduct);
        }
        acc = acc / v;
    }
    for &n in num {
        let (v, _) = qpoch_inf_scaled(n, q)?;
        if v.is_zero() {
            return Ok(Scaled::ZERO);
        }
        acc = acc * v;
    }
    Ok(acc)
}
