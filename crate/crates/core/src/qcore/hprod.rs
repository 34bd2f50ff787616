use super::{finite, CNum, QBase, Scaled, TruncationReceipt, ZERO_TOL};
use crate::error::{QError, QResult};

/// `h(x;a) = prod_{n>=0} (1 - 2 a x q^n + a^2 q^(2n))` as a scaled value.
///
/// `x` may be complex; with `x = cos(theta)` this is
/// `(a e^{i theta}, a e^{-i theta};q)_inf`. The receipt's `tail_bound` is
/// relative.
pub fn h_product_scaled(x: CNum, a: CNum, q: &QBase) -> QResult<(Scaled, TruncationReceipt)> {
    let qq = q.q();
    let mut t1 = 2.0 * a * x;
    let mut t2 = a * a;
    let mut s1 = t1.norm();
    let mut s2 = t2.norm();
    if s1 == 0.0 && s2 == 0.0 {
        return Ok((Scaled::ONE, TruncationReceipt::exact(0)));
    }
    let cut = q.eps() * (1.0 - qq);
    let mut acc = Scaled::ONE;
    let mut guard = 0u32;
    let mut k = 0usize;
    loop {
        if k >= q.max_terms() {
            return Err(QError::NonConvergence { what: "h(x;a)", terms: k });
        }
        let f = CNum::new(1.0, 0.0) - t1 + t2;
        if f.norm() < ZERO_TOL * (1.0 + s1 + s2) {
            return Ok((Scaled::ZERO, TruncationReceipt::exact(k + 1)));
        }
        acc = acc.mul_c(f);
        k += 1;
        t1 *= qq;
        t2 *= qq * qq;
        s1 *= qq;
        s2 *= qq * qq;
        if guard > 0 {
            guard += 1;
            if guard > 3 {
                break;
            }
        } else if s1 + s2 < cut {
            guard = 1;
        }
    }
    let r = (s1 + s2) / (1.0 - qq);
    Ok((acc, TruncationReceipt { terms_used: k, tail_bound: r / (1.0 - r), converged: true, abs_sum: 0.0 }))
}

/// `h(x;a)`.
pub fn h_product(x: CNum, a: CNum, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    let (s, mut r) = h_product_scaled(x, a, q)?;
    let v = finite(s.to_complex(), "h(x;a)")?;
    r.tail_bound *= v.norm();
    Ok((v, r))
}

/// `h(x;a_1,...,a_k) = prod_i h(x;a_i)`.
pub fn h_multi(x: CNum, params: &[CNum], q: &QBase) -> QResult<CNum> {
    let mut acc = Scaled::ONE;
    for (i, &a) in params.iter().enumerate() {
        let (v, _) = h_product_scaled(x, a, q).map_err(|e| QError::Component { index: i, source: Box::new(e) })?;
        acc = acc * v;
    }
    finite(acc.to_complex(), "h(x;a_1,...,a_k)")
}
