//! Bilateral and unilateral basic hypergeometric series.
//!
//! Bilateral series are summed as two tails, `n >= 0` and `n < 0`, each
//! generated by its term ratio and stopped after three consecutive terms
//! below `eps * |partial sum|`.

mod closed;

pub use closed::{
    bailey_6psi6_folded_rhs, bailey_6psi6_folded_sum, bailey_6psi6_lhs, bailey_6psi6_rhs, psi22_twoterm_lhs,
    psi22_twoterm_residual, psi22_twoterm_rhs, qgauss_rhs, ramanujan_1psi1_lhs, ramanujan_1psi1_rhs,
    vwp_6phi5_sum, wellpoised_2psi2_lhs, wellpoised_2psi2_rhs,
};

use crate::error::{QError, QResult};
use crate::qcore::{CNum, QBase, Scaled, TruncationReceipt};

/// Annulus margin: points closer than this to either boundary are rejected.
pub const ANNULUS_MARGIN: f64 = 1e-10;
/// A denominator factor smaller than this (relative) counts as a pole.
pub const POLE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesKind {
    /// `sum_{n in Z} prod (a_j;q)_n / prod (b_j;q)_n z^n`.
    Bilateral,
    /// `sum_{n>=0} prod (a_j;q)_n / ((q;q)_n prod (b_j;q)_n) [(-1)^n q^(n(n-1)/2)]^(1+s-r) z^n`.
    Unilateral,
    /// Very-well-poised bilateral series with parameter `a`; the
    /// denominators are `qa/a_j` and each term carries `(1-aq^(2n))/(1-a)`.
    VwpBilateral { a: CNum },
    /// Very-well-poised `8W7(a; b,c,d,e,f; q, z)`.
    Vwp87 { a: CNum },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    pub numerator: Vec<CNum>,
    pub denominator: Vec<CNum>,
    pub z: CNum,
    pub kind: SeriesKind,
}

impl SeriesSpec {
    pub fn bilateral(numerator: Vec<CNum>, denominator: Vec<CNum>, z: CNum) -> Self {
        SeriesSpec { numerator, denominator, z, kind: SeriesKind::Bilateral }
    }

    pub fn unilateral(numerator: Vec<CNum>, denominator: Vec<CNum>, z: CNum) -> Self {
        SeriesSpec { numerator, denominator, z, kind: SeriesKind::Unilateral }
    }

    /// Denominators are filled in from `a` when the series is evaluated.
    pub fn vwp_bilateral(a: CNum, params: Vec<CNum>, z: CNum) -> Self {
        SeriesSpec { numerator: params, denominator: Vec::new(), z, kind: SeriesKind::VwpBilateral { a } }
    }

    pub fn w87(a: CNum, params: [CNum; 5], z: CNum) -> Self {
        SeriesSpec { numerator: params.to_vec(), denominator: Vec::new(), z, kind: SeriesKind::Vwp87 { a } }
    }

    fn denominators(&self, q: &QBase) -> Vec<CNum> {
        match self.kind {
            SeriesKind::VwpBilateral { a } | SeriesKind::Vwp87 { a } => {
                self.numerator.iter().map(|&b| a * q.q() / b).collect()
            }
            _ => self.denominator.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnulusCheck {
    pub inner: f64,
    pub outer: f64,
    pub z_abs: f64,
    pub pass: bool,
}

/// Convergence annulus `|prod b / prod a| < |z| < 1` of a bilateral
/// series. For very-well-poised series the pairs `±q a^(1/2)` over
/// `±a^(1/2)` are included.
pub fn annulus(spec: &SeriesSpec, q: &QBase) -> AnnulusCheck {
    let dens = spec.denominators(q);
    let num: f64 = spec.numerator.iter().map(|a| a.norm()).product();
    let den: f64 = dens.iter().map(|b| b.norm()).product();
    let mut inner = if num == 0.0 { f64::INFINITY } else { den / num };
    if let SeriesKind::VwpBilateral { .. } = spec.kind {
        inner /= q.q() * q.q();
    }
    // a denominator b = q^k, k >= 1, makes every term with n <= -k vanish
    if dens.iter().any(|&b| terminates_backward(b, q)) {
        inner = 0.0;
    }
    let z_abs = spec.z.norm();
    let pass = inner + ANNULUS_MARGIN < z_abs && z_abs < 1.0 - ANNULUS_MARGIN;
    AnnulusCheck { inner, outer: 1.0, z_abs, pass }
}

fn terminates_backward(b: CNum, q: &QBase) -> bool {
    if b.norm() == 0.0 || b.im.abs() > 1e-14 * b.norm() || b.re <= 0.0 {
        return false;
    }
    let k = (b.re.ln() / q.ln_q()).round();
    k >= 1.0 && (b.re - q.powf(k)).abs() < 1e-14 * b.re
}

/// Three-consecutive-small-terms stopping rule.
pub(crate) struct Stopper {
    eps: f64,
    small: u32,
}

impl Stopper {
    pub(crate) fn new(eps: f64) -> Self {
        Stopper { eps, small: 0 }
    }

    pub(crate) fn done(&mut self, term: f64, partial: f64) -> bool {
        if term <= self.eps * partial || term == 0.0 {
            self.small += 1;
        } else {
            self.small = 0;
        }
        self.small >= 3
    }
}

fn ratio_factor(f: CNum, scale: f64, index: i64) -> QResult<CNum> {
    if f.norm() < POLE_TOL * scale {
        Err(QError::PoleInRange { index })
    } else {
        Ok(f)
    }
}

/// Evaluate a bilateral series ([`SeriesKind::Bilateral`] or
/// [`SeriesKind::VwpBilateral`]).
pub fn rpsir_eval(spec: &SeriesSpec, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    let vwp_a = match spec.kind {
        SeriesKind::Bilateral => None,
        SeriesKind::VwpBilateral { a } => Some(a),
        _ => return Err(QError::InvalidSpec("rpsir_eval needs a bilateral series".into())),
    };
    let num = &spec.numerator;
    let den = spec.denominators(q);
    if num.len() != den.len() || num.is_empty() {
        return Err(QError::InvalidSpec(format!("{} numerator vs {} denominator parameters", num.len(), den.len())));
    }
    let chk = annulus(spec, q);
    if !chk.pass {
        return Err(QError::OutsideAnnulus { inner: chk.inner, z_abs: chk.z_abs, outer: chk.outer });
    }
    if let Some(a) = vwp_a {
        if (CNum::new(1.0, 0.0) - a).norm() < POLE_TOL {
            return Err(QError::InvalidSpec("very-well-poised parameter a = 1".into()));
        }
    }
    let qq = q.q();
    let z = spec.z;
    let one = CNum::new(1.0, 0.0);
    let vwp_weight = |n: i64| -> Scaled {
        match vwp_a {
            // (1 - a q^(2n)) / (1 - a), kept scaled because q^(2n) is huge for n << 0
            Some(a) => {
                if n >= 0 {
                    Scaled::new((one - a * q.powf(2.0 * n as f64)) / (one - a))
                } else {
                    let q2n = q.powf(-2.0 * n as f64);
                    Scaled::new((CNum::new(q2n, 0.0) - a) / (one - a)) * Scaled::exp(CNum::new(-2.0 * n as f64 * -q.ln_q(), 0.0))
                }
            }
            None => Scaled::ONE,
        }
    };
    let mut sum = vwp_weight(0).to_complex();
    let mut stop = Stopper::new(q.eps());
    let mut receipt = TruncationReceipt::exact(1);
    receipt.abs_sum = sum.norm();

    // n >= 0
    let mut t = Scaled::ONE;
    let mut qn = 1.0;
    let mut n: i64 = 0;
    let mut last = 0.0;
    loop {
        if n as usize >= q.max_terms() {
            return Err(QError::NonConvergence { what: "bilateral series (n >= 0)", terms: n as usize });
        }
        let mut r = z;
        for (a, b) in num.iter().zip(den.iter()) {
            let fb = ratio_factor(one - b * qn, 1.0 + b.norm() * qn, n + 1)?;
            r *= (one - a * qn) / fb;
        }
        t = t.mul_c(r);
        n += 1;
        qn *= qq;
        if t.is_zero() {
            break;
        }
        let term = (t * vwp_weight(n)).to_complex();
        sum += term;
        last = term.norm();
        receipt.abs_sum += last;
        if stop.done(last, sum.norm()) {
            break;
        }
    }
    receipt.terms_used += n as usize;
    receipt.tail_bound += last * z.norm() / (1.0 - z.norm());

    // n < 0, ratios written with q^n = q^|n| to keep them bounded
    let mut stop = Stopper::new(q.eps());
    let mut t = Scaled::ONE;
    let mut qn = 1.0;
    let mut m: i64 = 0;
    let mut last = 0.0;
    loop {
        if m as usize >= q.max_terms() {
            return Err(QError::NonConvergence { what: "bilateral series (n < 0)", terms: m as usize });
        }
        m += 1;
        qn *= qq;
        let mut r = one / z;
        for (a, b) in num.iter().zip(den.iter()) {
            let fa = ratio_factor(CNum::new(qn, 0.0) - a, qn + a.norm(), -m)?;
            r *= (CNum::new(qn, 0.0) - b) / fa;
        }
        t = t.mul_c(r);
        if t.is_zero() {
            break;
        }
        let term = (t * vwp_weight(-m)).to_complex();
        sum += term;
        last = term.norm();
        receipt.abs_sum += last;
        if stop.done(last, sum.norm()) {
            break;
        }
    }
    receipt.terms_used += m as usize;
    let rho = (chk.inner / chk.z_abs).min(0.999_999);
    receipt.tail_bound += last * rho / (1.0 - rho);
    if !(sum.re.is_finite() && sum.im.is_finite()) {
        return Err(QError::NonFinite("bilateral series"));
    }
    Ok((sum, receipt))
}

/// Evaluate a unilateral series `rφs` ([`SeriesKind::Unilateral`]).
pub fn rphis_eval(spec: &SeriesSpec, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    if spec.kind != SeriesKind::Unilateral {
        return Err(QError::InvalidSpec("rphis_eval needs a unilateral series".into()));
    }
    let r = spec.numerator.len() as i64;
    let s = spec.denominator.len() as i64;
    let extra = 1 + s - r;
    if extra < 0 {
        return Err(QError::InvalidSpec(format!("{r}phi{s} diverges")));
    }
    if extra == 0 && spec.z.norm() >= 1.0 {
        return Err(QError::OutsideDisk { z_abs: spec.z.norm() });
    }
    let qq = q.q();
    let one = CNum::new(1.0, 0.0);
    unilateral_sum(q, |n, qn| {
        let mut ratio = spec.z;
        for a in &spec.numerator {
            ratio *= one - a * qn;
        }
        for b in &spec.denominator {
            ratio /= ratio_factor(one - b * qn, 1.0 + b.norm() * qn, n + 1)?;
        }
        ratio /= one - qn * qq;
        for _ in 0..extra {
            ratio *= -qn;
        }
        Ok((ratio, Scaled::ONE))
    })
}

/// Very-well-poised `8W7(a; b,c,d,e,f; q, z)`, `|z| < 1`.
pub fn w87_eval(a: CNum, params: [CNum; 5], z: CNum, q: &QBase) -> QResult<(CNum, TruncationReceipt)> {
    if z.norm() >= 1.0 {
        return Err(QError::OutsideDisk { z_abs: z.norm() });
    }
    let one = CNum::new(1.0, 0.0);
    if (one - a).norm() < POLE_TOL {
        return Err(QError::InvalidSpec("very-well-poised parameter a = 1".into()));
    }
    let qq = q.q();
    let den: Vec<CNum> = params.iter().map(|&b| a * qq / b).collect();
    unilateral_sum(q, |n, qn| {
        let mut ratio = z * (one - a * qn) / (one - qn * qq);
        for (b, d) in params.iter().zip(den.iter()) {
            ratio *= (one - b * qn) / ratio_factor(one - d * qn, 1.0 + d.norm() * qn, n + 1)?;
        }
        // weight (1 - a q^(2n+2)) / (1 - a)
        let w = (one - a * qn * qn * qq * qq) / (one - a);
        Ok((ratio, Scaled::new(w)))
    })
}

/// Sum `sum_{n>=0} t_n w_n` where `t_0 = 1`, `w_0 = 1` and `next(n, q^n)`
/// returns `(t_{n+1}/t_n, w_{n+1})`.
fn unilateral_sum(
    q: &QBase,
    mut next: impl FnMut(i64, f64) -> QResult<(CNum, Scaled)>,
) -> QResult<(CNum, TruncationReceipt)> {
    let mut sum = CNum::new(1.0, 0.0);
    let mut abs_sum = 1.0;
    let mut t = Scaled::ONE;
    let mut stop = Stopper::new(q.eps());
    let mut qn = 1.0;
    let mut n: i64 = 0;
    let mut last = 0.0;
    loop {
        if n as usize >= q.max_terms() {
            return Err(QError::NonConvergence { what: "unilateral series", terms: n as usize });
        }
        let (ratio, w) = next(n, qn)?;
        t = t.mul_c(ratio);
        n += 1;
        qn *= q.q();
        if t.is_zero() {
            break;
        }
        let term = (t * w).to_complex();
        sum += term;
        last = term.norm();
        abs_sum += last;
        if stop.done(last, sum.norm()) {
            break;
        }
    }
    if !(sum.re.is_finite() && sum.im.is_finite()) {
        return Err(QError::NonFinite("unilateral series"));
    }
    Ok((sum, TruncationReceipt { terms_used: n as usize + 1, tail_bound: 2.0 * last, converged: true, abs_sum }))
}

/// Two-tailed sum of explicitly given terms `term(n)`, `n in Z`, with the
/// same stopping rule as [`rpsir_eval`]. Each tail runs for at least
/// `min_terms` terms.
pub fn sum_bilateral_terms(
    q: &QBase,
    min_terms: usize,
    mut term: impl FnMut(i64) -> QResult<CNum>,
) -> QResult<(CNum, TruncationReceipt)> {
    let mut sum = term(0)?;
    let mut abs_sum = sum.norm();
    let mut used = 1;
    let mut tail = 0.0;
    for dir in [1i64, -1] {
        let mut stop = Stopper::new(q.eps());
        let mut k: i64 = 0;
        loop {
            k += 1;
            if k as usize > q.max_terms() {
                return Err(QError::NonConvergence { what: "bilateral term sum", terms: k as usize });
            }
            let t = term(dir * k)?;
            sum += t;
            abs_sum += t.norm();
            if stop.done(t.norm(), sum.norm()) && k as usize >= min_terms {
                tail += 3.0 * t.norm();
                break;
            }
        }
        used += k as usize;
    }
    if !(sum.re.is_finite() && sum.im.is_finite()) {
        return Err(QError::NonFinite("bilateral term sum"));
    }
    Ok((sum, TruncationReceipt { terms_used: used, tail_bound: tail, converged: true, abs_sum }))
}
