use super::{ParameterPoint, PeriodicWeight};
use crate::error::{QError, QResult};
use crate::foldquad::{integrate_interval, integrate_line, DecayClass, IntegrandHandle, QuadDiagnostics, QuadratureConfig};
use crate::qcore::{condition_ratio, product_ratio, CNum, QBase, Scaled, TruncationReceipt};

/// Everything an evaluator sees.
pub struct EvalContext<'a> {
    pub point: &'a ParameterPoint,
    pub q: QBase,
    pub weight: &'a PeriodicWeight,
    pub quad: QuadratureConfig,
}

impl<'a> EvalContext<'a> {
    pub fn p(&self, name: &str) -> QResult<CNum> {
        self.point.get(name).ok_or_else(|| QError::OutsideDomain(format!("missing parameter {name}")))
    }

    pub fn re(&self, name: &str) -> QResult<f64> {
        self.p(name).map(|v| v.re)
    }

    pub fn qf(&self) -> f64 {
        self.q.q()
    }

    /// `ln(1/q)`
    pub fn l(&self) -> f64 {
        -self.q.ln_q()
    }

    pub fn w(&self, x: f64) -> CNum {
        self.weight.eval(x)
    }
}

/// Value of one side plus its diagnostics.
#[derive(Clone, Debug, Default)]
pub struct Side {
    pub value: CNum,
    pub receipts: Vec<(String, f64)>,
    /// Extra relative residuals that must also be under tolerance.
    pub checks: Vec<(String, f64)>,
    pub converged: bool,
    /// Largest `mass / |value|` of the sums and integrals used.
    inner: f64,
    /// Cancellation among the terms the value is assembled from.
    outer: f64,
}

impl Side {
    pub fn new() -> Self {
        Side { converged: true, inner: 1.0, outer: 1.0, ..Default::default() }
    }

    /// Factor by which rounding errors are amplified relative to `|value|`.
    pub fn conditioning(&self) -> f64 {
        self.inner.max(1.0) * self.outer.max(1.0)
    }

    /// Note a sub-result whose own rounding amplification is `k`.
    pub fn amplified(&mut self, k: f64) {
        self.inner = self.inner.max(k);
    }

    /// Take the value of a summed series and note its receipt.
    pub fn series(&mut self, label: &str, (v, r): (CNum, TruncationReceipt)) -> CNum {
        self.receipt(&format!("{label}.terms"), r.terms_used as f64);
        self.amplified(r.conditioning(v));
        v
    }

    /// `sum(terms)`, noting how much the terms cancel.
    pub fn sum(&mut self, terms: &[CNum]) -> CNum {
        let s: CNum = terms.iter().sum();
        let mass: f64 = terms.iter().map(|t| t.norm()).sum();
        self.outer = self.outer.max(condition_ratio(mass, s));
        s
    }

    pub fn value(mut self, v: CNum) -> Self {
        self.value = v;
        self
    }

    pub fn receipt(&mut self, key: &str, v: f64) {
        self.receipts.push((key.to_string(), v));
    }

    pub fn check(&mut self, key: &str, v: f64) {
        self.checks.push((key.to_string(), v));
    }

    fn quad(&mut self, label: &str, v: CNum, d: &QuadDiagnostics) {
        self.receipt(&format!("{label}.evaluations"), d.evaluations as f64);
        self.receipt(&format!("{label}.fold_terms_max"), d.fold_terms_max as f64);
        self.receipt(&format!("{label}.error_estimate"), d.error_estimate);
        self.amplified(condition_ratio(d.abs_integral, v));
    }
}

pub(crate) fn rel(a: CNum, b: CNum) -> f64 {
    let s = b.norm();
    if s > 0.0 {
        (a - b).norm() / s
    } else {
        (a - b).norm()
    }
}

/// `prod (num;q)_inf / prod (den;q)_inf`
pub(crate) fn prod(num: &[CNum], den: &[CNum], q: &QBase) -> QResult<CNum> {
    let v = product_ratio(num, den, q)?.to_complex();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(QError::NonFinite("product ratio"))
    }
}

pub(crate) fn prod_s(num: &[CNum], den: &[CNum], q: &QBase) -> QResult<Scaled> {
    product_ratio(num, den, q)
}

/// Expected tail behaviour, used only to pick the integration scale.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Tail {
    /// `|f| ~ exp(-rate |x|)`
    Exp(f64),
}

fn scale_for(tail: Tail) -> f64 {
    match tail {
        Tail::Exp(rate) => (1.5 / rate.max(1e-3)).clamp(0.25, 16.0),
    }
}

/// `∫_R f(x) dx`. The variable is rescaled by `x = s v` so that the folded
/// cells cover roughly one e-fold of the tails each.
pub(crate) fn line<F>(cx: &EvalContext, tail: Tail, f: F, side: &mut Side, label: &str) -> QResult<CNum>
where
    F: Fn(f64) -> QResult<CNum> + Sync,
{
    let s = scale_for(tail);
    let g = |v: f64| -> QResult<CNum> { Ok(f(s * v)? * s) };
    let (v, d) = integrate_line(&IntegrandHandle::new(&g, DecayClass::Exponential), &cx.quad)?;
    side.quad(label, v, &d);
    Ok(v)
}

/// `∫_R f(x) dx` for an integrand with algebraic decay of the given degree.
pub(crate) fn line_rational<F>(cx: &EvalContext, degree: f64, f: F, side: &mut Side, label: &str) -> QResult<CNum>
where
    F: Fn(f64) -> QResult<CNum> + Sync,
{
    let (v, d) = integrate_line(&IntegrandHandle::new(&f, DecayClass::Rational { degree }), &cx.quad)?;
    side.quad(label, v, &d);
    Ok(v)
}

/// `∫_0^1 f(x) dx`
pub(crate) fn unit<F>(cx: &EvalContext, f: F, side: &mut Side, label: &str) -> QResult<CNum>
where
    F: Fn(f64) -> QResult<CNum> + Sync,
{
    let (v, d) = integrate_interval(&f, 0.0, 1.0, &cx.quad)?;
    side.quad(label, v, &d);
    Ok(v)
}

/// `∫_0^1 p(x) dx` for the context weight.
pub(crate) fn weight_integral(cx: &EvalContext, side: &mut Side) -> QResult<CNum> {
    unit(cx, |x| Ok(cx.w(x)), side, "weight_integral")
}
