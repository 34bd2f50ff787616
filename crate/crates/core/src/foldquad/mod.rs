//! Integrals over the real line by folding onto the unit cell,
//!
//! `∫_R f(x) dx = ∫_0^1 sum_n f(x+n) dx`,
//!
//! evaluated with adaptive composite Gauss-Legendre quadrature, plus
//! Jackson's q-integral.

mod gauss;

pub use gauss::gauss_legendre;

use crate::bilateral::Stopper;
use crate::error::{QError, QResult};
use crate::exec::Execution;
use crate::qcore::{CNum, QBase, TruncationReceipt};
use serde::Serialize;

/// Largest fold window; beyond this the fold sum is reported as
/// non-convergent.
pub const MAX_FOLD_WINDOW: usize = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub panel_count: usize,
    pub nodes_per_panel: usize,
    pub refine_tol: f64,
    pub fold_window: usize,
    pub fold_tail_eps: f64,
    pub max_depth: u32,
    pub execution: Execution,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            panel_count: 8,
            nodes_per_panel: 16,
            refine_tol: 1e-13,
            fold_window: 8,
            fold_tail_eps: 1e-17,
            max_depth: 14,
            execution: Execution::Parallel,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> QResult<()> {
        if self.panel_count < 1 || self.nodes_per_panel < 4 || !(self.refine_tol > 0.0) || self.fold_window < 1 {
            return Err(QError::InvalidConfig(format!("{self:?}")));
        }
        Ok(())
    }

    pub fn sequential(mut self) -> Self {
        self.execution = Execution::Sequential;
        self
    }
}

/// How an integrand decays as `|x| -> inf`, declared by the caller.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayClass {
    SuperExponential,
    Exponential,
    /// `|f(x)| ~ |x|^-degree`.
    Rational { degree: f64 },
}

pub type Evaluator<'a> = dyn Fn(f64) -> QResult<CNum> + Sync + 'a;

pub struct IntegrandHandle<'a> {
    pub eval: &'a Evaluator<'a>,
    pub decay: DecayClass,
}

impl<'a> IntegrandHandle<'a> {
    pub fn new(eval: &'a Evaluator<'a>, decay: DecayClass) -> Self {
        IntegrandHandle { eval, decay }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct QuadDiagnostics {
    pub panels: usize,
    pub max_depth: u32,
    pub evaluations: usize,
    /// Largest number of fold terms at any node.
    pub fold_terms_max: usize,
    /// Estimated quadrature error (sum of accepted panel differences).
    pub error_estimate: f64,
    /// `∫|f|`, or for folded integrals the integral of `sum_n |f(x+n)|`.
    pub abs_integral: f64,
}

impl QuadDiagnostics {
    fn merge(self, o: QuadDiagnostics) -> Self {
        QuadDiagnostics {
            panels: self.panels + o.panels,
            max_depth: self.max_depth.max(o.max_depth),
            evaluations: self.evaluations + o.evaluations,
            fold_terms_max: self.fold_terms_max.max(o.fold_terms_max),
            error_estimate: self.error_estimate + o.error_estimate,
            abs_integral: self.abs_integral + o.abs_integral,
        }
    }
}

fn eval_at(f: &Evaluator, x: f64, n: i64) -> QResult<CNum> {
    let v = f(x + n as f64)?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(QError::NonFinite("integrand"))
    }
}

/// Folded sum, its absolute mass `sum_n |f(x+n)|` and the receipt.
fn fold_core(
    f: &Evaluator,
    x: f64,
    cfg: &QuadratureConfig,
    two_sided: bool,
) -> QResult<(CNum, f64, TruncationReceipt)> {
    let mut sum = eval_at(f, x, 0)?;
    let mut peak = sum.norm();
    let mut mass = peak;
    let mut used = 1usize;
    let mut tail = 0.0;
    let dirs: &[i64] = if two_sided { &[1, -1] } else { &[1] };
    for &dir in dirs {
        let mut stop = Stopper::new(cfg.fold_tail_eps);
        let mut window = cfg.fold_window;
        let mut k = 0usize;
        let last = 'grow: loop {
            while k < window {
                k += 1;
                let t = eval_at(f, x, dir * k as i64)?;
                sum += t;
                let m = t.norm();
                peak = peak.max(m);
                mass += m;
                // relative to the largest term seen so the rule still works
                // when the folded sum itself is close to zero
                if stop.done(m, sum.norm().max(peak)) && k >= cfg.fold_window {
                    break 'grow m;
                }
            }
            if window >= MAX_FOLD_WINDOW {
                return Err(QError::NonConvergence { what: "fold sum", terms: window });
            }
            window = (window * 2).min(MAX_FOLD_WINDOW);
        };
        used += k;
        tail += 3.0 * last;
    }
    Ok((sum, mass, TruncationReceipt { terms_used: used, tail_bound: tail, converged: true, abs_sum: mass }))
}

/// `sum_n f(x+n)` over all integers `n`.
pub fn fold_sum(f: &IntegrandHandle, x: f64, cfg: &QuadratureConfig) -> QResult<(CNum, TruncationReceipt)> {
    fold_core(f.eval, x, cfg, true).map(|(v, _, r)| (v, r))
}

type MassEvaluator<'a> = dyn Fn(f64) -> QResult<(CNum, f64)> + Sync + 'a;

/// Adaptive composite Gauss-Legendre quadrature of `g` over `[lo, hi]`.
pub fn integrate_interval(
    g: &Evaluator,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> QResult<(CNum, QuadDiagnostics)> {
    let gm = |x: f64| g(x).map(|v| (v, v.norm()));
    integrate_with_mass(&gm, lo, hi, cfg)
}

/// Adaptive quadrature of an integrand that also reports the magnitude
/// of the quantities it was computed from. That magnitude sets the
/// rounding floor below which refinement is pointless.
fn integrate_with_mass(
    g: &MassEvaluator,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> QResult<(CNum, QuadDiagnostics)> {
    cfg.validate()?;
    let rule = gauss_legendre(cfg.nodes_per_panel);
    let rule = &rule[..];
    let width = (hi - lo) / cfg.panel_count as f64;
    let panels: Vec<(f64, f64)> =
        (0..cfg.panel_count).map(|i| (lo + i as f64 * width, lo + (i + 1) as f64 * width)).collect();
    let coarse = cfg.execution.map(&panels, |&(a, b)| gl_panel(g, rule, a, b));
    let mut total = CNum::new(0.0, 0.0);
    let mut l1 = 0.0;
    for c in &coarse {
        let (v, a, _) = c.as_ref().map_err(|e| e.clone())?;
        total += v;
        l1 += a;
    }
    // absolute tolerance per unit length; the L1 term keeps odd or
    // cancelling integrands from demanding accuracy below rounding
    let scale = total.norm().max(1e-2 * l1);
    let tol_density = cfg.refine_tol * scale / (hi - lo).abs().max(f64::MIN_POSITIVE);
    let jobs: Vec<((f64, f64), (CNum, f64, usize))> = panels
        .into_iter()
        .zip(coarse.into_iter().map(|c| c.unwrap()))
        .collect();
    let refined = cfg.execution.map(&jobs, |&((a, b), (v, l1p, _))| {
        adapt(g, rule, a, b, v, l1p, tol_density, 0, cfg.max_depth)
    });
    let mut sum = CNum::new(0.0, 0.0);
    let mut diag = QuadDiagnostics { evaluations: cfg.panel_count * cfg.nodes_per_panel, ..Default::default() };
    for r in refined {
        let (v, d) = r?;
        sum += v;
        diag = diag.merge(d);
    }
    Ok((sum, diag))
}

/// One Gauss-Legendre panel: value, L1 mass, evaluations.
fn gl_panel(g: &MassEvaluator, rule: &[(f64, f64)], a: f64, b: f64) -> QResult<(CNum, f64, usize)> {
    let h = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let mut s = CNum::new(0.0, 0.0);
    let mut l1 = 0.0;
    for &(x, w) in rule {
        let (v, mass) = g(m + h * x)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(QError::NonFinite("integrand"));
        }
        s += v * w;
        l1 += mass * w;
    }
    Ok((s * h, l1 * h.abs(), rule.len()))
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    g: &MassEvaluator,
    rule: &[(f64, f64)],
    a: f64,
    b: f64,
    whole: CNum,
    l1: f64,
    tol_density: f64,
    depth: u32,
    max_depth: u32,
) -> QResult<(CNum, QuadDiagnostics)> {
    let m = 0.5 * (a + b);
    let (left, l1a, n1) = gl_panel(g, rule, a, m)?;
    let (right, l1b, n2) = gl_panel(g, rule, m, b)?;
    let split = left + right;
    let diff = (split - whole).norm();
    let tol = (tol_density * (b - a).abs()).max(64.0 * f64::EPSILON * l1.max(l1a + l1b));
    if diff <= tol {
        return Ok((
            split,
            QuadDiagnostics {
                panels: 1,
                max_depth: depth,
                evaluations: n1 + n2,
                fold_terms_max: 0,
                error_estimate: diff,
                abs_integral: l1a + l1b,
            },
        ));
    }
    if depth >= max_depth {
        return Err(QError::NonConvergence { what: "adaptive quadrature panel budget", terms: depth as usize });
    }
    let (v1, d1) = adapt(g, rule, a, m, left, l1a, tol_density, depth + 1, max_depth)?;
    let (v2, d2) = adapt(g, rule, m, b, right, l1b, tol_density, depth + 1, max_depth)?;
    let mut d = d1.merge(d2);
    d.evaluations += n1 + n2;
    Ok((v1 + v2, d))
}

fn fold_quadrature(
    f: &Evaluator,
    lo: f64,
    cfg: &QuadratureConfig,
    two_sided: bool,
) -> QResult<(CNum, QuadDiagnostics)> {
    let fold_max = std::sync::atomic::AtomicUsize::new(0);
    let g = |x: f64| -> QResult<(CNum, f64)> {
        let (v, mass, r) = fold_core(f, x, cfg, two_sided)?;
        fold_max.fetch_max(r.terms_used, std::sync::atomic::Ordering::Relaxed);
        Ok((v, mass))
    };
    let (v, mut d) = integrate_with_mass(&g, lo, lo + 1.0, cfg)?;
    d.fold_terms_max = fold_max.into_inner();
    Ok((v, d))
}

/// `∫_R f(x) dx` as `∫_0^1 sum_n f(x+n) dx`.
///
/// For [`DecayClass::Rational`] the line is first mapped by `x = sinh v`,
/// which turns algebraic decay into exponential decay. Degree `<= 1` is
/// not integrable and is rejected.
pub fn integrate_line(f: &IntegrandHandle, cfg: &QuadratureConfig) -> QResult<(CNum, QuadDiagnostics)> {
    match f.decay {
        DecayClass::Rational { degree } => {
            if degree <= 1.0 {
                return Err(QError::OutsideDomain(format!("rational decay of degree {degree} is not integrable")));
            }
            let g = |v: f64| -> QResult<CNum> {
                let x = v.sinh();
                if !x.is_finite() {
                    return Ok(CNum::new(0.0, 0.0));
                }
                Ok((f.eval)(x)? * v.cosh())
            };
            fold_quadrature(&g, 0.0, cfg, true)
        }
        _ => fold_quadrature(f.eval, 0.0, cfg, true),
    }
}

/// `∫_a^inf f(x) dx` as `∫_a^(a+1) sum_(n>=0) f(x+n) dx`.
pub fn integrate_halfline(f: &IntegrandHandle, a: f64, cfg: &QuadratureConfig) -> QResult<(CNum, QuadDiagnostics)> {
    if let DecayClass::Rational { degree } = f.decay {
        if degree <= 1.0 {
            return Err(QError::OutsideDomain(format!("rational decay of degree {degree} is not integrable")));
        }
    }
    fold_quadrature(f.eval, a, cfg, false)
}

/// Jackson's q-integral over `(0, inf)`, `(1-q) sum_(n in Z) g(q^n) q^n`.
pub fn jackson_qintegral(
    g: &Evaluator,
    q: &QBase,
    cfg: &QuadratureConfig,
) -> QResult<(CNum, TruncationReceipt)> {
    let term = |n: i64| -> QResult<CNum> {
        let t = q.powf(n as f64);
        Ok(g(t)? * t)
    };
    let mut sum = term(0)?;
    let mut peak = sum.norm();
    let mut mass = peak;
    let mut used = 1;
    let mut tail = 0.0;
    for dir in [1i64, -1] {
        let mut stop = Stopper::new(cfg.fold_tail_eps);
        let mut k = 0usize;
        loop {
            k += 1;
            if k > q.max_terms() {
                return Err(QError::NonConvergence { what: "Jackson q-integral", terms: k });
            }
            let t = term(dir * k as i64)?;
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(QError::NonFinite("Jackson q-integral"));
            }
            sum += t;
            peak = peak.max(t.norm());
            mass += t.norm();
            if stop.done(t.norm(), sum.norm().max(peak)) && k >= cfg.fold_window {
                tail += 3.0 * t.norm();
                break;
            }
        }
        used += k;
    }
    let s = 1.0 - q.q();
    Ok((sum * s, TruncationReceipt { terms_used: used, tail_bound: tail * s, converged: true, abs_sum: mass * s }))
}
