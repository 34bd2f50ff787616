//! `q -> 1` checks of the records that have a classical counterpart.

use super::records::ramanujan_integral_rhs;
use super::{find, CValue, EvalContext, IdentityRecord, ParameterPoint, PeriodicWeight, Side};
use crate::error::{QError, QResult};
use crate::foldquad::QuadratureConfig;
use crate::qcore::{product_ratio, qgamma, CNum, QBase};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, ln_gamma};
use std::f64::consts::PI;

/// Errors at or below this level count as converged; the monotonicity
/// rule does not apply to them.
pub const LIMIT_NOISE_FLOOR: f64 = 1e-13;

/// Default `q` sequence for [`limit_suites`].
pub const DEFAULT_LIMIT_QS: [f64; 3] = [0.9, 0.99, 0.999];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitEntry {
    pub q: f64,
    pub value: Option<CValue>,
    /// Relative error against the classical target.
    pub error: Option<f64>,
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub identity: String,
    pub point: ParameterPoint,
    pub target: CValue,
    pub entries: Vec<LimitEntry>,
    /// `None` for fewer than two values or when any `q` failed.
    pub monotone: Option<bool>,
}

impl LimitReport {
    fn finish(identity: &str, point: ParameterPoint, target: CNum, entries: Vec<LimitEntry>) -> Self {
        let errs: Option<Vec<f64>> = entries.iter().map(|e| e.error).collect();
        let monotone = match errs {
            Some(e) if e.len() >= 2 => {
                Some(e.windows(2).all(|w| w[1] < w[0] || w[1] <= LIMIT_NOISE_FLOOR))
            }
            _ => None,
        };
        LimitReport { identity: identity.to_string(), point, target: target.into(), entries, monotone }
    }
}

fn check_sequence(qs: &[f64]) -> QResult<()> {
    if qs.is_empty() {
        return Err(QError::InvalidConfig("empty q sequence".into()));
    }
    if qs.iter().any(|&q| !(q > 0.0 && q < 1.0)) {
        return Err(QError::InvalidConfig("every q must lie in (0, 1)".into()));
    }
    if qs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(QError::InvalidConfig("q sequence must be increasing".into()));
    }
    Ok(())
}

fn real(p: &ParameterPoint, name: &str) -> QResult<f64> {
    match p.get(name) {
        Some(v) if v.im == 0.0 && v.re.is_finite() => Ok(v.re),
        Some(_) => Err(QError::OutsideDomain(format!("{name} must be real for the classical limit"))),
        None => Err(QError::OutsideDomain(format!("missing parameter {name}"))),
    }
}

fn entries(qs: &[f64], target: CNum, value: impl Fn(&QBase) -> QResult<CNum>) -> Vec<LimitEntry> {
    qs.iter()
        .map(|&q| {
            let r = QBase::new(q).and_then(|qb| value(&qb));
            match r {
                Ok(v) if v.re.is_finite() && v.im.is_finite() => LimitEntry {
                    q,
                    value: Some(v.into()),
                    error: Some((v - target).norm() / target.norm()),
                    message: None,
                },
                Ok(_) => LimitEntry { q, value: None, error: None, message: Some("non-finite value".into()) },
                Err(e) => LimitEntry { q, value: None, error: None, message: Some(e.to_string()) },
            }
        })
        .collect()
}

fn c(re: f64) -> CNum {
    CNum::new(re, 0.0)
}

/// Product side of the pair integral divided by
/// `(q;q)^2 (1-q)^(2-α-β) / ([(q²;q²)/(q;q)]² (1+q))`, which turns it into
/// `1/Γ_q(α+β-1)`-type form. Kept scaled throughout: each factor
/// underflows long before `q = 0.999`.
fn normalized_pair(alpha: f64, beta: f64, q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let h = qq.sqrt();
    let rhs = product_ratio(&[c(qq), c(qq.powf(alpha + beta - 1.0))], &[c(-qq.powf(alpha) / h), c(-qq.powf(beta) / h)], q)?;
    let q4 = product_ratio(&[], &[c(qq); 4], q)?;
    let q2 = product_ratio(&[c(qq * qq); 2], &[], &q.squared())?;
    Ok((rhs * q4 * q2).to_complex() * ((1.0 + qq) / (1.0 - qq).powf(2.0 - alpha - beta)))
}

/// Compare a limit-type record with its classical `q -> 1` value along
/// `q_seq`, which must be increasing inside `(0, 1)`.
pub fn limit_check(rec: &IdentityRecord, point: &ParameterPoint, q_seq: &[f64]) -> QResult<LimitReport> {
    check_sequence(q_seq)?;
    let point = point.clone();
    match rec.id {
        "euler-beta-limit" => {
            let (a, b) = (real(&point, "a")?, real(&point, "b")?);
            let target = c((ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp());
            let e = entries(q_seq, target, |q| ramanujan_integral_rhs(c(a), c(b), q));
            Ok(LimitReport::finish(rec.id, point, target, e))
        }
        "ramanujan-pair-2.13" => {
            let (al, be) = (real(&point, "alpha")?, real(&point, "beta")?);
            let target = c(2f64.powf(al + be - 2.0) / gamma(al + be - 1.0));
            let e = entries(q_seq, target, |q| {
                normalized_pair(al, be, q)
            });
            Ok(LimitReport::finish(rec.id, point, target, e))
        }
        "antiperiodic-qgamma-4.5" => {
            let (al, be, ga) = (real(&point, "alpha")?, real(&point, "beta")?, real(&point, "gamma")?);
            let de = be + ga - al;
            // ∫_0^1 sin(πt) cos(π(2t+α-β)/2) dt = -sin(π(α-β)/2)/2
            let num = -(PI * (al - be) / 2.0).sin() / 2.0;
            let target = c(num / (gamma((al + be) / 2.0) * gamma((ga + de) / 2.0) * gamma(al + de - 1.0)));
            let weight = PeriodicWeight::sine();
            // limit errors are far above 1e-10; near q = 1 the q-gamma noise
            // keeps a tighter panel tolerance from ever being met
            let quad = QuadratureConfig { refine_tol: 1e-10, ..QuadratureConfig::default().sequential() };
            let e = entries(q_seq, target, |q| {
                let p = ParameterPoint { q: q.q(), ..point.clone() };
                let cx = EvalContext { point: &p, q: *q, weight: &weight, quad };
                let mut side = Side::new();
                let (pre, inner) = super::records::ap_gamma_rhs_parts(&cx, &mut side)?;
                Ok(pre * inner)
            });
            Ok(LimitReport::finish(rec.id, point, target, e))
        }
        other => Err(QError::InvalidConfig(format!("{other} has no classical limit check"))),
    }
}

/// `Γ_q(1/2)` against `√π`.
pub fn qgamma_half_limit(q_seq: &[f64]) -> QResult<LimitReport> {
    check_sequence(q_seq)?;
    let target = c(PI.sqrt());
    let e = entries(q_seq, target, |q| qgamma(c(0.5), q));
    Ok(LimitReport::finish("qgamma-half", ParameterPoint::new(q_seq[q_seq.len() - 1]), target, e))
}

/// The built-in limit runs: each record with its parameter point.
pub fn limit_suites() -> Vec<(&'static IdentityRecord, ParameterPoint)> {
    let mk = |id: &str| find(id).expect("built-in record");
    vec![
        (mk("euler-beta-limit"), ParameterPoint::new(0.9).with_real("a", 1.5).with_real("b", 2.5)),
        (mk("ramanujan-pair-2.13"), ParameterPoint::new(0.9).with_real("alpha", 1.0).with_real("beta", 1.0)),
        (mk("ramanujan-pair-2.13"), ParameterPoint::new(0.9).with_real("alpha", 1.3).with_real("beta", 0.9)),
        (
            mk("antiperiodic-qgamma-4.5"),
            ParameterPoint::new(0.9).with_real("alpha", 0.8).with_real("beta", 1.1).with_real("gamma", 1.3),
        ),
    ]
}
