//! The well-poised 2psi2 sum and its integral analogue with an
//! anti-periodic weight.

use super::{c, g, MIN_RATE};
use crate::bilateral::{wellpoised_2psi2_lhs, wellpoised_2psi2_rhs};
use crate::error::QResult;
use crate::identities::eval::{line, prod, prod_s, unit, Side, Tail};
use crate::identities::{Constraint, Draw, EvalContext, IdentityRecord, ParameterPoint, WeightKind};
use crate::qcore::{qgamma, qgamma_recip_scaled, CNum, QBase, Scaled};

fn abc(cx: &EvalContext) -> QResult<[CNum; 3]> {
    Ok([cx.p("a")?, cx.p("b")?, cx.p("c")?])
}

fn wp_lhs(cx: &EvalContext) -> QResult<Side> {
    let [a, b, cc] = abc(cx)?;
    let mut side = Side::new();
    let v = side.series("series", wellpoised_2psi2_lhs(a, b, cc, &cx.q)?);
    Ok(side.value(v))
}

fn wp_rhs(cx: &EvalContext) -> QResult<Side> {
    let [a, b, cc] = abc(cx)?;
    Ok(Side::new().value(wellpoised_2psi2_rhs(a, b, cc, &cx.q)?))
}

/// `(alpha, beta, gamma, delta)` with `delta = beta + gamma - alpha`.
pub(crate) fn greek(p: &ParameterPoint) -> Option<[CNum; 4]> {
    let (al, be, ga) = (p.get("alpha")?, p.get("beta")?, p.get("gamma")?);
    Some([al, be, ga, be + ga - al])
}

fn greek_cx(cx: &EvalContext) -> QResult<[CNum; 4]> {
    let [al, be, ga] = [cx.p("alpha")?, cx.p("beta")?, cx.p("gamma")?];
    Ok([al, be, ga, be + ga - al])
}

/// `(Re(beta+gamma) - 1) ln(1/q)`
fn decay(be: CNum, ga: CNum, l: f64) -> f64 {
    ((be + ga).re - 1.0) * l
}

/// `q^((alpha-beta)x + x^2)`
fn gauss_factor(al: CNum, be: CNum, x: f64, q: &QBase) -> Scaled {
    Scaled::exp(((al - be) * x + x * x) * q.ln_q())
}

fn ap_lhs(cx: &EvalContext) -> QResult<Side> {
    let [al, be, ga, de] = greek_cx(cx)?;
    let q = &cx.q;
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(decay(be, ga, cx.l())),
        |x| {
            let k = prod_s(&[q.pow(al + x), q.pow(be - x), q.pow(ga + x), q.pow(de - x)], &[], q)?;
            Ok((k * gauss_factor(al, be, x, q)).to_complex() * cx.w(x))
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn ap_rhs(cx: &EvalContext) -> QResult<Side> {
    let [al, be, ga, de] = greek_cx(cx)?;
    let q = &cx.q;
    let q2 = q.squared();
    let qq = cx.qf();
    let mut side = Side::new();
    let inner = unit(
        cx,
        |x| {
            let k = prod_s(&[q.pow(al - be + 1.0 + 2.0 * x), q.pow(be - al + 1.0 - 2.0 * x)], &[], &q2)?;
            Ok((k * gauss_factor(al, be, x, q)).to_complex() * cx.w(x))
        },
        &mut side,
        "unit_integral",
    )?;
    let w = q.pow(al + de - 1.0);
    let k = prod(&[w], &[-w], q)? * prod(&[q.pow(al + be), q.pow(ga + de), c(qq * qq, 0.0)], &[], &q2)?;
    Ok(side.value(k * inner))
}

fn ap_gamma_lhs(cx: &EvalContext) -> QResult<Side> {
    let [al, be, ga, de] = greek_cx(cx)?;
    let q = &cx.q;
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(decay(be, ga, cx.l())),
        |x| {
            let r = qgamma_recip_scaled(al + x, q)?
                * qgamma_recip_scaled(be - x, q)?
                * qgamma_recip_scaled(ga + x, q)?
                * qgamma_recip_scaled(de - x, q)?;
            Ok((r * gauss_factor(al, be, x, q)).to_complex() * cx.w(x))
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

/// Right side of the q-gamma form, split as `(prefactor, unit integral)`.
pub(crate) fn ap_gamma_rhs_parts(cx: &EvalContext, side: &mut Side) -> QResult<(CNum, CNum)> {
    let [al, be, ga, de] = greek_cx(cx)?;
    let q = &cx.q;
    let q2 = q.squared();
    let qq = cx.qf();
    let one = c(1.0, 0.0);
    let inner = unit(
        cx,
        |x| {
            let r = qgamma_recip_scaled((al - be + 1.0) / 2.0 + x, &q2)? * qgamma_recip_scaled((be - al + 1.0) / 2.0 - x, &q2)?;
            Ok((r * gauss_factor(al, be, x, q)).to_complex() * cx.w(x))
        },
        side,
        "unit_integral",
    )?;
    let lam = al + de - 2.0;
    // (-q;q)_lam = (-q;q)_inf / (-q^(lam+1);q)_inf
    let shifted = prod(&[c(-qq, 0.0)], &[-q.pow(lam + 1.0)], q)?;
    let g_half = qgamma(c(0.5, 0.0), &q2)?;
    let pre = shifted / (one * (1.0 + qq)).powc(lam) * g_half * g_half
        / (qgamma((al + be) / 2.0, &q2)? * qgamma((ga + de) / 2.0, &q2)? * qgamma(al + de - 1.0, q)?);
    Ok((pre, inner))
}

fn ap_gamma_rhs(cx: &EvalContext) -> QResult<Side> {
    let mut side = Side::new();
    let (pre, inner) = ap_gamma_rhs_parts(cx, &mut side)?;
    Ok(side.value(pre * inner))
}

fn greek_constraints() -> Vec<Constraint> {
    vec![
        Constraint::new("(Re(beta+gamma) - 1) ln(1/q) >= 0.2", |p| {
            let [_, be, ga, _] = greek(p)?;
            Some(decay(be, ga, super::lnq(p)) >= MIN_RATE)
        }),
        Constraint::new("Re alpha, Re beta, Re gamma, Re delta > 0", |p| Some(greek(p)?.iter().all(|v| v.re > 0.0))),
    ]
}

fn greek_draw(d: &mut Draw) -> ParameterPoint {
    let half = (1.0 + MIN_RATE / d.ln_inv_q()) / 2.0;
    let al = d.boxed((0.3, 2.0), (-0.3, 0.3));
    let be = d.boxed((half, half + 1.5), (-0.3, 0.3));
    let ga = d.boxed((half, half + 1.5), (-0.3, 0.3));
    ParameterPoint::new(d.q).with("alpha", al).with("beta", be).with("gamma", ga)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        IdentityRecord {
            id: "wellpoised-2psi2-4.2",
            anchor: "well-poised 2psi2 sum with alternating sign",
            params: &["a", "b", "c"],
            constraints: vec![Constraint::new("|aq/bc| <= 0.9", |p| {
                Some((g(p, "a")? * p.q / (g(p, "b")? * g(p, "c")?)).norm() <= 0.9)
            })],
            weight_slot: None,
            tolerance: 1e-10,
            lhs: wp_lhs,
            rhs: wp_rhs,
            propose: |d: &mut Draw| {
                ParameterPoint::new(d.q).with("a", d.polar(0.3, 1.5)).with("b", d.polar(0.8, 3.0)).with("c", d.polar(0.8, 3.0))
            },
            notes: "",
        },
        IdentityRecord {
            id: "antiperiodic-4.4",
            anchor: "integral with an anti-periodic weight in product form",
            params: &["alpha", "beta", "gamma"],
            constraints: greek_constraints(),
            weight_slot: Some(WeightKind::AntiPeriodic),
            tolerance: 1e-7,
            lhs: ap_lhs,
            rhs: ap_rhs,
            propose: greek_draw,
            notes: "delta = beta + gamma - alpha",
        },
        IdentityRecord {
            id: "antiperiodic-qgamma-4.5",
            anchor: "integral with an anti-periodic weight in q-gamma form",
            params: &["alpha", "beta", "gamma"],
            constraints: greek_constraints(),
            weight_slot: Some(WeightKind::AntiPeriodic),
            tolerance: 1e-7,
            lhs: ap_gamma_lhs,
            rhs: ap_gamma_rhs,
            propose: greek_draw,
            notes: "delta = beta + gamma - alpha",
        },
    ]
}
