//! Integrals over the real line whose integrands fold to a unit-periodic
//! function, plus the gamma-function specializations.

use super::{c, g, lnq, off_positive_axis, ARG_MARGIN, MIN_RATE};
use crate::bilateral::{rphis_eval, SeriesSpec};
use crate::error::QResult;
use crate::identities::eval::{line, prod, prod_s, unit, weight_integral, Side, Tail};
use crate::identities::{Constraint, Draw, EvalContext, IdentityRecord, ParameterPoint, WeightKind};
use crate::qcore::{qbessel_series, qgamma, BesselKind, CNum, QBase, Scaled};
use std::f64::consts::PI;

fn master_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, z) = (cx.p("a")?, cx.p("b")?, cx.p("z")?);
    let q = &cx.q;
    let qq = cx.qf();
    let az = a * z;
    let rate = (-z.norm().ln()).min(-(b / az).norm().ln());
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(rate),
        |x| {
            let t = qq.powf(x);
            let s = prod_s(&[b * t, qq / a / t], &[az * t, qq / az / t], q)?;
            Ok(s.to_complex() * cx.w(x))
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn master_rhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, z) = (cx.p("a")?, cx.p("b")?, cx.p("z")?);
    let mut side = Side::new();
    let pint = weight_integral(cx, &mut side)?;
    let k = prod(&[c(cx.qf(), 0.0), b / a], &[z, b / (a * z)], &cx.q)?;
    Ok(side.value(k * pint))
}

/// `(-q^(b+x), -q^(a+1-x);q)_inf / (-q^x, -q^(1-x);q)_inf`
fn symmetric_kernel(a: CNum, b: CNum, x: f64, q: &QBase) -> QResult<Scaled> {
    let qq = q.q();
    let t = qq.powf(x);
    prod_s(&[-q.pow(b) * t, -q.pow(a + 1.0) / t], &[c(-t, 0.0), c(-qq / t, 0.0)], q)
}

fn symmetric_master_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b) = (cx.p("a")?, cx.p("b")?);
    let rate = a.re.min(b.re) * cx.l();
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(rate),
        |x| Ok(symmetric_kernel(a, b, x, &cx.q)?.to_complex() * cx.w(x)),
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn symmetric_master_rhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b) = (cx.p("a")?, cx.p("b")?);
    let q = &cx.q;
    let mut side = Side::new();
    let pint = weight_integral(cx, &mut side)?;
    let k = prod(&[c(cx.qf(), 0.0), q.pow(a + b)], &[q.pow(a), q.pow(b)], q)?;
    Ok(side.value(k * pint))
}

/// `q^(cx)` as a scaled number.
fn qpow_cx(cc: CNum, x: f64, q: &QBase) -> Scaled {
    Scaled::exp(cc * (x * q.ln_q()))
}

fn askey_roy_master_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, cc) = (cx.p("a")?, cx.p("b")?, cx.p("c")?);
    let q = &cx.q;
    let rate = (a + cc).re.min((b - cc).re) * cx.l();
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(rate),
        |x| Ok((symmetric_kernel(a, b, x, q)? * qpow_cx(cc, x, q)).to_complex() * cx.w(x)),
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn askey_roy_master_rhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, cc) = (cx.p("a")?, cx.p("b")?, cx.p("c")?);
    let q = &cx.q;
    let mut side = Side::new();
    let inner = unit(
        cx,
        |x| Ok((symmetric_kernel(-cc, cc, x, q)? * qpow_cx(cc, x, q)).to_complex() * cx.w(x)),
        &mut side,
        "unit_integral",
    )?;
    let k = prod(&[c(cx.qf(), 0.0), q.pow(a + b)], &[q.pow(a + cc), q.pow(b - cc)], q)?;
    Ok(side.value(k * inner))
}

fn g_of_c_lhs(cx: &EvalContext) -> QResult<Side> {
    let cc = cx.p("c")?;
    let q = &cx.q;
    let mut side = Side::new();
    let v = unit(cx, |x| Ok((symmetric_kernel(-cc, cc, x, q)? * qpow_cx(cc, x, q)).to_complex()), &mut side, "integral")?;
    Ok(side.value(v))
}

fn reflection(cc: CNum, q: &QBase) -> QResult<CNum> {
    let one = c(1.0, 0.0);
    Ok(PI / (cc * PI).sin() / (qgamma(cc, q)? * qgamma(one - cc, q)?))
}

fn g_of_c_rhs(cx: &EvalContext) -> QResult<Side> {
    let cc = cx.p("c")?;
    Ok(Side::new().value(reflection(cc, &cx.q)? * ((1.0 - cx.qf()) / cx.l())))
}

fn combined_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, cc) = (cx.p("a")?, cx.p("b")?, cx.p("c")?);
    let q = &cx.q;
    let rate = (a + cc).re.min((b - cc).re) * cx.l();
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(rate),
        |x| Ok((symmetric_kernel(a, b, x, q)? * qpow_cx(cc, x, q)).to_complex()),
        &mut side,
        "integral",
    )?;
    Ok(side.value(v * cx.l()))
}

fn combined_rhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, cc) = (cx.p("a")?, cx.p("b")?, cx.p("c")?);
    let q = &cx.q;
    let v = reflection(cc, q)? * qgamma(a + cc, q)? * qgamma(b - cc, q)? / qgamma(a + b, q)?;
    Ok(Side::new().value(v))
}

/// `(1/L) ∫ (q^α t, q^β/t;q)_inf / (-q^(1/2) t, -q^(1/2)/t;q)_inf du`, `t = e^(-u)`.
pub(crate) fn ramanujan_pair_integral(alpha: CNum, beta: CNum, cx: &EvalContext, side: &mut Side) -> QResult<CNum> {
    let q = &cx.q;
    let (qa, qb) = (q.pow(alpha), q.pow(beta));
    let h = cx.qf().sqrt();
    let v = line(
        cx,
        Tail::Exp(alpha.re.min(beta.re) - 0.5),
        |u| {
            let t = (-u).exp();
            if !(t.is_finite() && t > 0.0) {
                return Ok(c(0.0, 0.0));
            }
            Ok(prod_s(&[qa * t, qb / t], &[c(-h * t, 0.0), c(-h / t, 0.0)], q)?.to_complex())
        },
        side,
        "integral",
    )?;
    Ok(v / cx.l())
}

fn ramanujan_pair_rhs(alpha: CNum, beta: CNum, q: &QBase) -> QResult<CNum> {
    let h = q.q().sqrt();
    prod(&[c(q.q(), 0.0), q.pow(alpha + beta - 1.0)], &[-q.pow(alpha) / h, -q.pow(beta) / h], q)
}

fn pair_lhs(cx: &EvalContext) -> QResult<Side> {
    let mut side = Side::new();
    let v = ramanujan_pair_integral(cx.p("alpha")?, cx.p("beta")?, cx, &mut side)?;
    Ok(side.value(v))
}

fn pair_rhs(cx: &EvalContext) -> QResult<Side> {
    Ok(Side::new().value(ramanujan_pair_rhs(cx.p("alpha")?, cx.p("beta")?, &cx.q)?))
}

/// `(q^(λ+μ+1);q)_inf / (q;q)_inf 2φ1(-q^(λ+1/2), -(b²/a²) q^(μ+1/2); q^(λ+μ+1); q, -a²/4)`
fn bessel_printed_rhs(lam: f64, mu: f64, a: CNum, b: CNum, q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let top = vec![c(-qq.powf(lam + 0.5), 0.0), -(b * b / (a * a)) * qq.powf(mu + 0.5)];
    let bottom = c(qq.powf(lam + mu + 1.0), 0.0);
    let (s, _) = rphis_eval(&SeriesSpec::unilateral(top, vec![bottom], -(a * a) / 4.0), q)?;
    Ok(prod(&[bottom], &[c(qq, 0.0)], q)? * s)
}

fn bessel_lhs(cx: &EvalContext) -> QResult<Side> {
    let (lam, mu, a, b) = (cx.re("lambda")?, cx.re("mu")?, cx.p("a")?, cx.p("b")?);
    let q = &cx.q;
    let qq = cx.qf();
    let h = qq.sqrt();
    let outer = [c(-qq.powf(lam + 0.5), 0.0), c(-qq.powf(mu + 0.5), 0.0)];
    let scale = 2f64.powf(-lam - mu);
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp((lam.min(mu) + 0.5) * cx.l()),
        |x| {
            let s1 = qbessel_series(BesselKind::First, c(lam + x, 0.0), a, q)?;
            let s2 = qbessel_series(BesselKind::Second, c(mu - x, 0.0), b, q)?;
            let t = qq.powf(x);
            let k = prod_s(&outer, &[c(-h * t, 0.0), c(-h / t, 0.0)], q)?;
            Ok((s1 * s2 * k).to_complex() * scale)
        },
        &mut side,
        "integral",
    )?;
    let printed = bessel_printed_rhs(lam, mu, a, b, q)?;
    side.receipt("printed_form_ratio", (printed / v).norm());
    Ok(side.value(v))
}

fn bessel_rhs(cx: &EvalContext) -> QResult<Side> {
    let (lam, mu, a, b) = (cx.re("lambda")?, cx.re("mu")?, cx.p("a")?, cx.p("b")?);
    let v = bessel_printed_rhs(lam, mu, a, b, &cx.q)? * 2f64.powf(-lam - mu);
    Ok(Side::new().value(v))
}

/// `Re v * ln(1/q) >= MIN_RATE` for every `v`.
fn re_rates(p: &ParameterPoint, vs: &[CNum]) -> bool {
    let l = lnq(p);
    vs.iter().all(|v| v.re * l >= MIN_RATE)
}

/// Lower bound for `Re v` so that `Re v * ln(1/q) >= MIN_RATE`.
fn re_floor(d: &Draw) -> f64 {
    MIN_RATE / d.ln_inv_q()
}

fn ab_draw(d: &mut Draw, spread: f64) -> (CNum, CNum) {
    let lo = re_floor(d);
    let a = d.boxed((lo, lo + spread), (-0.5, 0.5));
    let b = d.boxed((lo, lo + spread), (-0.5, 0.5));
    (a, b)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        IdentityRecord {
            id: "master-fold-2.5",
            anchor: "folded 1psi1 integral with a periodic weight",
            params: &["a", "b", "z"],
            constraints: vec![
                Constraint::new("-ln|z| >= 0.2 and -ln|b/az| >= 0.2", |p| {
                    let (a, b, z) = (g(p, "a")?, g(p, "b")?, g(p, "z")?);
                    Some(-z.norm().ln() >= MIN_RATE && -(b / (a * z)).norm().ln() >= MIN_RATE)
                }),
                Constraint::new("az at least 0.1 rad off the positive real axis", |p| {
                    Some(off_positive_axis(g(p, "a")? * g(p, "z")?, ARG_MARGIN))
                }),
                Constraint::new("b/a, z, b/az off the lattice q^k", |p| {
                    let (a, b, z) = (g(p, "a")?, g(p, "b")?, g(p, "z")?);
                    Some(super::all_off_lattice(&[b / a, z, b / (a * z)], p.q))
                }),
            ],
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-7,
            lhs: master_lhs,
            rhs: master_rhs,
            propose: |d: &mut Draw| {
                let a = d.polar(0.5, 2.0);
                let z = d.polar(0.2, 0.8);
                let b = a * z * d.polar(0.2, 0.8);
                ParameterPoint::new(d.q).with("a", a).with("b", b).with("z", z)
            },
            notes: "",
        },
        IdentityRecord {
            id: "symmetric-master-2.6",
            anchor: "symmetric fold integral with a periodic weight",
            params: &["a", "b"],
            constraints: vec![Constraint::new("Re a ln(1/q), Re b ln(1/q) >= 0.2", |p| {
                Some(re_rates(p, &[g(p, "a")?, g(p, "b")?]))
            })],
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-7,
            lhs: symmetric_master_lhs,
            rhs: symmetric_master_rhs,
            propose: |d: &mut Draw| {
                let (a, b) = ab_draw(d, 2.5);
                ParameterPoint::new(d.q).with("a", a).with("b", b)
            },
            notes: "",
        },
        IdentityRecord {
            id: "askey-roy-master-2.9",
            anchor: "q^(cx)-weighted symmetric fold integral",
            params: &["a", "b", "c"],
            constraints: vec![Constraint::new("Re(a+c) ln(1/q), Re(b-c) ln(1/q) >= 0.2", |p| {
                let (a, b, cc) = (g(p, "a")?, g(p, "b")?, g(p, "c")?);
                Some(re_rates(p, &[a + cc, b - cc]))
            })],
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-7,
            lhs: askey_roy_master_lhs,
            rhs: askey_roy_master_rhs,
            propose: |d: &mut Draw| {
                let lo = re_floor(d);
                let cc = d.boxed((-1.0, 1.0), (-0.3, 0.3));
                let a = d.boxed((lo - cc.re, lo - cc.re + 2.0), (-0.5, 0.5));
                let b = d.boxed((lo + cc.re, lo + cc.re + 2.0), (-0.5, 0.5));
                ParameterPoint::new(d.q).with("a", a).with("b", b).with("c", cc)
            },
            notes: "",
        },
        IdentityRecord {
            id: "g-of-c-2.11",
            anchor: "unit-interval integral against q-gamma reflection",
            params: &["c"],
            constraints: vec![Constraint::new("0.02 <= Re c <= 0.98", |p| {
                let cc = g(p, "c")?;
                Some((0.02..=0.98).contains(&cc.re))
            })],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: g_of_c_lhs,
            rhs: g_of_c_rhs,
            propose: |d: &mut Draw| ParameterPoint::new(d.q).with("c", d.boxed((0.02, 0.98), (-0.5, 0.5))),
            notes: "",
        },
        IdentityRecord {
            id: "askey-roy-combined-2.12",
            anchor: "q^(cx)-weighted integral in q-gamma form",
            params: &["a", "b", "c"],
            constraints: vec![
                Constraint::new("0.02 <= Re c <= 0.98", |p| Some((0.02..=0.98).contains(&g(p, "c")?.re))),
                Constraint::new("Re(a+c) ln(1/q), Re(b-c) ln(1/q) >= 0.2", |p| {
                    let (a, b, cc) = (g(p, "a")?, g(p, "b")?, g(p, "c")?);
                    Some(re_rates(p, &[a + cc, b - cc]))
                }),
            ],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: combined_lhs,
            rhs: combined_rhs,
            propose: |d: &mut Draw| {
                let lo = re_floor(d);
                let cc = d.boxed((0.02, 0.98), (-0.3, 0.3));
                let a = d.boxed((lo - cc.re, lo - cc.re + 2.0), (-0.5, 0.5));
                let b = d.boxed((lo + cc.re, lo + cc.re + 2.0), (-0.5, 0.5));
                ParameterPoint::new(d.q).with("a", a).with("b", b).with("c", cc)
            },
            notes: "",
        },
        IdentityRecord {
            id: "ramanujan-pair-2.13",
            anchor: "integral of a pair of reciprocal q-gamma-type products",
            params: &["alpha", "beta"],
            constraints: vec![Constraint::new("Re alpha, Re beta >= 0.75", |p| {
                Some(g(p, "alpha")?.re >= 0.75 && g(p, "beta")?.re >= 0.75)
            })],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: pair_lhs,
            rhs: pair_rhs,
            propose: |d: &mut Draw| {
                ParameterPoint::new(d.q)
                    .with("alpha", d.boxed((0.75, 3.0), (-0.5, 0.5)))
                    .with("beta", d.boxed((0.75, 3.0), (-0.5, 0.5)))
            },
            notes: "",
        },
        IdentityRecord {
            id: "qbessel-integral-2.15",
            anchor: "integral over the order of a product of q-Bessel functions",
            params: &["lambda", "mu", "a", "b"],
            constraints: vec![
                Constraint::new("lambda, mu, a, b real", |p| {
                    Some(["lambda", "mu", "a", "b"].iter().all(|n| g(p, n).map(|v| v.im == 0.0).unwrap_or(false)))
                }),
                Constraint::new("0 < lambda, mu <= 2", |p| {
                    let (l, m) = (g(p, "lambda")?.re, g(p, "mu")?.re);
                    Some(l > 0.0 && l <= 2.0 && m > 0.0 && m <= 2.0)
                }),
                Constraint::new("(min(lambda, mu) + 1/2) ln(1/q) >= 0.2", |p| {
                    let (l, m) = (g(p, "lambda")?.re, g(p, "mu")?.re);
                    Some((l.min(m) + 0.5) * lnq(p) >= MIN_RATE)
                }),
                Constraint::new("0.2 <= a, b <= 0.8", |p| {
                    let (a, b) = (g(p, "a")?.re, g(p, "b")?.re);
                    Some((0.2..=0.8).contains(&a) && (0.2..=0.8).contains(&b))
                }),
            ],
            weight_slot: None,
            tolerance: 1e-6,
            lhs: bessel_lhs,
            rhs: bessel_rhs,
            propose: |d: &mut Draw| {
                let lo = (re_floor(d) - 0.5).max(0.01);
                ParameterPoint::new(d.q)
                    .with("lambda", d.real(lo, 2.0))
                    .with("mu", d.real(lo, 2.0))
                    .with("a", d.real(0.2, 0.8))
                    .with("b", d.real(0.2, 0.8))
            },
            notes: "the right side carries 2^(-lambda-mu); the receipt printed_form_ratio measures the form without it",
        },
    ]
}
