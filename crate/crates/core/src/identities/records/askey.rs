//! Askey's integral, the eta function and the Ismail-Masson integral.

use super::{all_off_lattice, c, g, off_positive_axis, ARG_MARGIN, MIN_RATE};
use crate::error::QResult;
use crate::foldquad::jackson_qintegral;
use crate::identities::eval::{line, line_rational, prod, prod_s, rel, unit, weight_integral, Side, Tail};
use crate::identities::{Constraint, Draw, EvalContext, IdentityRecord, ParameterPoint, WeightKind};
use crate::qcore::{h_product_scaled, CNum, QBase, Scaled};
use std::f64::consts::PI;

fn abcd(cx: &EvalContext) -> QResult<[CNum; 4]> {
    Ok([cx.p("a")?, cx.p("b")?, cx.p("c")?, cx.p("d")?])
}

/// `-ln|abcd/q^3|`, the decay rate of the 6psi6-type integrands.
fn abcd_rate(p: [CNum; 4], q: f64) -> f64 {
    -(p[0] * p[1] * p[2] * p[3] / q.powi(3)).norm().ln()
}

/// `(q, ab/q, ac/q, ad/q, bc/q, bd/q, cd/q;q)_inf / (abcd/q^3;q)_inf`
pub(crate) fn askey_product(p: [CNum; 4], q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let [a, b, cc, d] = p;
    prod(
        &[c(qq, 0.0), a * b / qq, a * cc / qq, a * d / qq, b * cc / qq, b * d / qq, cc * d / qq],
        &[a * b * cc * d / qq.powi(3)],
        q,
    )
}

/// `(αat, a/(αt), ..., αdt, d/(αt);q)_inf / (qα²t², q/(α²t²);q)_inf`
fn sixpsisix_kernel(p: &[CNum; 4], alpha: CNum, t: f64, q: &QBase) -> QResult<Scaled> {
    let qq = q.q();
    let num: Vec<CNum> = p.iter().flat_map(|&a| [alpha * a * t, a / alpha / t]).collect();
    let a2 = alpha * alpha;
    prod_s(&num, &[a2 * (qq * t * t), c(qq, 0.0) / a2 / t / t], q)
}

fn sixpsisix_lhs(cx: &EvalContext) -> QResult<Side> {
    let p = abcd(cx)?;
    let alpha = cx.p("alpha")?;
    let qq = cx.qf();
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(abcd_rate(p, qq)),
        |x| Ok(sixpsisix_kernel(&p, alpha, qq.powf(x), &cx.q)?.to_complex() * cx.w(x)),
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn sixpsisix_rhs(cx: &EvalContext) -> QResult<Side> {
    let mut side = Side::new();
    let pint = weight_integral(cx, &mut side)?;
    Ok(side.value(askey_product(abcd(cx)?, &cx.q)? * pint))
}

fn askey_lhs(cx: &EvalContext) -> QResult<Side> {
    let p = abcd(cx)?;
    let q = &cx.q;
    let qq = cx.qf();
    let h = qq.sqrt();
    let base = [c(h, 0.0), c(-h, 0.0), c(qq, 0.0), c(-qq, 0.0)];
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(abcd_rate(p, qq) / cx.l()),
        |u| {
            let x = c(0.0, u.sinh());
            if !x.im.is_finite() {
                return Ok(c(0.0, 0.0));
            }
            let mut acc = Scaled::ONE;
            for a in p {
                acc = acc * h_product_scaled(x, a, q)?.0;
            }
            for a in base {
                acc = acc / h_product_scaled(x, a, q)?.0;
            }
            Ok(acc.to_complex())
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn askey_rhs(cx: &EvalContext) -> QResult<Side> {
    Ok(Side::new().value(askey_product(abcd(cx)?, &cx.q)? * cx.l()))
}

fn fg(cx: &EvalContext) -> QResult<(CNum, CNum)> {
    Ok((cx.p("f")?, cx.p("g")?))
}

fn eta_u_lhs(cx: &EvalContext) -> QResult<Side> {
    let (f, gg) = fg(cx)?;
    let qq = cx.qf();
    let one = c(1.0, 0.0);
    let mut side = Side::new();
    let v = line_rational(
        cx,
        2.0,
        |u| Ok(one / ((one - f * f - f * u) * (one - qq * qq / (gg * gg) + gg.inv() * (qq * u)))),
        &mut side,
        "integral",
    )?;
    Ok(side.value(v / cx.l()))
}

fn eta_u_rhs(cx: &EvalContext) -> QResult<Side> {
    let (f, gg) = fg(cx)?;
    let qq = cx.qf();
    let one = c(1.0, 0.0);
    let v = c(0.0, 2.0 * PI) / (f * cx.l() * (one - f * qq / gg) * (one + qq / (f * gg)));
    Ok(Side::new().value(v))
}

/// The eight denominator factors shared by the eta and Ismail-Masson integrands.
fn eta_denominators(f: CNum, gg: CNum, t: f64, qq: f64) -> [CNum; 8] {
    let mut out = [c(0.0, 0.0); 8];
    for (i, w) in [f, gg].into_iter().enumerate() {
        out[4 * i] = w / t;
        out[4 * i + 1] = (qq * t) / w;
        out[4 * i + 2] = -w * t;
        out[4 * i + 3] = -(qq / t) / w;
    }
    out
}

/// `η(f,g)` by quadrature over one period.
pub(crate) fn eta_quadrature(cx: &EvalContext, f: CNum, gg: CNum, side: &mut Side) -> QResult<CNum> {
    let q = &cx.q;
    let qq = cx.qf();
    unit(
        cx,
        |x| {
            let t = qq.powf(x);
            let num = [c(-qq * t * t, 0.0), c(-qq / t / t, 0.0)];
            Ok(prod_s(&num, &eta_denominators(f, gg, t, qq), q)?.to_complex() * (t + 1.0 / t))
        },
        side,
        "integral",
    )
}

/// `2πi / (f L (q, q, g/f, qf/g, -fg, -q/(fg);q)_inf)`
pub(crate) fn eta_closed(f: CNum, gg: CNum, q: &QBase) -> QResult<CNum> {
    let qq = q.q();
    let p = prod(&[], &[c(qq, 0.0), c(qq, 0.0), gg / f, f * qq / gg, -f * gg, -c(qq, 0.0) / (f * gg)], q)?;
    Ok(c(0.0, 2.0 * PI) * p / (f * -q.ln_q()))
}

fn eta_closed_lhs(cx: &EvalContext) -> QResult<Side> {
    let (f, gg) = fg(cx)?;
    let mut side = Side::new();
    let v = eta_quadrature(cx, f, gg, &mut side)?;
    Ok(side.value(v))
}

fn eta_closed_rhs(cx: &EvalContext) -> QResult<Side> {
    let (f, gg) = fg(cx)?;
    Ok(Side::new().value(eta_closed(f, gg, &cx.q)?))
}

/// Ismail-Masson integral over the real line.
pub(crate) fn ismail_masson_integral(cx: &EvalContext, p: [CNum; 4], f: CNum, gg: CNum, side: &mut Side) -> QResult<CNum> {
    let q = &cx.q;
    let qq = cx.qf();
    let i = c(0.0, 1.0);
    line(
        cx,
        Tail::Exp(abcd_rate(p, qq)),
        |x| {
            let t = qq.powf(x);
            let num: Vec<CNum> = p.iter().flat_map(|&a| [i * a * t, -i * a / t]).collect();
            Ok(prod_s(&num, &eta_denominators(f, gg, t, qq), q)?.to_complex() * (t + 1.0 / t))
        },
        side,
        "integral",
    )
}

fn ismail_lhs(cx: &EvalContext) -> QResult<Side> {
    let (f, gg) = fg(cx)?;
    let mut side = Side::new();
    let v = ismail_masson_integral(cx, abcd(cx)?, f, gg, &mut side)?;
    Ok(side.value(v))
}

fn ismail_rhs(cx: &EvalContext) -> QResult<Side> {
    let (f, gg) = fg(cx)?;
    let [a, b, cc, d] = abcd(cx)?;
    let q = &cx.q;
    let qq = cx.qf();
    let p = prod(
        &[a * b / qq, a * cc / qq, a * d / qq, b * cc / qq, b * d / qq, cc * d / qq],
        &[c(qq, 0.0), gg / f, f * qq / gg, -f * gg, -c(qq, 0.0) / (f * gg), a * b * cc * d / qq.powi(3)],
        q,
    )?;
    Ok(Side::new().value(c(0.0, 2.0 * PI) * p / (f * cx.l())))
}

fn jackson_lhs(cx: &EvalContext) -> QResult<Side> {
    let p = abcd(cx)?;
    let alpha = cx.p("alpha")?;
    let qq = cx.qf();
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(abcd_rate(p, qq)),
        |x| Ok(sixpsisix_kernel(&p, alpha, qq.powf(x), &cx.q)?.to_complex()),
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn jackson_rhs(cx: &EvalContext) -> QResult<Side> {
    let p = abcd(cx)?;
    let alpha = cx.p("alpha")?;
    let q = &cx.q;
    let (qq, l) = (cx.qf(), cx.l());
    let product = askey_product(p, q)?;
    // f(t) = kernel(t) / (t L); the q-integral of f carries L/(1-q)
    let gfun = |t: f64| -> QResult<CNum> { Ok(sixpsisix_kernel(&p, alpha, t, q)?.to_complex() / (t * l) * (l / (1.0 - qq))) };
    let mut side = Side::new();
    let jack = side.series("jackson", jackson_qintegral(&gfun, q, &cx.quad)?);
    side.check("jackson_vs_product", rel(jack, product));
    Ok(side.value(product))
}

fn abcd_admissible(p: &ParameterPoint) -> Option<bool> {
    let v = [g(p, "a")?, g(p, "b")?, g(p, "c")?, g(p, "d")?];
    Some(abcd_rate(v, p.q) >= MIN_RATE)
}

fn abcd_draw(d: &mut Draw, p: ParameterPoint) -> ParameterPoint {
    let s = d.q.powf(0.75);
    let mut p = p;
    for n in ["a", "b", "c", "d"] {
        let v = d.polar(0.4, 0.95) * s;
        p.set(n, v);
    }
    p
}

/// Cap on `∫|k| / |∫k|` for the 6psi6 kernel `k`. The ratio grows like
/// `exp(π (π - |arg α²|) / (2 ln(1/q)))`.
const KERNEL_CANCELLATION_MAX: f64 = 1e5;

/// Largest admissible `π - |arg α²|` at this `q`.
fn alpha_window(q: f64) -> f64 {
    (2.0 * -q.ln() * KERNEL_CANCELLATION_MAX.ln() / PI).min(PI - ARG_MARGIN)
}

fn alpha_ok(p: &ParameterPoint) -> Option<bool> {
    let a2 = g(p, "alpha")?.powi(2);
    Some(off_positive_axis(a2, ARG_MARGIN) && PI - a2.arg().abs() <= alpha_window(p.q))
}

fn alpha_draw(d: &mut Draw) -> CNum {
    let w = alpha_window(d.q);
    let al = d.polar_arg(0.8, 1.25, (PI - w) / 2.0, (PI + w) / 2.0);
    if d.coin() {
        -al
    } else {
        al
    }
}

fn im_f_up_g_down(p: &ParameterPoint) -> Option<bool> {
    let (f, gg) = (g(p, "f")?, g(p, "g")?);
    let m = ARG_MARGIN;
    Some(f.arg() >= m && f.arg() <= PI - m && gg.arg() <= -m && gg.arg() >= -PI + m)
}

fn fg_lattice(p: &ParameterPoint) -> Option<bool> {
    let (f, gg) = (g(p, "f")?, g(p, "g")?);
    let q = p.q;
    Some(all_off_lattice(&[gg / f, f * q / gg, -f * gg, -c(q, 0.0) / (f * gg)], q))
}

fn fg_draw(d: &mut Draw, p: ParameterPoint) -> ParameterPoint {
    let m = ARG_MARGIN;
    let f = d.polar_arg(0.4, 2.0, m, PI - m);
    let gg = d.polar_arg(0.4, 2.0, -PI + m, -m);
    p.with("f", f).with("g", gg)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        IdentityRecord {
            id: "sixpsisix-fold-3.3",
            anchor: "6psi6-type integral with a periodic weight",
            params: &["a", "b", "c", "d", "alpha"],
            constraints: vec![
                Constraint::new("-ln|abcd/q^3| >= 0.2", abcd_admissible),
                Constraint::new("arg alpha^2 off 0 by 0.1 rad and close enough to pi for the kernel to stay well conditioned", alpha_ok),
            ],
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-7,
            lhs: sixpsisix_lhs,
            rhs: sixpsisix_rhs,
            propose: |d: &mut Draw| {
                let al = alpha_draw(d);
                abcd_draw(d, ParameterPoint::new(d.q).with("alpha", al))
            },
            notes: "",
        },
        IdentityRecord {
            id: "askey-3.4",
            anchor: "Askey's integral over the real line",
            params: &["a", "b", "c", "d"],
            constraints: vec![Constraint::new("-ln|abcd/q^3| >= 0.2", abcd_admissible)],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: askey_lhs,
            rhs: askey_rhs,
            propose: |d: &mut Draw| abcd_draw(d, ParameterPoint::new(d.q)),
            notes: "",
        },
        IdentityRecord {
            id: "eta-u-integral-3.11",
            anchor: "rational integral behind the eta function",
            params: &["f", "g"],
            constraints: vec![Constraint::new("0.1 <= arg f <= pi - 0.1, -pi + 0.1 <= arg g <= -0.1", im_f_up_g_down)],
            weight_slot: None,
            tolerance: 1e-10,
            lhs: eta_u_lhs,
            rhs: eta_u_rhs,
            propose: |d: &mut Draw| fg_draw(d, ParameterPoint::new(d.q)),
            notes: "Im f > 0 and Im g < 0 put the two poles on opposite sides of the path",
        },
        IdentityRecord {
            id: "eta-closed-3.12",
            anchor: "closed form of the eta function",
            params: &["f", "g"],
            constraints: vec![
                Constraint::new("0.1 <= arg f <= pi - 0.1, -pi + 0.1 <= arg g <= -0.1", im_f_up_g_down),
                Constraint::new("g/f, qf/g, -fg, -q/fg off the lattice q^k", fg_lattice),
            ],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: eta_closed_lhs,
            rhs: eta_closed_rhs,
            propose: |d: &mut Draw| fg_draw(d, ParameterPoint::new(d.q)),
            notes: "",
        },
        IdentityRecord {
            id: "ismail-masson-3.13",
            anchor: "Ismail-Masson q-beta integral",
            params: &["a", "b", "c", "d", "f", "g"],
            constraints: vec![
                Constraint::new("-ln|abcd/q^3| >= 0.2", abcd_admissible),
                Constraint::new("0.1 <= arg f <= pi - 0.1, -pi + 0.1 <= arg g <= -0.1", im_f_up_g_down),
                Constraint::new("g/f, qf/g, -fg, -q/fg off the lattice q^k", fg_lattice),
            ],
            weight_slot: None,
            tolerance: 1e-7,
            lhs: ismail_lhs,
            rhs: ismail_rhs,
            propose: |d: &mut Draw| {
                let p = fg_draw(d, ParameterPoint::new(d.q));
                abcd_draw(d, p)
            },
            notes: "sampled in the half-plane form of the conditions Im f, Im g and Im(f/g) not 0 (mod 2 pi)",
        },
        IdentityRecord {
            id: "jackson-equality-3.14",
            anchor: "continuous and Jackson q-integrals of the 6psi6 kernel",
            params: &["a", "b", "c", "d", "alpha"],
            constraints: vec![
                Constraint::new("-ln|abcd/q^3| >= 0.2", abcd_admissible),
                Constraint::new("arg alpha^2 off 0 by 0.1 rad and close enough to pi for the kernel to stay well conditioned", alpha_ok),
            ],
            weight_slot: None,
            tolerance: 1e-9,
            lhs: jackson_lhs,
            rhs: jackson_rhs,
            propose: |d: &mut Draw| {
                let al = alpha_draw(d);
                abcd_draw(d, ParameterPoint::new(d.q).with("alpha", al))
            },
            notes: "the Jackson q-integral is checked against the product alongside",
        },
    ]
}
