//! Beta-type integrals on the half line and the classical bilateral sums.

use super::{all_off_lattice, c, g, int_dist, off_lattice, MIN_RATE};
use crate::bilateral::*;
use crate::error::QResult;
use crate::identities::eval::{line, prod_s, rel, Side, Tail};
use crate::identities::{Constraint, Draw, EvalContext, IdentityRecord, ParameterPoint};
use crate::qcore::{qgamma, CNum, QBase, Scaled};
use std::f64::consts::PI;

/// `Γ(a)Γ(1-a) / (Γ_q(a)Γ_q(1-a)) * Γ_q(a)Γ_q(b) / Γ_q(a+b)`, with the
/// classical factor written as `π / sin(πa)`.
pub(crate) fn ramanujan_integral_rhs(a: CNum, b: CNum, q: &QBase) -> QResult<CNum> {
    let one = c(1.0, 0.0);
    let classical = PI / (a * PI).sin();
    Ok(classical / (qgamma(a, q)? * qgamma(one - a, q)?) * qgamma(a, q)? * qgamma(b, q)? / qgamma(a + b, q)?)
}

fn euler_beta(a: f64, b: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

fn softplus(u: f64) -> f64 {
    u.max(0.0) + (-u.abs()).exp().ln_1p()
}

fn euler_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b) = (cx.re("a")?, cx.re("b")?);
    let mut side = Side::new();
    // t = e^u in ∫_0^∞ t^(a-1) (1+t)^(-a-b) dt
    let v = line(cx, Tail::Exp(a.min(b)), |u| Ok(c((a * u - (a + b) * softplus(u)).exp(), 0.0)), &mut side, "integral")?;
    Ok(side.value(v))
}

fn euler_rhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b) = (cx.re("a")?, cx.re("b")?);
    let beta = euler_beta(a, b);
    let mut side = Side::new();
    let qform = ramanujan_integral_rhs(c(a, 0.0), c(b, 0.0), &cx.q)?;
    side.receipt("q_analogue_gap", (qform.re - beta).abs() / beta);
    Ok(side.value(c(beta, 0.0)))
}

fn exp_t(u: f64) -> Option<f64> {
    let t = (-u).exp();
    (t.is_finite() && t > 0.0).then_some(t)
}

fn ramanujan_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b) = (cx.p("a")?, cx.p("b")?);
    let q = &cx.q;
    let qab = q.pow(a + b);
    let mut side = Side::new();
    // t = q^x = e^(-u): ∫ t^a (-t q^(a+b);q)_∞/(-t;q)_∞ du
    let v = line(
        cx,
        Tail::Exp(a.re.min(b.re)),
        |u| {
            let Some(t) = exp_t(u) else { return Ok(c(0.0, 0.0)) };
            let r = prod_s(&[-qab * t], &[c(-t, 0.0)], q)?;
            Ok((r * Scaled::exp(-a * u)).to_complex())
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn ramanujan_rhs(cx: &EvalContext) -> QResult<Side> {
    Ok(Side::new().value(ramanujan_integral_rhs(cx.p("a")?, cx.p("b")?, &cx.q)?))
}

fn askey_roy_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, cc) = (cx.p("a")?, cx.p("b")?, cx.p("c")?);
    let q = &cx.q;
    let (qbc, qac1) = (q.pow(b + cc), q.pow(a - cc + 1.0));
    let qq = cx.qf();
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(a.re.min(b.re)),
        |u| {
            let Some(t) = exp_t(u) else { return Ok(c(0.0, 0.0)) };
            let r = prod_s(&[-qbc * t, -qac1 / t], &[c(-t, 0.0), c(-qq / t, 0.0)], q)?;
            Ok((r * Scaled::exp(-cc * u)).to_complex())
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn askey_roy_rhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, cc) = (cx.p("a")?, cx.p("b")?, cx.p("c")?);
    let q = &cx.q;
    let one = c(1.0, 0.0);
    let classical = PI / (cc * PI).sin();
    let v = classical / (qgamma(cc, q)? * qgamma(one - cc, q)?) * qgamma(a, q)? * qgamma(b, q)? / qgamma(a + b, q)?;
    Ok(Side::new().value(v))
}

fn symmetric_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b) = (cx.p("a")?, cx.p("b")?);
    let q = &cx.q;
    let (qb, qa1) = (q.pow(b), q.pow(a + 1.0));
    let qq = cx.qf();
    let mut side = Side::new();
    // dt/t = du
    let v = line(
        cx,
        Tail::Exp(a.re.min(b.re)),
        |u| {
            let Some(t) = exp_t(u) else { return Ok(c(0.0, 0.0)) };
            Ok(prod_s(&[-qb * t, -qa1 / t], &[c(-t, 0.0), c(-qq / t, 0.0)], q)?.to_complex())
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn symmetric_rhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b) = (cx.p("a")?, cx.p("b")?);
    let q = &cx.q;
    let v = cx.l() / (1.0 - cx.qf()) * qgamma(a, q)? * qgamma(b, q)? / qgamma(a + b, q)?;
    Ok(Side::new().value(v))
}

fn psi11_lhs(cx: &EvalContext) -> QResult<Side> {
    let mut side = Side::new();
    let v = side.series("series", ramanujan_1psi1_lhs(cx.p("a")?, cx.p("b")?, cx.p("z")?, &cx.q)?);
    Ok(side.value(v))
}

fn psi11_rhs(cx: &EvalContext) -> QResult<Side> {
    Ok(Side::new().value(ramanujan_1psi1_rhs(cx.p("a")?, cx.p("b")?, cx.p("z")?, &cx.q)?))
}

fn qgauss_lhs(cx: &EvalContext) -> QResult<Side> {
    let (a, b, cc) = (cx.p("a")?, cx.p("b")?, cx.p("c")?);
    let mut side = Side::new();
    let v = side.series("series", rphis_eval(&SeriesSpec::unilateral(vec![a, b], vec![cc], cc / (a * b)), &cx.q)?);
    Ok(side.value(v))
}

fn qgauss_side(cx: &EvalContext) -> QResult<Side> {
    Ok(Side::new().value(qgauss_rhs(cx.p("a")?, cx.p("b")?, cx.p("c")?, &cx.q)?))
}

fn psi22_args(cx: &EvalContext) -> QResult<[CNum; 5]> {
    Ok([cx.p("a")?, cx.p("b")?, cx.p("c")?, cx.p("d")?, cx.p("alpha")?])
}

fn psi22_lhs(cx: &EvalContext) -> QResult<Side> {
    let [a, b, cc, d, al] = psi22_args(cx)?;
    let mut side = Side::new();
    let v = side.series("series", psi22_twoterm_lhs(a, b, cc, d, al, &cx.q)?);
    Ok(side.value(v))
}

fn psi22_rhs(cx: &EvalContext) -> QResult<Side> {
    let [a, b, cc, d, al] = psi22_args(cx)?;
    Ok(Side::new().value(psi22_twoterm_rhs(a, b, cc, d, al, &cx.q)?))
}

fn bailey_args(cx: &EvalContext) -> QResult<[CNum; 5]> {
    Ok([cx.p("a")?, cx.p("b")?, cx.p("c")?, cx.p("d")?, cx.p("e")?])
}

fn bailey_lhs(cx: &EvalContext) -> QResult<Side> {
    let [a, b, cc, d, e] = bailey_args(cx)?;
    let mut side = Side::new();
    let folded = side.series("folded", bailey_6psi6_folded_sum(a, b, cc, d, e, &cx.q)?);
    side.check("folded_form", rel(folded, bailey_6psi6_folded_rhs(a, b, cc, d, e, &cx.q)?));
    let v = side.series("series", bailey_6psi6_lhs(a, b, cc, d, e, &cx.q)?);
    Ok(side.value(v))
}

fn bailey_rhs(cx: &EvalContext) -> QResult<Side> {
    let [a, b, cc, d, e] = bailey_args(cx)?;
    Ok(Side::new().value(bailey_6psi6_rhs(a, b, cc, d, e, &cx.q)?))
}

fn re_at_least(p: &ParameterPoint, names: &[&str], m: f64) -> Option<bool> {
    for n in names {
        if g(p, n)?.re < m {
            return Some(false);
        }
    }
    Some(true)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        IdentityRecord {
            id: "euler-beta-limit",
            anchor: "Euler's beta integral on the half line",
            params: &["a", "b"],
            constraints: vec![
                Constraint::new("a, b real", |p| Some(g(p, "a")?.im == 0.0 && g(p, "b")?.im == 0.0)),
                Constraint::new("a, b >= 0.2", |p| re_at_least(p, &["a", "b"], MIN_RATE)),
            ],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: euler_lhs,
            rhs: euler_rhs,
            propose: |d: &mut Draw| ParameterPoint::new(d.q).with("a", d.real(0.3, 4.0)).with("b", d.real(0.3, 4.0)),
            notes: "classical B(a,b) as the q -> 1 target of the Ramanujan integral",
        },
        IdentityRecord {
            id: "ramanujan-integral-1.3",
            anchor: "Ramanujan's q-beta integral",
            params: &["a", "b"],
            constraints: vec![
                Constraint::new("Re a, Re b >= 0.25", |p| re_at_least(p, &["a", "b"], 0.25)),
                Constraint::new("a at least 1e-3 from every integer", |p| Some(int_dist(g(p, "a")?) >= 1e-3)),
            ],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: ramanujan_lhs,
            rhs: ramanujan_rhs,
            propose: |d: &mut Draw| {
                ParameterPoint::new(d.q)
                    .with("a", d.boxed((0.25, 2.75), (-0.5, 0.5)))
                    .with("b", d.boxed((0.25, 2.5), (-0.5, 0.5)))
            },
            notes: "",
        },
        IdentityRecord {
            id: "askey-roy-1.7",
            anchor: "Askey-Roy three-parameter extension",
            params: &["a", "b", "c"],
            constraints: vec![
                Constraint::new("Re a, Re b >= 0.25, Re c > 0", |p| {
                    Some(re_at_least(p, &["a", "b"], 0.25)? && g(p, "c")?.re > 0.0)
                }),
                Constraint::new("c at least 1e-3 from every integer", |p| Some(int_dist(g(p, "c")?) >= 1e-3)),
            ],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: askey_roy_lhs,
            rhs: askey_roy_rhs,
            propose: |d: &mut Draw| {
                ParameterPoint::new(d.q)
                    .with("a", d.boxed((0.25, 2.5), (-0.5, 0.5)))
                    .with("b", d.boxed((0.25, 2.5), (-0.5, 0.5)))
                    .with("c", d.boxed((0.05, 1.95), (-0.5, 0.5)))
            },
            notes: "",
        },
        IdentityRecord {
            id: "symmetric-limit-1.8",
            anchor: "symmetric q-beta integral",
            params: &["a", "b"],
            constraints: vec![Constraint::new("Re a, Re b >= 0.25", |p| re_at_least(p, &["a", "b"], 0.25))],
            weight_slot: None,
            tolerance: 1e-8,
            lhs: symmetric_lhs,
            rhs: symmetric_rhs,
            propose: |d: &mut Draw| {
                ParameterPoint::new(d.q)
                    .with("a", d.boxed((0.25, 2.5), (-0.5, 0.5)))
                    .with("b", d.boxed((0.25, 2.5), (-0.5, 0.5)))
            },
            notes: "",
        },
        IdentityRecord {
            id: "ramanujan-1psi1-1.16",
            anchor: "Ramanujan's 1psi1 sum",
            params: &["a", "b", "z"],
            constraints: vec![
                Constraint::new("|b/a| <= 0.95 |z|, |z| <= 0.95", |p| {
                    let (a, b, z) = (g(p, "a")?, g(p, "b")?, g(p, "z")?);
                    Some((b / a).norm() <= 0.95 * z.norm() && z.norm() <= 0.95)
                }),
                Constraint::new("a, b, z, az, b/az off the lattice q^k", |p| {
                    let (a, b, z) = (g(p, "a")?, g(p, "b")?, g(p, "z")?);
                    Some(all_off_lattice(&[a, b, z, a * z, b / (a * z)], p.q))
                }),
            ],
            weight_slot: None,
            tolerance: 1e-10,
            lhs: psi11_lhs,
            rhs: psi11_rhs,
            propose: |d: &mut Draw| {
                let a = d.polar(0.5, 2.0);
                let z = d.polar(0.1, 0.95);
                let b = a * z * d.polar(0.05, 0.9);
                ParameterPoint::new(d.q).with("a", a).with("b", b).with("z", z)
            },
            notes: "",
        },
        IdentityRecord {
            id: "qgauss-1.17",
            anchor: "q-Gauss sum",
            params: &["a", "b", "c"],
            constraints: vec![
                Constraint::new("|c/ab| <= 0.9", |p| Some((g(p, "c")? / (g(p, "a")? * g(p, "b")?)).norm() <= 0.9)),
                Constraint::new("c, c/ab off the lattice q^k", |p| {
                    let (a, b, cc) = (g(p, "a")?, g(p, "b")?, g(p, "c")?);
                    Some(all_off_lattice(&[cc, cc / (a * b)], p.q))
                }),
            ],
            weight_slot: None,
            tolerance: 1e-10,
            lhs: qgauss_lhs,
            rhs: qgauss_side,
            propose: |d: &mut Draw| {
                let a = d.polar(0.3, 2.0);
                let b = d.polar(0.3, 2.0);
                let cc = a * b * d.polar(0.05, 0.9);
                ParameterPoint::new(d.q).with("a", a).with("b", b).with("c", cc)
            },
            notes: "",
        },
        IdentityRecord {
            id: "psi22-twoterm-1.18",
            anchor: "two-term 2psi2 transformation",
            params: &["a", "b", "c", "d", "alpha"],
            constraints: vec![
                Constraint::new("|cd/abq| <= 0.9", |p| {
                    Some((g(p, "c")? * g(p, "d")? / (g(p, "a")? * g(p, "b")? * p.q)).norm() <= 0.9)
                }),
                Constraint::new("0.5 <= |alpha| <= 2, 0 < arg alpha < pi", |p| {
                    let al = g(p, "alpha")?;
                    Some((0.5..=2.0).contains(&al.norm()) && al.arg() > 0.0 && al.arg() < PI)
                }),
                Constraint::new("no parameter of either series or the products on the lattice q^k, except c, d = q^k with k >= 1", |p| {
                    let (a, b, cc, d, al) = (g(p, "a")?, g(p, "b")?, g(p, "c")?, g(p, "d")?, g(p, "alpha")?);
                    let q = p.q;
                    let s = q / al;
                    // c = q^k or d = q^k with k >= 1 only cuts off the negative tail
                    let truncating = |v: CNum| off_lattice(v, q) || (v.re.ln() / q.ln()).round() >= 1.0;
                    Some(
                        truncating(cc)
                            && truncating(d)
                            && all_off_lattice(
                                &[a, b, a * s, b * s, cc * s, d * s, cc / al, d / al, al / a, al / b, al, cc * d / (al * q)],
                                q,
                            ),
                    )
                }),
            ],
            weight_slot: None,
            tolerance: 1e-9,
            lhs: psi22_lhs,
            rhs: psi22_rhs,
            propose: |d: &mut Draw| {
                let a = d.polar(0.5, 2.0);
                let b = d.polar(0.5, 2.0);
                let cc = d.polar(0.3, 1.5);
                let dd = a * b * d.q * d.polar(0.1, 0.9) / cc;
                let al = d.polar_arg(0.5, 2.0, 0.05, PI - 0.05);
                ParameterPoint::new(d.q).with("a", a).with("b", b).with("c", cc).with("d", dd).with("alpha", al)
            },
            notes: "alpha is sampled from |alpha| in [0.5, 2], arg alpha in (0, pi)",
        },
        IdentityRecord {
            id: "bailey-6psi6-1.20",
            anchor: "Bailey's very-well-poised 6psi6 sum",
            params: &["a", "b", "c", "d", "e"],
            constraints: vec![
                Constraint::new("|qa^2/bcde| <= 0.9", |p| {
                    let [a, b, cc, d, e] = five(p)?;
                    Some((a * a * p.q / (b * cc * d * e)).norm() <= 0.9)
                }),
                Constraint::new("series inside its annulus of convergence", |p| {
                    let [a, b, cc, d, e] = five(p)?;
                    let q = QBase::new(p.q).ok()?;
                    let z = a * a * p.q / (b * cc * d * e);
                    Some(annulus(&SeriesSpec::vwp_bilateral(a, vec![b, cc, d, e], z), &q).pass)
                }),
                Constraint::new("b..e, aq/b..aq/e, q/b..q/e off the lattice q^k", |p| {
                    let [a, b, cc, d, e] = five(p)?;
                    let q = p.q;
                    Some([b, cc, d, e].iter().all(|&x| off_lattice(x, q) && off_lattice(a * q / x, q)) && off_lattice(a, q))
                }),
            ],
            weight_slot: None,
            tolerance: 1e-9,
            lhs: bailey_lhs,
            rhs: bailey_rhs,
            propose: |d: &mut Draw| {
                let mut p = ParameterPoint::new(d.q).with("a", d.polar(0.3, 1.5));
                for n in ["b", "c", "d", "e"] {
                    p.set(n, d.polar(0.8, 3.0));
                }
                p
            },
            notes: "the folded product form is checked alongside",
        },
    ]
}

fn five(p: &ParameterPoint) -> Option<[CNum; 5]> {
    Some([g(p, "a")?, g(p, "b")?, g(p, "c")?, g(p, "d")?, g(p, "e")?])
}
