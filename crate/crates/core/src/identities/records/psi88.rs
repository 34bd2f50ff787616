//! The very-well-poised 8psi8 series, its integral analogue and the 8W7
//! relations around them.

use super::{all_off_lattice, c, g, off_positive_axis, ARG_MARGIN, MIN_RATE};
use crate::bilateral::{annulus, rpsir_eval, vwp_6phi5_sum, w87_eval, SeriesSpec};
use crate::error::QResult;
use crate::identities::eval::{line, prod, prod_s, rel, unit, weight_integral, Side, Tail};
use crate::identities::{Constraint, Draw, EvalContext, IdentityRecord, ParameterPoint, WeightKind};
use crate::qcore::{CNum, QBase};

fn w87(side: &mut Side, a: CNum, params: [CNum; 5], z: CNum, q: &QBase) -> QResult<CNum> {
    Ok(side.series("w87", w87_eval(a, params, z, q)?))
}

fn cq(q: &QBase) -> CNum {
    c(q.q(), 0.0)
}

/// Parameters `a..g` of the 8psi8 family.
#[derive(Clone, Copy)]
struct Seven {
    a: CNum,
    b: CNum,
    c: CNum,
    d: CNum,
    e: CNum,
    f: CNum,
    g: CNum,
}

impl Seven {
    fn from_cx(cx: &EvalContext) -> QResult<Self> {
        Ok(Seven {
            a: cx.p("a")?,
            b: cx.p("b")?,
            c: cx.p("c")?,
            d: cx.p("d")?,
            e: cx.p("e")?,
            f: cx.p("f")?,
            g: cx.p("g")?,
        })
    }

    fn from_point(p: &ParameterPoint) -> Option<Self> {
        Some(Seven {
            a: g(p, "a")?,
            b: g(p, "b")?,
            c: g(p, "c")?,
            d: g(p, "d")?,
            e: g(p, "e")?,
            f: g(p, "f")?,
            g: g(p, "g")?,
        })
    }

    fn bcde(&self) -> [CNum; 4] {
        [self.b, self.c, self.d, self.e]
    }

    /// `qga^2/bcdef`
    fn z(&self, q: f64) -> CNum {
        self.g * self.a * self.a * q / (self.b * self.c * self.d * self.e * self.f)
    }

    /// The two coefficient products times their 8W7 series.
    fn coefficients(&self, q: &QBase, side: &mut Side) -> QResult<(CNum, CNum)> {
        let Seven { a, f, g, .. } = *self;
        let qq = q.q();
        let z = self.z(qq);
        let mut n1 = vec![cq(q)];
        let mut n2 = vec![cq(q)];
        for x in self.bcde() {
            n1.push(a * qq / (x * f));
            n1.push(qq * f / x);
            n2.push(a * qq * qq / (x * g));
            n2.push(g / x);
        }
        let k1 = prod(&n1, &[qq * f / g, a * qq / (f * g), qq * f * f / a], q)?;
        let k2 = prod(&n2, &[qq * f / g, f * g / (a * qq), a * qq.powi(3) / (g * g)], q)?;
        let [b, cc, d, e] = self.bcde();
        let w1 = w87(side, f * f / a, [b * f / a, cc * f / a, d * f / a, e * f / a, qq * f / g], z, q)?;
        let w2 = w87(side, a * qq * qq / (g * g), [b * qq / g, cc * qq / g, d * qq / g, e * qq / g, f * qq / g], z, q)?;
        Ok((k1 * w1, k2 * w2))
    }

    /// `(aq^(x+1)/g, q^(1-x)/g, aq^(2x+1), q^(1-2x)/a) / (aq^(x+1)/b.., q^(1-x)/b..)` and its partner
    fn u_pair(&self, x: f64, q: &QBase) -> QResult<(CNum, CNum)> {
        let Seven { a, f, g, .. } = *self;
        let qq = q.q();
        let t = qq.powf(x);
        let mut den = Vec::new();
        for v in self.bcde() {
            den.push(a * qq * t / v);
            den.push(qq / v / t);
        }
        let u1 = {
            let mut d1 = den.clone();
            d1.push(a * qq * t / f);
            d1.push(qq / f / t);
            prod(&[a * qq * t / g, qq / g / t, a * qq * t * t, qq / a / t / t], &d1, q)?
        };
        let u2 = {
            let mut d2 = den;
            d2.push(g * t);
            d2.push(g / a / t);
            prod(&[f * t, f / a / t, a * qq * t * t, qq / a / t / t], &d2, q)?
        };
        Ok((u1, u2))
    }

    /// Fold-sum ratio `(fq^x, q^(1-x)/f, aq^(x+1)/f, fq^(-x)/a) / (same with g)`.
    fn r(&self, x: f64, q: &QBase) -> QResult<CNum> {
        let Seven { a, f, g, .. } = *self;
        let qq = q.q();
        let t = qq.powf(x);
        let four = |w: CNum| [w * t, qq / w / t, a * qq * t / w, w / a / t];
        prod(&four(f), &four(g), q)
    }
}

fn decomposition_lhs(cx: &EvalContext) -> QResult<Side> {
    let s = Seven::from_cx(cx)?;
    let x = cx.re("x")?;
    let qq = cx.qf();
    let t = qq.powf(x);
    let big_a = s.a * t * t;
    let mut params: Vec<CNum> = [s.b, s.c, s.d, s.e, s.f].iter().map(|&v| v * t).collect();
    params.push(s.a * qq * t / s.g);
    let mut side = Side::new();
    let v = side.series("series", rpsir_eval(&SeriesSpec::vwp_bilateral(big_a, params, s.z(qq)), &cx.q)?);
    Ok(side.value(v))
}

fn decomposition_rhs(cx: &EvalContext) -> QResult<Side> {
    let s = Seven::from_cx(cx)?;
    let x = cx.re("x")?;
    let mut side = Side::new();
    let (c1, c2) = s.coefficients(&cx.q, &mut side)?;
    let (u1, u2) = s.u_pair(x, &cx.q)?;
    let v = side.sum(&[c1 * u1, c2 * u2]);
    Ok(side.value(v))
}

fn relation_lhs(cx: &EvalContext) -> QResult<Side> {
    let s = Seven::from_cx(cx)?;
    let q = &cx.q;
    let qq = cx.qf();
    let mut side = Side::new();
    let v = line(
        cx,
        Tail::Exp(-s.z(qq).norm().ln()),
        |x| {
            let t = qq.powf(x);
            let mut num = Vec::new();
            for v in [s.b, s.c, s.d, s.e, s.f] {
                num.push(s.a * qq * t / v);
                num.push(qq / v / t);
            }
            let den = [s.a * qq * t * t, qq / s.a / t / t, s.a * qq * t / s.g, qq / s.g / t];
            Ok(prod_s(&num, &den, q)?.to_complex() * cx.w(x))
        },
        &mut side,
        "integral",
    )?;
    Ok(side.value(v))
}

fn relation_rhs(cx: &EvalContext) -> QResult<Side> {
    let s = Seven::from_cx(cx)?;
    let mut side = Side::new();
    let (c1, c2) = s.coefficients(&cx.q, &mut side)?;
    let pint = weight_integral(cx, &mut side)?;
    let rint = unit(cx, |x| Ok(s.r(x, &cx.q)? * cx.w(x)), &mut side, "ratio_integral")?;
    let v = side.sum(&[c1 * pint, c2 * rint]);
    Ok(side.value(v))
}

/// Parameters `a..f` and `alpha` of the alpha-substituted family.
#[derive(Clone, Copy)]
struct Six {
    p: [CNum; 5],
    f: CNum,
    alpha: CNum,
}

impl Six {
    fn from_cx(cx: &EvalContext, with_f: bool) -> QResult<Self> {
        let p = [cx.p("a")?, cx.p("b")?, cx.p("c")?, cx.p("d")?, cx.p("e")?];
        let f = if with_f { cx.p("f")? } else { balanced_f(&p, cx.qf()) };
        // the pure 8W7 relation has no alpha
        let alpha = cx.point.get("alpha").unwrap_or(c(1.0, 0.0));
        Ok(Six { p, f, alpha })
    }

    /// `abcde/(fq^3)`
    fn z(&self, q: f64) -> CNum {
        self.p.iter().product::<CNum>() / (self.f * q.powi(3))
    }

    /// `∫_R` of the alpha-form integrand against the weight.
    fn integral(&self, cx: &EvalContext, side: &mut Side) -> QResult<CNum> {
        let q = &cx.q;
        let qq = cx.qf();
        let Six { p, f, alpha } = *self;
        let a2 = alpha * alpha;
        line(
            cx,
            Tail::Exp(-self.z(qq).norm().ln()),
            |x| {
                let t = qq.powf(x);
                let num: Vec<CNum> = p.iter().flat_map(|&v| [v * alpha * t, v / alpha / t]).collect();
                let den = [a2 * (qq * t * t), cq(q) / a2 / t / t, f * alpha * t, f / alpha / t];
                Ok(prod_s(&num, &den, q)?.to_complex() * cx.w(x))
            },
            side,
            "integral",
        )
    }

    /// `λ(e,f) = ∫_0^1 (αq^(x+1)/e, eq^(-x)/α, αeq^(x+1), q^(-x)/(αe)) / (same with f) p(x) dx`
    fn lambda(&self, cx: &EvalContext, side: &mut Side) -> QResult<CNum> {
        let q = &cx.q;
        let qq = cx.qf();
        let (e, f, al) = (self.p[4], self.f, self.alpha);
        unit(
            cx,
            |x| {
                let t = qq.powf(x);
                let four = |w: CNum| [al * qq * t / w, w / al / t, al * w * qq * t, c(1.0, 0.0) / (al * w) / t];
                Ok(prod(&four(e), &four(f), q)? * cx.w(x))
            },
            side,
            "lambda",
        )
    }

    /// `8W7(f^2; qf/a, qf/b, qf/c, qf/d, qf/e; q, z)`
    fn w_f(&self, z: CNum, q: &QBase, side: &mut Side) -> QResult<CNum> {
        let (f, qq) = (self.f, q.q());
        let [a, b, cc, d, e] = self.p;
        w87(side, f * f, [qq * f / a, qq * f / b, qq * f / cc, qq * f / d, qq * f / e], z, q)
    }

    /// `8W7(q^2/e^2; q^2/ae, q^2/be, q^2/ce, q^2/de, qf/e; q, z)`
    fn w_e(&self, z: CNum, q: &QBase, side: &mut Side) -> QResult<CNum> {
        let qq = q.q();
        let [a, b, cc, d, e] = self.p;
        let q2 = qq * qq;
        w87(side, q2 / (e * e), [q2 / (a * e), q2 / (b * e), q2 / (cc * e), q2 / (d * e), qq * self.f / e], z, q)
    }

    /// `8W7(bq^2/ade; b/f, bc/q, q^2/ad, q^2/de, q^2/ae; q, fq/c)`
    fn w_three(&self, q: &QBase, side: &mut Side) -> QResult<CNum> {
        let qq = q.q();
        let [a, b, cc, d, e] = self.p;
        let q2 = qq * qq;
        let f = self.f;
        w87(side, b * q2 / (a * d * e), [b / f, b * cc / qq, q2 / (a * d), q2 / (d * e), q2 / (a * e)], f * qq / cc, q)
    }

    /// Coefficient of `λ(e,f)` apart from the 8W7 factor, including `e/f`.
    fn k_lambda(&self, q: &QBase) -> QResult<CNum> {
        let qq = q.q();
        let [a, b, cc, d, e] = self.p;
        let f = self.f;
        let k = prod(
            &[cq(q), a * f, b * f, cc * f, d * f, a / f, b / f, cc / f, d / f],
            &[qq / (e * f), qq * f / e, qq * f * f],
            q,
        )?;
        Ok(k * e / f)
    }

    /// `C1` of the three-term relation.
    fn c_one(&self, q: &QBase) -> QResult<CNum> {
        let qq = q.q();
        let [a, b, cc, d, e] = self.p;
        let f = self.f;
        prod(
            &[
                cq(q),
                a * cc / qq,
                a * d / qq,
                cc * d / qq,
                a * e / qq,
                cc * e / qq,
                d * e / qq,
                b * qq / a,
                b * qq / d,
                b * qq / e,
                f * qq.powi(3) / (a * d * e),
            ],
            &[qq * f / a, qq * f / d, qq * f / e, b * qq.powi(3) / (a * d * e), a * cc * d * e / qq.powi(3)],
            q,
        )
    }

    /// `K3` of the three-term relation.
    fn k_three(&self, q: &QBase) -> QResult<CNum> {
        let qq = q.q();
        let [a, b, cc, d, e] = self.p;
        let f = self.f;
        let q2 = qq * qq;
        prod(
            &[
                cq(q),
                a * f,
                b * f,
                cc * f,
                d * f,
                b / f,
                a * e / qq,
                cc * e / qq,
                d * e / qq,
                q2 / (a * e),
                q2 / (cc * e),
                q2 / (d * e),
                a * cc * d / (f * q2),
                f * qq.powi(3) / (a * cc * d),
            ],
            &[
                qq * f / e,
                qq / (e * f),
                qq * f * f,
                f * qq / a,
                f * qq / cc,
                f * qq / d,
                a * cc * d * e / qq.powi(3),
                qq.powi(4) / (a * cc * d * e),
            ],
            q,
        )
    }
}

fn balanced_f(p: &[CNum; 5], q: f64) -> CNum {
    p.iter().product::<CNum>() / q.powi(4)
}

fn alpha_form_lhs(cx: &EvalContext) -> QResult<Side> {
    let s = Six::from_cx(cx, true)?;
    let mut side = Side::new();
    let v = s.integral(cx, &mut side)?;
    Ok(side.value(v))
}

fn alpha_form_rhs(cx: &EvalContext) -> QResult<Side> {
    let s = Six::from_cx(cx, true)?;
    let q = &cx.q;
    let qq = cx.qf();
    let [a, b, cc, d, e] = s.p;
    let f = s.f;
    let z = s.z(qq);
    let mut side = Side::new();
    let pint = weight_integral(cx, &mut side)?;
    let lam = s.lambda(cx, &mut side)?;
    let mut n1 = vec![cq(q)];
    for x in [a, b, cc, d] {
        n1.push(x * qq / e);
        n1.push(x * e / qq);
    }
    let k1 = prod(&n1, &[e * f / qq, qq * f / e, qq.powi(3) / (e * e)], q)?;
    let t1 = k1 * s.w_e(z, q, &mut side)? * pint;
    let t2 = s.k_lambda(q)? * s.w_f(z, q, &mut side)? * lam;
    let v = side.sum(&[t1, t2]);
    Ok(side.value(v))
}

fn transform_lhs(cx: &EvalContext) -> QResult<Side> {
    let s = Six::from_cx(cx, true)?;
    let mut side = Side::new();
    let v = s.w_e(s.z(cx.qf()), &cx.q, &mut side)?;
    Ok(side.value(v))
}

fn transform_rhs(cx: &EvalContext) -> QResult<Side> {
    let s = Six::from_cx(cx, true)?;
    let q = &cx.q;
    let qq = cx.qf();
    let [a, b, cc, d, e] = s.p;
    let f = s.f;
    let (q2, q3) = (qq * qq, qq.powi(3));
    let mut side = Side::new();
    let r1 = prod(
        &[q3 / (e * e), cc * d / qq, a * cc / qq, a * d / qq, b * qq / d, b * qq / a, e * f / qq, f * q3 / (a * d * e)],
        &[a * qq / e, cc * qq / e, d * qq / e, b * e / qq, a * cc * d * e / q3, b * q3 / (a * d * e), f * qq / d, f * qq / a],
        q,
    )? * s.w_three(q, &mut side)?;
    let r2 = prod(
        &[
            q3 / (e * e),
            e * f / qq,
            b * f,
            cc * f,
            d * f,
            a * f,
            q2 / (a * e),
            q2 / (cc * e),
            q2 / (d * e),
            b / f,
            a * cc * d / (f * q2),
            f * q3 / (a * cc * d),
        ],
        &[
            qq / (e * f),
            a * qq / e,
            b * qq / e,
            cc * qq / e,
            d * qq / e,
            b * e / qq,
            f * qq / a,
            f * qq / cc,
            f * qq / d,
            a * cc * d * e / q3,
            qq.powi(4) / (a * cc * d * e),
            qq * f * f,
        ],
        q,
    )? * s.w_f(s.z(qq), q, &mut side)?;
    let v = side.sum(&[r1, -r2]);
    Ok(side.value(v))
}

fn combined_rhs(cx: &EvalContext) -> QResult<Side> {
    let s = Six::from_cx(cx, true)?;
    let q = &cx.q;
    let mut side = Side::new();
    let pint = weight_integral(cx, &mut side)?;
    let lam = s.lambda(cx, &mut side)?;
    let w2 = s.w_f(s.z(cx.qf()), q, &mut side)?;
    let t1 = s.c_one(q)? * s.w_three(q, &mut side)? * pint;
    let v = side.sum(&[t1, w2 * s.k_lambda(q)? * lam, -(w2 * s.k_three(q)? * pint)]);
    Ok(side.value(v))
}

fn balanced_lhs(cx: &EvalContext) -> QResult<Side> {
    let s = Six::from_cx(cx, false)?;
    let mut side = Side::new();
    let v = s.integral(cx, &mut side)?;
    Ok(side.value(v))
}

fn balanced_rhs(cx: &EvalContext) -> QResult<Side> {
    let s = Six::from_cx(cx, false)?;
    let q = &cx.q;
    let qq = cx.qf();
    let [a, b, cc, d, e] = s.p;
    let f = s.f;
    let q2 = qq * qq;
    let mut side = Side::new();
    let pint = weight_integral(cx, &mut side)?;
    let lam = s.lambda(cx, &mut side)?;
    let mut n1 = vec![cq(q)];
    let all = s.p;
    for i in 0..5 {
        for j in i + 1..5 {
            n1.push(all[i] * all[j] / qq);
        }
    }
    let d1: Vec<CNum> = all.iter().map(|&v| qq * f / v).collect();
    let s1 = prod(&n1, &d1, q)?;
    let four = [a, b, cc, d];
    let x_num: Vec<CNum> = four.iter().flat_map(|&v| [v * e / qq, q2 / (v * e)]).collect();
    let x_den: Vec<CNum> = four.iter().flat_map(|&v| [v / f, qq * f / v]).collect();
    let x = prod(&x_num, &x_den, q)?;
    let k = s.k_lambda(q)? * f / e;
    let wq = s.w_f(cq(q), q, &mut side)?;
    // the first 8W7 of the general relation reduces to a summable 6phi5
    let summed = vwp_6phi5_sum(b * q2 / (a * d * e), q2 / (a * d), q2 / (d * e), q2 / (a * e), q)?;
    let direct = s.w_three(q, &mut side)?;
    side.check("six_phi_five_vs_w87", rel(summed, direct));
    let v = side.sum(&[s1 * pint, k * (e / f) * lam * wq, -(k * x * pint * wq)]);
    Ok(side.value(v))
}

fn seven_draw(d: &mut Draw) -> ParameterPoint {
    let mut p = ParameterPoint::new(d.q).with("a", d.polar(0.2, 0.5));
    for n in ["b", "c", "d", "e", "f"] {
        p.set(n, d.polar(1.2, 2.5));
    }
    p.with("g", d.polar(0.4, 1.0))
}

fn seven_constraints() -> Vec<Constraint> {
    vec![
        Constraint::new("-ln|qga^2/bcdef| >= 0.2", |p| Some(-Seven::from_point(p)?.z(p.q).norm().ln() >= MIN_RATE)),
        Constraint::new("a, g, a/g at least 0.1 rad off the positive real axis", |p| {
            let s = Seven::from_point(p)?;
            Some([s.a, s.g, s.a / s.g].iter().all(|&v| off_positive_axis(v, ARG_MARGIN)))
        }),
        Constraint::new("coefficient denominators off the lattice q^k", |p| {
            let s = Seven::from_point(p)?;
            let q = p.q;
            let (a, f, g) = (s.a, s.f, s.g);
            let mut v = vec![q * f / g, a * q / (f * g), q * f * f / a, f * g / (a * q), a * q.powi(3) / (g * g)];
            for x in [s.b, s.c, s.d, s.e] {
                v.push(q * f / x);
                v.push(g / x);
            }
            Some(all_off_lattice(&v, q))
        }),
    ]
}

fn six_draw(d: &mut Draw) -> ParameterPoint {
    let s = d.q.powf(0.6);
    let mut p = ParameterPoint::new(d.q);
    for n in ["a", "b", "c", "d", "e"] {
        let v = d.polar(0.55, 1.0) * s;
        p.set(n, v);
    }
    let f = d.polar(0.6, 1.2);
    let al = d.polar(0.9, 1.1);
    p.with("f", f).with("alpha", al)
}

fn six_point(p: &ParameterPoint, with_f: bool) -> Option<([CNum; 5], CNum)> {
    let v = [g(p, "a")?, g(p, "b")?, g(p, "c")?, g(p, "d")?, g(p, "e")?];
    let f = if with_f { g(p, "f")? } else { balanced_f(&v, p.q) };
    Some((v, f))
}

fn six_rate(p: &ParameterPoint, with_f: bool) -> Option<bool> {
    let (v, f) = six_point(p, with_f)?;
    let z = v.iter().product::<CNum>() / (f * p.q.powi(3));
    Some(-z.norm().ln() >= MIN_RATE)
}

fn six_fq_over_c(p: &ParameterPoint, with_f: bool) -> Option<bool> {
    let (v, f) = six_point(p, with_f)?;
    Some((f * p.q / v[2]).norm() <= 0.9)
}

fn six_alpha(p: &ParameterPoint, with_f: bool) -> Option<bool> {
    let (_, f) = six_point(p, with_f)?;
    let al = g(p, "alpha")?;
    Some([al * al, al * f, al / f].iter().all(|&v| off_positive_axis(v, ARG_MARGIN)))
}

fn six_lattice(p: &ParameterPoint, with_f: bool) -> Option<bool> {
    let (v, f) = six_point(p, with_f)?;
    let q = p.q;
    let [a, b, cc, d, e] = v;
    let mut xs = vec![e * f / q, q * f / e, q.powi(3) / (e * e), q / (e * f), q * f * f, a * cc * d * e / q.powi(3)];
    xs.extend([a, b, cc, d, e].iter().map(|&x| q * f / x));
    xs.extend([a, b, cc, d].iter().flat_map(|&x| [x * q / e, x / f]));
    xs.push(b * q.powi(3) / (a * d * e));
    xs.push(q.powi(4) / (a * cc * d * e));
    Some(all_off_lattice(&xs, q))
}

macro_rules! six_constraints {
    ($with_f:expr, $fq:expr) => {{
        let mut v = vec![
            Constraint::new("-ln|abcde/fq^3| >= 0.2", |p| six_rate(p, $with_f)),
            Constraint::new("alpha^2, alpha f, alpha/f at least 0.1 rad off the positive real axis", |p| {
                six_alpha(p, $with_f)
            }),
            Constraint::new("coefficient denominators off the lattice q^k", |p| six_lattice(p, $with_f)),
        ];
        if $fq {
            v.push(Constraint::new("|fq/c| <= 0.9", |p| six_fq_over_c(p, $with_f)));
        }
        v
    }};
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        IdentityRecord {
            id: "psi88-decomposition-5.4",
            anchor: "8psi8 series as two 8W7 terms",
            params: &["a", "b", "c", "d", "e", "f", "g", "x"],
            constraints: {
                let mut v = seven_constraints();
                v.push(Constraint::new("x real", |p| Some(g(p, "x")?.im == 0.0)));
                v.push(Constraint::new("8psi8 inside its annulus of convergence", |p| {
                    let s = Seven::from_point(p)?;
                    let x = g(p, "x")?.re;
                    let t = p.q.powf(x);
                    let mut params: Vec<CNum> = [s.b, s.c, s.d, s.e, s.f].iter().map(|&v| v * t).collect();
                    params.push(s.a * p.q * t / s.g);
                    let q = crate::qcore::QBase::new(p.q).ok()?;
                    Some(annulus(&SeriesSpec::vwp_bilateral(s.a * t * t, params, s.z(p.q)), &q).pass)
                }));
                v
            },
            weight_slot: None,
            tolerance: 1e-7,
            lhs: decomposition_lhs,
            rhs: decomposition_rhs,
            propose: |d: &mut Draw| {
                let x = d.real(0.0, 1.0);
                seven_draw(d).with("x", x)
            },
            notes: "first 8W7 is 8W7(f^2/a; bf/a, cf/a, df/a, ef/a, qf/g; q, qga^2/bcdef)",
        },
        IdentityRecord {
            id: "psi88-relation-5.7",
            anchor: "8psi8-type integral with a periodic weight",
            params: &["a", "b", "c", "d", "e", "f", "g"],
            constraints: seven_constraints(),
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-7,
            lhs: relation_lhs,
            rhs: relation_rhs,
            propose: seven_draw,
            notes: "",
        },
        IdentityRecord {
            id: "psi88-alpha-form-5.8",
            anchor: "8psi8-type integral in the alpha parametrization",
            params: &["a", "b", "c", "d", "e", "f", "alpha"],
            constraints: six_constraints!(true, false),
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-6,
            lhs: alpha_form_lhs,
            rhs: alpha_form_rhs,
            propose: six_draw,
            notes: "the lambda(e,f) term carries the factor e/f and the prefactor has a/f",
        },
        IdentityRecord {
            id: "w87-transform-5.9",
            anchor: "three-term 8W7 transformation",
            params: &["a", "b", "c", "d", "e", "f"],
            constraints: {
                let mut v = six_constraints!(true, true);
                v.remove(1);
                v
            },
            weight_slot: None,
            tolerance: 1e-8,
            lhs: transform_lhs,
            rhs: transform_rhs,
            propose: |d: &mut Draw| {
                let mut p = six_draw(d);
                p.params.remove("alpha");
                p
            },
            notes: "",
        },
        IdentityRecord {
            id: "psi88-combined-5.10",
            anchor: "8psi8-type integral after the 8W7 transformation",
            params: &["a", "b", "c", "d", "e", "f", "alpha"],
            constraints: six_constraints!(true, true),
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-6,
            lhs: alpha_form_lhs,
            rhs: combined_rhs,
            propose: six_draw,
            notes: "the lambda(e,f) term carries the factor e/f",
        },
        IdentityRecord {
            id: "psi88-balanced-5.12",
            anchor: "balanced 8psi8-type integral, f = abcde/q^4",
            params: &["a", "b", "c", "d", "e", "alpha"],
            constraints: six_constraints!(false, true),
            weight_slot: Some(WeightKind::UnitPeriodic),
            tolerance: 1e-6,
            lhs: balanced_lhs,
            rhs: balanced_rhs,
            propose: |d: &mut Draw| {
                let s = d.q.powf(0.8);
                let mut p = ParameterPoint::new(d.q);
                for n in ["a", "b", "c", "d", "e"] {
                    let v = d.polar(0.85, 1.25) * s;
                    p.set(n, v);
                }
                let al = d.polar(0.9, 1.1);
                p.with("alpha", al)
            },
            notes: "the first 8W7 is summed as a very-well-poised 6phi5; the check compares it with direct summation",
        },
    ]
}
