use proptest::prelude::*;
use qseries::qcore::*;
use qseries::QError;

fn rel(a: CNum, b: CNum) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn qb(q: f64) -> QBase {
    QBase::new(q).unwrap()
}

#[test]
fn infinite_product_examples() {
    let q = qb(0.5);
    assert_eq!(qpoch_inf(c(0.0, 0.0), &q).unwrap().0, c(1.0, 0.0));
    assert_eq!(qpoch_inf(c(1.0, 0.0), &q).unwrap().0, c(0.0, 0.0));
    let (v, r) = qpoch_inf(c(0.5, 0.0), &q).unwrap();
    let n = (1e-18f64.ln() / 0.5f64.ln()).ceil() as i32;
    let partial: f64 = (0..=n).map(|k| 1.0 - 0.5 * 0.5f64.powi(k)).product();
    assert!(r.converged);
    assert!((v.re - partial).abs() <= r.tail_bound + 4.0 * f64::EPSILON);
    assert!(r.tail_bound <= q.eps() * v.norm().max(1.0));
}

#[test]
fn base_is_validated() {
    assert!(matches!(QBase::new(1.0), Err(QError::InvalidBase(_))));
    assert!(matches!(QBase::new(0.0), Err(QError::InvalidBase(_))));
    assert!(QBase::with_tolerance(0.5, 0.0, 10).is_err());
}

#[test]
fn finite_products() {
    assert_eq!(qpoch_fin(c(0.7, 0.0), &qb(0.4), 0).unwrap(), c(1.0, 0.0));
    assert_eq!(qpoch_fin(c(2.0, 0.0), &qb(0.5), 2).unwrap(), c(0.0, 0.0));
    assert!((qpoch_fin(c(0.25, 0.0), &qb(0.5), -1).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
}

#[test]
fn multi_products() {
    let q = qb(0.3);
    assert_eq!(qpoch_multi(&[], &q, PochIndex::Infinite).unwrap(), c(1.0, 0.0));
    assert_eq!(qpoch_multi(&[c(0.0, 0.0), c(0.0, 0.0)], &q, PochIndex::Infinite).unwrap(), c(1.0, 0.0));
    let q = qb(0.5);
    let m = qpoch_multi(&[c(0.5, 0.0), c(0.25, 0.0)], &q, PochIndex::Infinite).unwrap();
    let s = qpoch_inf(c(0.5, 0.0), &q).unwrap().0 * qpoch_inf(c(0.25, 0.0), &q).unwrap().0;
    assert!(rel(m, s) < 1e-15);
    match qpoch_multi(&[c(0.1, 0.0), c(0.25, 0.0)], &q, PochIndex::Finite(-3)) {
        Err(QError::Component { index: 1, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn general_index() {
    let q = qb(0.5);
    let a = c(0.3, 0.2);
    assert!(rel(qpoch_general_index(a, &q, c(0.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-15);
    assert!(rel(qpoch_general_index(a, &q, c(3.0, 0.0)).unwrap(), qpoch_fin(a, &q, 3).unwrap()) < 1e-14);
    let tight = QBase::with_tolerance(0.5, 1e-20, 1_000_000).unwrap();
    let lam = c(1.3, 0.0);
    let a = c(-0.5, 0.0);
    let want = qpoch_inf(a, &tight).unwrap().0 / qpoch_inf(a * q.pow(lam), &tight).unwrap().0;
    assert!(rel(qpoch_general_index(a, &q, lam).unwrap(), want) < 1e-14);
}

#[test]
fn q_gamma_values() {
    let q = qb(0.5);
    assert!(rel(qgamma(c(1.0, 0.0), &q).unwrap(), c(1.0, 0.0)) < 1e-15);
    assert!(rel(qgamma(c(2.0, 0.0), &q).unwrap(), c(1.0, 0.0)) < 1e-15);
    assert!(matches!(qgamma(c(0.0, 0.0), &q), Err(QError::PoleAtNonpositiveInteger(_))));
    let near_one = qb(1.0 - 1e-3);
    let g = qgamma(c(0.5, 0.0), &near_one).unwrap();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    assert!((g.re - sqrt_pi).abs() < 1e-2 * sqrt_pi);
    let r = qgamma_recip(c(0.5, 0.0), &near_one).unwrap();
    assert!(rel(r * g, c(1.0, 0.0)) < 1e-13);
}

#[test]
fn h_products() {
    let q = qb(0.5);
    let a = c(0.4, -0.3);
    assert_eq!(h_product(c(0.3, 0.0), c(0.0, 0.0), &q).unwrap().0, c(1.0, 0.0));
    let sq = qpoch_inf(a, &q).unwrap().0;
    assert!(rel(h_product(c(1.0, 0.0), a, &q).unwrap().0, sq * sq) < 1e-14);
    let hm = h_multi(c(0.2, 0.0), &[a, c(0.1, 0.0)], &q).unwrap();
    let hs = h_product(c(0.2, 0.0), a, &q).unwrap().0 * h_product(c(0.2, 0.0), c(0.1, 0.0), &q).unwrap().0;
    assert!(rel(hm, hs) < 1e-14);
}

#[test]
fn q_bessel_values() {
    let q = qb(0.5);
    assert_eq!(qbessel_j1(c(0.7, 0.0), c(0.0, 0.0), &q).unwrap(), c(0.0, 0.0));
    assert!(rel(qbessel_j1(c(0.0, 0.0), c(0.0, 0.0), &q).unwrap(), c(1.0, 0.0)) < 1e-15);
    assert!(rel(qbessel_j2(c(0.0, 0.0), c(0.0, 0.0), &q).unwrap(), c(1.0, 0.0)) < 1e-15);
    assert!(matches!(qbessel_j1(c(0.5, 0.0), c(-0.3, 0.0), &q), Err(QError::BranchAmbiguity)));
    assert!(matches!(qbessel_j1(c(0.5, 0.0), c(2.5, 0.0), &q), Err(QError::OutsideDisk { .. })));

    // direct summation with every product recomputed at a tighter tolerance
    let tight = QBase::with_tolerance(0.5, 1e-20, 1_000_000).unwrap();
    let (nu, x) = (c(0.5, 0.0), c(0.3, 0.0));
    let qq = qpoch_inf(c(0.5, 0.0), &tight).unwrap().0;
    for (kind, j) in [(0, qbessel_j1(nu, x, &q).unwrap()), (1, qbessel_j2(nu, x, &q).unwrap())] {
        let mut s = c(0.0, 0.0);
        for m in 0..60 {
            let mf = m as f64;
            let p = qpoch_inf(q.pow(nu + 1.0 + mf), &tight).unwrap().0;
            let qm = qpoch_fin(c(0.5, 0.0), &tight, m).unwrap();
            let mut t = (x / 2.0).powc(nu + 2.0 * mf) * p / (qm * qq) * (-1.0f64).powi(m as i32);
            if kind == 1 {
                t *= q.pow(mf * (nu + mf));
            }
            s += t;
        }
        assert!(rel(j, s) < 1e-14, "{kind}: {j} {s}");
    }
}

#[test]
fn product_limit_approaches_binomial_power() {
    // (-t q^c;q)_inf / (-t;q)_inf -> (1+t)^-c as q -> 1
    let (t, cc) = (0.7, 1.3);
    let err = |k: i32| {
        let q = qb(1.0 - 10f64.powi(-k));
        let num = qpoch_inf_scaled(c(-t * q.powf(cc), 0.0), &q).unwrap().0;
        let r = (num / qpoch_inf_scaled(c(-t, 0.0), &q).unwrap().0).to_complex();
        (r.re - (1.0 + t).powf(-cc)).abs()
    };
    let (e2, e3) = (err(2), err(3));
    assert!(e3 < e2, "{e2} {e3}");
}

fn cnum() -> impl Strategy<Value = CNum> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| c(re, im))
}

fn base() -> impl Strategy<Value = f64> {
    0.1..0.9f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_sided_recurrence(a in cnum(), q in base(), n in -20i64..20) {
        let qb = QBase::new(q).unwrap();
        if let (Ok(lo), Ok(hi)) = (qpoch_fin(a, &qb, n), qpoch_fin(a, &qb, n + 1)) {
            let f = c(1.0, 0.0) - a * qb.powf(n as f64);
            let want = f * lo;
            prop_assert!((hi - want).norm() <= 1e-13 * hi.norm().max(want.norm()).max(1e-300));
        }
    }

    #[test]
    fn splitting(a in cnum(), q in base(), n in 0i64..=30) {
        let qb = QBase::new(q).unwrap();
        let whole = qpoch_inf(a, &qb).unwrap().0;
        let split = qpoch_fin(a, &qb, n).unwrap() * qpoch_inf(a * qb.powf(n as f64), &qb).unwrap().0;
        prop_assert!((whole - split).norm() <= 1e-12 * whole.norm().max(split.norm()));
    }

    #[test]
    fn general_index_at_integers(a in cnum(), q in base(), n in 0i64..15) {
        let qb = QBase::new(q).unwrap();
        let g = qpoch_general_index(a, &qb, c(n as f64, 0.0)).unwrap();
        let f = qpoch_fin(a, &qb, n).unwrap();
        prop_assert!((g - f).norm() <= 1e-12 * f.norm().max(1e-300));
    }

    #[test]
    fn h_factorization(a in cnum(), q in base(), theta in 0.01..3.13f64) {
        let qb = QBase::new(q).unwrap();
        let h = h_product(c(theta.cos(), 0.0), a, &qb).unwrap().0;
        let e = c(0.0, theta).exp();
        let f = qpoch_inf(a * e, &qb).unwrap().0 * qpoch_inf(a / e, &qb).unwrap().0;
        prop_assert!((h - f).norm() <= 1e-12 * f.norm().max(1e-300));
    }
}

#[test]
fn q_gamma_functional_equation() {
    for q in [0.1, 0.5, 0.9] {
        let qb = qb(q);
        for i in 1..=50 {
            let x = i as f64 * 0.1;
            let g1 = qgamma(c(x + 1.0, 0.0), &qb).unwrap();
            let g0 = qgamma(c(x, 0.0), &qb).unwrap();
            let want = g0 * (1.0 - q.powf(x)) / (1.0 - q);
            assert!(rel(g1, want) < 1e-12, "q={q} x={x}");
        }
    }
}
