use qseries::foldquad::*;
use qseries::qcore::{c, CNum, QBase};
use qseries::QResult;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn gauss(x: f64) -> QResult<CNum> {
    Ok(c((-x * x).exp(), 0.0))
}

#[test]
fn gaussian_integral() {
    let f = IntegrandHandle::new(&gauss, DecayClass::SuperExponential);
    let (v, d) = integrate_line(&f, &cfg()).unwrap();
    assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-10 * std::f64::consts::PI.sqrt());
    assert!(v.im == 0.0);
    assert!(d.error_estimate < 1e-12);
}

#[test]
fn odd_integrand_vanishes() {
    let odd = |x: f64| -> QResult<CNum> { Ok(c(x * (-x * x).exp() + (x - 0.3).sin() * 0.0, 0.0)) };
    let f = IntegrandHandle::new(&odd, DecayClass::SuperExponential);
    let (v, _) = integrate_line(&f, &cfg()).map_err(|e| e.to_string()).unwrap();
    assert!(v.norm() < 1e-12, "{v}");
}

#[test]
fn fold_of_cell_supported_function_is_the_function() {
    let bump = |x: f64| -> QResult<CNum> { Ok(if x > 0.0 && x < 1.0 { c((x * (1.0 - x)).powi(3), 0.0) } else { c(0.0, 0.0) }) };
    let f = IntegrandHandle::new(&bump, DecayClass::SuperExponential);
    for x in [0.1, 0.5, 0.77] {
        let (v, _) = fold_sum(&f, x, &cfg()).unwrap();
        assert_eq!(v, (f.eval)(x).unwrap(), "{x}");
    }
}

#[test]
fn fold_of_gaussian_is_theta_sum() {
    let f = IntegrandHandle::new(&gauss, DecayClass::SuperExponential);
    let (v, r) = fold_sum(&f, 0.0, &cfg()).unwrap();
    let direct: f64 = (-12..=12).map(|n: i32| (-(n * n) as f64).exp()).sum();
    assert!((v.re - direct).abs() < 1e-15);
    assert!(r.converged);
}

fn compact(x: f64) -> QResult<CNum> {
    // smooth on its support (-2.3, 1.7), C^4 at the ends
    let s = (x + 0.3) / 2.0;
    Ok(if s.abs() < 1.0 { c((1.0 - s * s).powi(5) * (1.0 + 0.4 * x), 0.3 * (1.0 - s * s).powi(5)) } else { c(0.0, 0.0) })
}

#[test]
fn fold_is_exact_for_compact_support() {
    let f = IntegrandHandle::new(&compact, DecayClass::SuperExponential);
    let (folded, _) = integrate_line(&f, &cfg()).unwrap();
    let (direct, _) = integrate_interval(&compact, -2.3, 1.7, &cfg()).unwrap();
    assert!((folded - direct).norm() < 1e-12, "{folded} {direct}");
}

#[test]
fn translation_invariance() {
    let base = |x: f64| -> QResult<CNum> { Ok(c(1.0, 0.5 * x) / (1.0 + x * x).powi(2) * (0.3 * x).cos() * (-0.1 * x * x).exp()) };
    let f = IntegrandHandle::new(&base, DecayClass::SuperExponential);
    let (v0, _) = integrate_line(&f, &cfg()).unwrap();
    for shift in [0.3, 1.0, 2.7] {
        let g = move |x: f64| base(x + shift);
        let h = IntegrandHandle::new(&g, DecayClass::SuperExponential);
        let (v, _) = integrate_line(&h, &cfg()).unwrap();
        assert!((v - v0).norm() < 1e-10 * v0.norm(), "{shift}: {v} {v0}");
    }
}

#[test]
fn rational_decay_via_sinh_map() {
    let lorentz = |x: f64| -> QResult<CNum> { Ok(c(1.0 / (1.0 + x * x), 0.0)) };
    let f = IntegrandHandle::new(&lorentz, DecayClass::Rational { degree: 2.0 });
    let (v, _) = integrate_line(&f, &cfg()).unwrap();
    assert!((v.re - std::f64::consts::PI).abs() < 1e-12);
    let slow = IntegrandHandle::new(&lorentz, DecayClass::Rational { degree: 1.0 });
    assert!(integrate_line(&slow, &cfg()).is_err());
}

#[test]
fn half_line() {
    let e = |x: f64| -> QResult<CNum> { Ok(c((-x).exp(), 0.0)) };
    let f = IntegrandHandle::new(&e, DecayClass::Exponential);
    let (v, _) = integrate_halfline(&f, 0.0, &cfg()).unwrap();
    assert!((v.re - 1.0).abs() < 1e-10);
    let local = |x: f64| -> QResult<CNum> { Ok(if x > 2.0 && x < 3.0 { c((x - 2.0) * (3.0 - x), 0.0) } else { c(0.0, 0.0) }) };
    let f = IntegrandHandle::new(&local, DecayClass::SuperExponential);
    let (v, _) = integrate_halfline(&f, 2.0, &cfg()).unwrap();
    assert!((v.re - 1.0 / 6.0).abs() < 1e-14);
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    let f = IntegrandHandle::new(&compact, DecayClass::SuperExponential);
    let (a, _) = integrate_line(&f, &cfg()).unwrap();
    let (b, _) = integrate_line(&f, &cfg().sequential()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn jackson_integral() {
    let q = QBase::new(0.5).unwrap();
    let zero = |_t: f64| -> QResult<CNum> { Ok(c(0.0, 0.0)) };
    assert_eq!(jackson_qintegral(&zero, &q, &cfg()).unwrap().0, c(0.0, 0.0));
    let g = |t: f64| -> QResult<CNum> { Ok(c(t * (-t - 1.0 / t).exp(), 0.0)) };
    let (v, _) = jackson_qintegral(&g, &q, &cfg()).unwrap();
    let direct: f64 = (-400..=400).map(|n: i32| {
        let t = 0.5f64.powi(n);
        t * (-t - 1.0 / t).exp() * t
    }).sum::<f64>() * 0.5;
    assert!((v.re - direct).abs() < 1e-14 * direct, "{v} {direct}");
}

#[test]
fn evaluator_errors_propagate() {
    let bad = |x: f64| -> QResult<CNum> {
        if x > 3.5 { Err(qseries::QError::PoleInProduct) } else { Ok(c((-x * x).exp(), 0.0)) }
    };
    let f = IntegrandHandle::new(&bad, DecayClass::SuperExponential);
    assert!(integrate_line(&f, &cfg()).is_err());
}
