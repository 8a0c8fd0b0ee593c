mod common;

use std::f64::consts::PI;

use common::*;
use kicked_rotor::specfun::*;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn bessel_matches_integral_representation() {
    let v = bessel_j(5, 85.0).unwrap();
    assert!((v - bessel_integral(5, 85.0)).abs() < 1e-10);
    for &(n, x) in &[(0, 3.7), (12, 3.7), (-7, 20.0), (40, 25.0), (3, -9.5)] {
        let v = bessel_j(n, x).unwrap();
        assert!((v - bessel_integral(n, x)).abs() < 1e-12, "J_{n}({x})");
    }
}

#[test]
fn bessel_sum_rule() {
    for &p in &[1.0, 10.0, 85.0] {
        let nmax = (p + 8.0 * f64::cbrt(p) + 20.0).ceil() as usize;
        let j = bessel_j_seq(nmax, p);
        let s: f64 = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        assert!((s - 1.0).abs() < 1e-10, "P={p}: {s}");
    }
}

#[test]
fn bessel_domain_limits() {
    assert!(bessel_j(1_000_001, 1.0).is_err());
    assert!(bessel_j(2, 1.0e4 + 1.0).is_err());
    assert!(bessel_j(1_000_000, 1.0e4).unwrap().abs() < 1e-280);
    let far = bessel_j(3, 1.0e4).unwrap();
    assert!((far - bessel_integral(3, 1.0e4)).abs() < 1e-12);
}

#[test]
fn spherical_matches_half_integer_order() {
    let x = 75.0;
    let oracle = (PI / (2.0 * x)).sqrt() * bessel_real_order(10.5, x);
    let v = spherical_j(10, x).unwrap();
    assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");
    assert!(spherical_j(-1, 1.0).is_err());
}

#[test]
fn airy_origin_and_defining_integral() {
    let (ai0, _) = airy(0.0).unwrap();
    let expect = 3f64.powf(-2.0 / 3.0) / gamma_fn(2.0 / 3.0).unwrap();
    assert!((ai0 - expect).abs() < 1e-15);
    // Ai(x) = (1/π) Re ∫₀^∞ e^{iπ/6} exp(−s³/3 + i x s e^{iπ/6}) ds
    let w = Complex64::from_polar(1.0, PI / 6.0);
    for &x in &[-6.0, -2.0, 0.0, 1.5, 3.0] {
        let q = cquad(
            |s| w * (Complex64::new(-s * s * s / 3.0, 0.0) + Complex64::i() * w * (x * s)).exp(),
            0.0,
            8.0,
            400,
        );
        let (ai, _) = airy(x).unwrap();
        assert!((ai - q.re / PI).abs() < 1e-12, "x={x}");
    }
}

#[test]
fn airy_derivative_is_consistent() {
    for i in -199..=60 {
        let x = i as f64 * 0.3;
        let h = 1e-5;
        let (_, d) = airy(x).unwrap();
        let (ap, _) = airy(x + h).unwrap();
        let (am, _) = airy(x - h).unwrap();
        let fd = (ap - am) / (2.0 * h);
        assert!((d - fd).abs() < 1e-7 * (1.0 + x.abs()), "x={x}");
    }
}

#[test]
fn airy_decays_monotonically() {
    assert!(airy(10.0).unwrap().0 < 1e-9);
    let mut prev = f64::INFINITY;
    for i in 0..=180 {
        let (a, _) = airy(2.0 + 0.1 * i as f64).unwrap();
        assert!(a > 0.0 && a < prev);
        prev = a;
    }
}

#[test]
fn airy_first_maximum_on_negative_axis() {
    let x = golden_min(|x| -airy(-x).unwrap().0.powi(2), 0.5, 1.5, 1e-10);
    assert!((x - 1.0188).abs() < 1e-4, "{x}");
}

#[test]
fn gamma_values() {
    assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-15);
    assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
    let g = gamma_fn(0.25).unwrap();
    assert!((g * g * 6f64.sqrt() / (8.0 * PI * PI) - 0.4078).abs() < 5e-5);
}

#[test]
fn legendre_explicit_polynomial() {
    let x: f64 = 0.5;
    let p6 = (231.0 * x.powi(6) - 315.0 * x.powi(4) + 105.0 * x * x - 5.0) / 16.0;
    assert!((legendre_p(6, x).unwrap() - p6).abs() < 1e-15);
    assert_eq!(legendre_p(0, 0.3).unwrap(), 1.0);
}

#[test]
fn pearcey_origin_and_symmetry() {
    let p = pearcey(0.0, 0.0).unwrap();
    let expect = Complex64::from_polar(0.5 * gamma_fn(0.25).unwrap(), PI / 8.0);
    assert!((p - expect).norm() < 1e-15);
    assert_eq!(pearcey(2.0, 3.0).unwrap(), pearcey(2.0, -3.0).unwrap());
}

#[test]
fn pearcey_grid_against_rotated_contour() {
    let grid = [-8.0, -4.0, 0.0, 4.0, 8.0];
    for &x in &grid {
        for &b in &grid {
            let v = pearcey(x, b).unwrap();
            let o = pearcey_rotated(x, b);
            assert!((v - o).norm() < 1e-8, "({x},{b}): {v} vs {o}");
        }
    }
}

#[test]
fn pearcey_frozen_values() {
    // frozen from the rotated-contour oracle at 30 digits
    let cases = [
        (1.0, 1.0, 1.207_586_451_141_857_3, 0.601_534_086_057_098),
        (8.0, 0.0, 0.447_915_563_497_485_24, 0.437_617_644_205_303_2),
        (-8.0, 0.0, -0.337_435_115_332_916_76, -0.876_364_310_745_423_8),
        (8.0, 8.0, 0.229_864_959_979_564, -0.532_414_846_931_179_8),
        (-8.0, 8.0, 1.069_295_533_539_610_4, 0.225_852_305_801_672_23),
        (0.0, 12.0, 0.465_221_367_394_526_8, 0.187_289_239_748_000_32),
    ];
    for (x, b, re, im) in cases {
        let v = pearcey(x, b).unwrap();
        assert!((v - Complex64::new(re, im)).norm() < 1e-10, "({x},{b}) -> {v}");
    }
}

#[test]
fn pearcey_far_field_uses_contour() {
    // beyond the series domain the contour route carries on
    let v = pearcey(20.0, -30.0).unwrap();
    let o = pearcey_rotated(20.0, -30.0);
    assert!((v - o).norm() < 1e-8);
}

#[test]
fn pearcey_half_parts() {
    for &(x, y) in &[(0.0, 0.0), (1.0, 2.0), (-3.0, 1.5), (6.0, -7.0)] {
        let sum = pearcey_half(x, y).unwrap() + pearcey_half(x, -y).unwrap();
        assert!((sum - pearcey(x, y).unwrap()).norm() < 1e-12);
    }
    let d = pearcey_half_dy(1.0, 2.0).unwrap();
    let o = Complex64::i() * half_moment_rotated(1, 1.0, 2.0);
    assert!((d - o).norm() < 1e-10, "{d} vs {o}");
    let d0 = pearcey_half_dy(0.0, 0.0).unwrap();
    assert!((d0 - Complex64::from_polar(0.25 * gamma_fn(0.5).unwrap(), 0.75 * PI)).norm() < 1e-15);
}

#[test]
fn hyp1f1_regimes() {
    assert_eq!(hyp1f1_focus(0.0).unwrap(), Complex64::new(1.0, 0.0));
    for &z in &[5.0, -5.0, 17.0, 45.0, 300.0] {
        let direct = cquad(|t| Complex64::new(0.0, z * t * t).exp(), 0.0, 1.0, 400);
        assert!((hyp1f1_focus(z).unwrap() - direct).norm() < 1e-12, "z={z}");
    }
    let s: Complex64 = (0..80)
        .scan(Complex64::new(1.0, 0.0), |pw, k| {
            let t = *pw / (2 * k + 1) as f64;
            *pw = *pw * Complex64::new(0.0, 5.0) / (k + 1) as f64;
            Some(t)
        })
        .sum();
    assert!((hyp1f1_focus(5.0).unwrap() - s).norm() < 1e-12);
}

proptest! {
    #[test]
    fn bessel_reflection(n in 0i64..300, x in -200.0f64..200.0) {
        let a = bessel_j(-n, x).unwrap();
        let b = bessel_j(n, x).unwrap();
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(a, s * b);
    }

    #[test]
    fn pearcey_symmetry_bitwise(x in -12.0f64..12.0, b in 0.0f64..12.0) {
        let p = pearcey(x, b).unwrap();
        let m = pearcey(x, -b).unwrap();
        prop_assert_eq!(p.re.to_bits(), m.re.to_bits());
        prop_assert_eq!(p.im.to_bits(), m.im.to_bits());
    }

    #[test]
    fn legendre_bounded(l in 0i64..400, x in -1.0f64..=1.0) {
        prop_assert!(legendre_p(l, x).unwrap().abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn spherical_recurrence(l in 1usize..60, x in 0.01f64..150.0) {
        let j = spherical_j_seq(l + 1, x);
        let lhs = j[l - 1] + j[l + 1];
        let rhs = (2 * l + 1) as f64 / x * j[l];
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (j[l - 1].abs() + j[l + 1].abs()).max(1e-280));
    }
}
