mod common;

use std::f64::consts::PI;

use common::*;
use kicked_rotor::classical::{airy_fringe_width, rainbow_angle};
use kicked_rotor::profile::{linspace, periodic_grid};
use kicked_rotor::quantum2d::*;
use kicked_rotor::quantum3d::*;
use kicked_rotor::specfun::{gamma_fn, legendre_p};
use num_complex::Complex64;
use proptest::prelude::*;

fn kicked(p: f64) -> FourierPacket2D {
    kicked_ground(KickSpec::dipole(p)).unwrap()
}

#[test]
fn ground_state_is_stationary_and_uniform() {
    let g = ground_packet(64);
    assert!((g.norm_sqr() - 1.0).abs() < 1e-15);
    for dt in [0.0, 0.3, 17.0] {
        let d = density(&free_evolve(&g, dt), &periodic_grid(50)).unwrap();
        assert!(d.density.iter().all(|v| (v - 1.0 / (2.0 * PI)).abs() < 1e-14));
    }
}

#[test]
fn kick_alone_leaves_density_uniform() {
    let p = kicked(1.0);
    let d = density(&p, &periodic_grid(100)).unwrap();
    assert!(d.density.iter().all(|v| (v - 1.0 / (2.0 * PI)).abs() < 1e-12));
}

#[test]
fn norm_is_conserved_through_kicks_and_flights() {
    let mut p = ground_packet(0);
    for (i, s) in [5.0, 12.0, 0.7, 30.0].iter().enumerate() {
        let coupling = if i % 2 == 0 { KickSpec::dipole(*s) } else { KickSpec::polarization(*s) };
        p = apply_kick(&p, coupling).unwrap();
        assert!((p.norm_sqr() - 1.0).abs() < 1e-10);
        p = free_evolve(&p, 0.37 * (i + 1) as f64);
        assert!((p.norm_sqr() - 1.0).abs() < 1e-10);
        let n = p.n_max() as i64;
        assert!(p.coeff(n).norm() < 1e-12 && p.coeff(-n).norm() < 1e-12);
    }
}

#[test]
fn revival_after_four_pi() {
    let p = free_evolve(&kicked(85.0), 0.013);
    let q = free_evolve(&p, 4.0 * PI);
    let grid = periodic_grid(1000);
    let a = density(&p, &grid).unwrap();
    let b = density(&q, &grid).unwrap();
    for (x, y) in a.density.iter().zip(&b.density) {
        assert!((x - y).abs() < 1e-8);
    }
}

#[test]
fn kicked_density_has_mirror_parity() {
    let p = free_evolve(&kicked(40.0), 0.07);
    for i in 1..200 {
        let t = 2.0 * PI * i as f64 / 200.0;
        let a = p.amplitude(t).norm_sqr();
        let b = p.amplitude(2.0 * PI - t).norm_sqr();
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn checked_density_integrates_to_one() {
    let p = free_evolve(&kicked(50.0), 1.0 / 50.0);
    let d = density_checked(&p, &periodic_grid(4 * p.n_max())).unwrap();
    let h = 2.0 * PI / d.len() as f64;
    assert!((d.density.iter().sum::<f64>() * h - 1.0).abs() < 1e-8);
}

#[test]
fn focal_peak_2d() {
    let p = 85.0;
    let f = free_evolve(&kicked(p), 1.0 / p);
    let peak = f.amplitude(0.0).norm_sqr();
    let g = gamma_fn(0.25).unwrap();
    let expect = (6.0 * p).sqrt() * g * g / (8.0 * PI * PI);
    assert!((peak / expect - 1.0).abs() < 0.05, "{peak} vs {expect}");
}

#[test]
fn rainbow_maxima_2d() {
    let p = 85.0;
    let s = 2.0;
    let f = free_evolve(&kicked(p), s / p);
    let theta_r = rainbow_angle(s).unwrap();
    let width = airy_fringe_width(p, s);
    let grid = linspace(0.5, PI - 0.01, 4000);
    let d = density(&f, &grid).unwrap();
    let (t_peak, _) = d.peak().unwrap();
    assert!((t_peak - theta_r).abs() < width, "{t_peak} vs {theta_r}");
    let mirror = 2.0 * PI - t_peak;
    assert!((f.amplitude(mirror).norm_sqr() - f.amplitude(t_peak).norm_sqr()).abs() < 1e-10);
}

#[test]
fn fractional_revival_snapshot() {
    // τ_f + T_rev/2 shifts the focal pattern by π
    let p = 85.0;
    let a = free_evolve(&kicked(p), 1.0 / p);
    let b = free_evolve(&a, 2.0 * PI);
    for i in 0..64 {
        let t = 2.0 * PI * i as f64 / 64.0;
        let shifted = (t + PI).rem_euclid(2.0 * PI);
        assert!((b.amplitude(t).norm_sqr() - a.amplitude(shifted).norm_sqr()).abs() < 1e-8);
    }
}

#[test]
fn dipole_3d_structure() {
    let p = dipole_kick_ground(75.0, 0).unwrap();
    assert!((p.norm_sqr() - 1.0).abs() < 1e-10);
    assert!(p.coeffs()[p.l_max()].norm() < 1e-12);
    for t in linspace(0.0, PI, 25) {
        assert!((p.amplitude(t).norm_sqr() - 1.0 / (4.0 * PI)).abs() < 1e-10);
    }
}

#[test]
fn dipole_3d_focus() {
    let p = 75.0;
    let f = free_evolve_3d(&dipole_kick_ground(p, 0).unwrap(), 1.0 / p);
    let peak = f.amplitude(0.0).norm_sqr();
    assert!((peak / (3.0 * p / 8.0) - 1.0).abs() < 0.15, "{peak}");
    let grid = linspace(0.0, PI, 2000);
    let d = density_3d(&f, &grid).unwrap();
    assert_eq!(d.peak().unwrap().0, 0.0);
}

#[test]
fn weighted_density_normalised() {
    let f = free_evolve_3d(&dipole_kick_ground(75.0, 0).unwrap(), 2.0 / 75.0);
    let grid = linspace(0.0, PI, 4 * f.l_max() + 1);
    let d = density_3d_checked(&f, &grid).unwrap();
    assert!((d.trapezoid_norm() - 1.0).abs() < 1e-3);
}

#[test]
fn revival_3d_after_two_pi() {
    for packet in [
        dipole_kick_ground(75.0, 0).unwrap(),
        polarization_kick_ground(30.0, 0).unwrap(),
    ] {
        let a = free_evolve_3d(&packet, 0.031);
        let b = free_evolve_3d(&a, 2.0 * PI);
        for t in linspace(0.0, PI, 300) {
            assert!((a.amplitude(t).norm_sqr() - b.amplitude(t).norm_sqr()).abs() < 1e-8);
        }
    }
}

#[test]
fn recurrence_rows_and_selection_rule() {
    let t = build_recurrence(200).unwrap();
    assert_eq!(t.l_max(), 100);
    for l in 0..=100 {
        let row = t.row(l);
        let s: f64 = row.iter().sum();
        assert!((s - 1.0).abs() < 1e-10, "l={l}: {s}");
        for (big_l, v) in row.iter().enumerate().filter(|(i, _)| i % 2 == 1) {
            assert!(v.abs() < 1e-10, "d[{big_l},{l}] = {v}");
        }
    }
}

#[test]
fn recurrence_reproduces_legendre_of_double_angle() {
    let t = build_recurrence(120).unwrap();
    for l in [3usize, 17, 60] {
        for x in [-0.9, -0.2, 0.35, 0.8] {
            let u = 2.0 * x * x - 1.0;
            let lhs = legendre_p(l as i64, u).unwrap();
            let rhs: f64 = (0..=2 * l)
                .map(|big_l| t.get(big_l, l) * legendre_p(big_l as i64, x).unwrap())
                .sum();
            assert!((lhs - rhs).abs() < 1e-10, "l={l} x={x}");
        }
    }
}

fn project(f: impl Fn(f64) -> Complex64, l: usize) -> Complex64 {
    // ⟨Y_l^0 | f·Y_0^0⟩ = ∫ f(θ) Y_l^0(θ) 2π sinθ dθ / √(4π)
    let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt();
    cquad(
        |t| {
            f(t) * (norm * legendre_p(l as i64, t.cos()).unwrap() * 2.0 * PI * t.sin()
                / (4.0 * PI).sqrt())
        },
        0.0,
        PI,
        300,
    )
}

#[test]
fn kick_coefficients_match_projection() {
    for p in [0.5, 7.0, 20.0] {
        let pol = polarization_kick_ground(p, 0).unwrap();
        let dip = dipole_kick_ground(p, 0).unwrap();
        for l in 0..=pol.l_max().min(30) {
            let o = project(|t| Complex64::new(0.0, p * t.cos().powi(2)).exp(), l);
            assert!((pol.coeffs()[l] - o).norm() < 1e-8, "pol P={p} l={l}");
        }
        for l in 0..=dip.l_max().min(30) {
            let o = project(|t| Complex64::new(0.0, p * t.cos()).exp(), l);
            assert!((dip.coeffs()[l] - o).norm() < 1e-8, "dip P={p} l={l}");
        }
    }
}

#[test]
fn polarization_focuses_at_both_poles() {
    let p = 75.0;
    let f = free_evolve_3d(&polarization_kick_ground(p, 0).unwrap(), 0.5 / (2.0 * p));
    let grid = linspace(0.0, PI, 3001);
    let d = density_3d(&f, &grid).unwrap();
    for (a, b) in d.density.iter().zip(d.density.iter().rev()) {
        assert!((a - b).abs() < 1e-9 * a.max(1.0));
    }
    let max = d.density.iter().cloned().fold(0.0, f64::max);
    assert_eq!(d.density[0], max);
    assert_eq!(d.density[3000], max);
    let mid = d.density[1500];
    assert!(mid < 0.2 * max);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kicks_conserve_norm(p in 0.0f64..60.0, dt in -3.0f64..3.0, pol in any::<bool>()) {
        let k = if pol { KickSpec::polarization(p) } else { KickSpec::dipole(p) };
        let a = apply_kick(&free_evolve(&kicked(5.0), dt), k).unwrap();
        prop_assert!((a.norm_sqr() - 1.0).abs() < 1e-10);
        let b = free_evolve_3d(&dipole_kick_ground(p, 0).unwrap(), dt);
        prop_assert!((b.norm_sqr() - 1.0).abs() < 1e-10);
        let c = polarization_kick_ground(p, 0).unwrap();
        prop_assert!((c.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn revival_2d_any_packet(p in 0.0f64..40.0, tau in 0.0f64..2.0, theta in 0.0f64..6.28) {
        let a = free_evolve(&kicked(p), tau);
        let b = free_evolve(&a, 4.0 * PI);
        prop_assert!((a.amplitude(theta).norm_sqr() - b.amplitude(theta).norm_sqr()).abs() < 1e-8);
    }
}
