use std::f64::consts::PI;

use kicked_rotor::classical::{fold_to_sphere, rainbow_angle, weighted_density_3d, MapParams};
use kicked_rotor::quad::{integrate_real, QuadOptions};
use kicked_rotor::quantum2d::Coupling;
use kicked_rotor::thermal::*;
use proptest::prelude::*;

/// Relative bound for one histogram bin: 2% where the expected count makes
/// that meaningful, four standard deviations otherwise.
fn bin_bound(expected_count: f64) -> f64 {
    if expected_count >= 25_000.0 {
        0.02
    } else {
        4.0 / expected_count.sqrt()
    }
}

#[test]
fn isotropic_sample_moments() {
    let ens = sample_ensemble(1_000_000, 7).unwrap();
    let (o, a) = orientation_alignment(&ens);
    assert!((o - 1.0).abs() < 0.005, "{o}");
    assert!((a - 2.0 / 3.0).abs() < 0.005, "{a}");
    let n = ens.len() as f64;
    let pt2: f64 = ens.particles.iter().map(|q| q.p_theta * q.p_theta).sum::<f64>() / n;
    assert!((pt2 - 1.0).abs() < 0.01, "{pt2}");
    // p'_φ/sin θ is standard normal
    let r2: f64 = ens
        .particles
        .iter()
        .map(|q| (q.p_phi / q.theta.sin()).powi(2))
        .sum::<f64>()
        / n;
    assert!((r2 - 1.0).abs() < 0.01, "{r2}");
}

#[test]
fn isotropic_histogram_is_half_sine() {
    let n = 1_000_000;
    let bins = 50;
    let h = angular_histogram(&sample_ensemble(n, 3).unwrap(), bins).unwrap();
    let w = PI / bins as f64;
    for (k, &d) in h.density.iter().enumerate() {
        let (a, b) = (k as f64 * w, (k + 1) as f64 * w);
        let exact = (a.cos() - b.cos()) / (2.0 * w);
        let bound = bin_bound(exact * w * n as f64);
        assert!((d / exact - 1.0).abs() < bound, "bin {k}: {d} vs {exact}");
    }
    let total: f64 = h.density.iter().map(|d| d * w).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn kick_examples() {
    let ens = sample_ensemble(1000, 1).unwrap();
    assert_eq!(kick(&ens), ens);
    let one = ThermalEnsemble {
        particles: vec![ThermalParticle {
            theta: PI / 2.0,
            phi: 0.4,
            p_theta: 0.0,
            p_phi: 0.0,
        }],
        kick_strength: 10.0,
        seed: 0,
    };
    let k = kick(&one);
    assert_eq!(k.particles[0].p_theta, -10.0);
    assert_eq!(k.particles[0].theta, PI / 2.0);
    assert_eq!(k.particles[0].phi, 0.4);
    assert_eq!(k.particles[0].p_phi, 0.0);
    let kicked = kick(&ens.clone().with_kick_strength(3.0));
    for (a, b) in ens.particles.iter().zip(&kicked.particles) {
        assert_eq!((a.theta, a.phi, a.p_phi), (b.theta, b.phi, b.p_phi));
    }
}

#[test]
fn cold_ensemble_follows_the_map() {
    let pk = 8.0;
    let t = 0.15;
    let ens = kick(&sample_cold(20_000, 5).unwrap().with_kick_strength(pk));
    let out = evolve(&ens, t).unwrap();
    let mut checked = 0;
    for (a, b) in ens.particles.iter().zip(&out.particles) {
        let expect = a.theta - pk * t * a.theta.sin();
        if expect > 1e-3 && expect < PI - 1e-3 {
            assert!((b.theta - expect).abs() < 1e-12, "{} vs {expect}", b.theta);
            checked += 1;
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn zero_duration_is_identity() {
    let ens = sample_ensemble(1000, 9).unwrap();
    assert_eq!(evolve(&ens, 0.0).unwrap(), ens);
    assert!(evolve(&ens, -1.0).is_err());
}

#[test]
fn free_flight_conserves_energy_and_p_phi() {
    let ens = kick(&sample_ensemble(100_000, 2).unwrap().with_kick_strength(10.0));
    let out = evolve(&ens, 0.37).unwrap();
    for (a, b) in ens.particles.iter().zip(&out.particles) {
        assert_eq!(a.p_phi, b.p_phi);
        let (ea, eb) = (a.energy(), b.energy());
        assert!((ea - eb).abs() <= 1e-9 * ea.max(1.0), "{ea} vs {eb}");
    }
}

#[test]
fn deterministic_across_thread_counts() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                let ens = kick(&sample_ensemble(50_000, 11).unwrap().with_kick_strength(5.0));
                let out = evolve(&ens, 0.2).unwrap();
                (out.clone(), orientation_alignment(&out), angular_histogram(&out, 64).unwrap())
            })
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.0, b.0);
    assert_eq!(a.1, b.1);
    assert_eq!(a.2, b.2);
}

fn kicked_profile(pk: f64, seed: u64, bins: usize) -> kicked_rotor::profile::DensityProfile {
    let ens = kick(&sample_ensemble(1_000_000, seed).unwrap().with_kick_strength(pk));
    angular_histogram(&evolve(&ens, 1.0 / pk).unwrap(), bins).unwrap()
}

/// L¹ distance from the equilibrium profile sin θ/2.
fn distance_from_equilibrium(h: &kicked_rotor::profile::DensityProfile) -> f64 {
    let w = PI / h.density.len() as f64;
    h.density
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let (a, b) = (k as f64 * w, (k + 1) as f64 * w);
            (d - (a.cos() - b.cos()) / (2.0 * w)).abs() * w
        })
        .sum()
}

#[test]
fn strong_kick_opens_a_hole_at_the_pole() {
    let h = kicked_profile(10.0, 21, 1000);
    let (peak_at, peak) = h.peak().unwrap();
    assert!(peak_at < 0.3, "{peak_at}");
    assert!(h.density[0] < 0.05 * peak, "{} vs {peak}", h.density[0]);
}

#[test]
fn weak_kick_stays_close_to_equilibrium() {
    let weak = kicked_profile(1.0, 22, 50);
    let strong = kicked_profile(10.0, 22, 50);
    let (_, weak_peak) = weak.peak().unwrap();
    let (_, strong_peak) = strong.peak().unwrap();
    assert!(weak_peak < 1.25 * 0.5, "{weak_peak}");
    assert!(strong_peak > 2.0 * 0.5, "{strong_peak}");
    let (dw, ds) = (distance_from_equilibrium(&weak), distance_from_equilibrium(&strong));
    assert!(dw < 0.5 * ds, "{dw} vs {ds}");
}

#[test]
fn factor_limits() {
    let at_pole = ThermalEnsemble {
        particles: vec![
            ThermalParticle {
                theta: 0.0,
                phi: 0.0,
                p_theta: 0.0,
                p_phi: 0.0,
            };
            10
        ],
        kick_strength: 0.0,
        seed: 0,
    };
    assert_eq!(orientation_alignment(&at_pole), (0.0, 0.0));
}

#[test]
fn strong_kick_orientation_minimum() {
    let pk = 10.0;
    let ens = kick(&sample_ensemble(200_000, 4).unwrap().with_kick_strength(pk));
    let (t, o) = first_minimum(&ens, SpreadMeasure::Orientation).unwrap();
    assert!(o < 0.3, "{o}");
    assert!(t > 0.0 && t * pk < 3.0, "{t}");
}

/// O(s) = 1 − ½∫₀^π sin θ₀ cos(θ₀ − s sin θ₀) dθ₀ for a kicked cold ensemble.
fn cold_orientation(s: f64) -> f64 {
    let opts = QuadOptions::with_abs(1e-13);
    1.0 - 0.5 * integrate_real(|t| t.sin() * (t - s * t.sin()).cos(), 0.0, PI, opts).unwrap()
}

#[test]
fn cold_single_kick_minimum_matches_quadrature() {
    let (mut a, mut b) = (1.0, 2.5);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    while b - a > 1e-8 {
        let (c, d) = (b - g * (b - a), a + g * (b - a));
        if cold_orientation(c) < cold_orientation(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let s_min = 0.5 * (a + b);
    let ens = kick(&sample_cold(200_000, 8).unwrap().with_kick_strength(1.0));
    let (t, o) = first_minimum(&ens, SpreadMeasure::Orientation).unwrap();
    assert!((t - s_min).abs() < 0.02, "{t} vs {s_min}");
    assert!((o - cold_orientation(s_min)).abs() < 0.005, "{o}");
}

#[test]
fn zero_temperature_matches_classical_density() {
    let s = 2.0;
    let n = 4_000_000;
    let bins = 40;
    let ens = kick(&sample_cold(n, 17).unwrap().with_kick_strength(1.0));
    let h = angular_histogram(&evolve(&ens, s).unwrap(), bins).unwrap();
    let params = MapParams::sphere(s);
    let tr = fold_to_sphere(rainbow_angle(s).unwrap());
    let w = PI / bins as f64;
    for (k, &d) in h.density.iter().enumerate() {
        let (a, b) = (k as f64 * w, (k + 1) as f64 * w);
        if a < 0.15 || (a - 0.15..b + 0.15).contains(&tr) {
            continue;
        }
        let exact = (0..200)
            .map(|j| weighted_density_3d(a + w * (j as f64 + 0.5) / 200.0, &params))
            .sum::<f64>()
            / 200.0;
        let bound = bin_bound(exact * w * n as f64);
        assert!((d / exact - 1.0).abs() < bound, "bin {k}: {d} vs {exact}");
    }
}

#[test]
fn polarization_kick_aligns() {
    let ens = kick_with(&sample_cold(100_000, 6).unwrap().with_kick_strength(1.0), Coupling::Polarization);
    let (t, a) = first_minimum(&ens, SpreadMeasure::Alignment).unwrap();
    let (_, a0) = orientation_alignment(&ens);
    assert!(a < a0 && t > 0.0);
}

proptest! {
    #[test]
    fn single_particle_invariants(
        theta in 0.05f64..3.09,
        phi in 0.0f64..6.28,
        p_theta in -5.0f64..5.0,
        p_phi in -3.0f64..3.0,
        dt in 0.0f64..20.0,
    ) {
        let q = ThermalParticle { theta, phi, p_theta, p_phi };
        let ens = ThermalEnsemble { particles: vec![q], kick_strength: 0.0, seed: 0 };
        let r = evolve(&ens, dt).unwrap().particles[0];
        prop_assert_eq!(r.p_phi, p_phi);
        prop_assert!((r.energy() - q.energy()).abs() <= 1e-9 * q.energy().max(1.0));
        prop_assert!(r.theta >= 0.0 && r.theta <= PI);
        if p_phi != 0.0 {
            prop_assert!(r.theta > 0.0 && r.theta < PI);
        }
    }
}
