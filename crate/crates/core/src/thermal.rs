//! Finite-temperature classical ensembles of rigid rotors in reduced units:
//! momenta in units of the thermal momentum, time t' and kick strength P'.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RotorError};
use crate::profile::{DensityProfile, Geometry};
use crate::quantum2d::Coupling;
use crate::sum::par_pairwise_sum;

/// Coarse scan step in units of P'Δt'.
pub const SCAN_STEP: f64 = 0.01;
/// Golden-section tolerance in units of P't'.
pub const REFINE_TOL: f64 = 1e-6;
/// Longest scan, in units of P't', before the search gives up.
pub const SCAN_LIMIT: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalParticle {
    pub theta: f64,
    pub phi: f64,
    pub p_theta: f64,
    /// Conserved.
    pub p_phi: f64,
}

impl ThermalParticle {
    /// ½(p'²_θ + p'²_φ/sin²θ).
    pub fn energy(&self) -> f64 {
        let s = self.theta.sin();
        let rot = if self.p_phi == 0.0 { 0.0 } else { self.p_phi * self.p_phi / (s * s) };
        0.5 * (self.p_theta * self.p_theta + rot)
    }

    /// Angular speed ω = (p'²_θ + p'²_φ/sin²θ)^{1/2}.
    pub fn omega(&self) -> f64 {
        (2.0 * self.energy()).sqrt()
    }

    fn free_flight(&self, dt: f64) -> Self {
        let w = self.omega();
        if w == 0.0 || dt == 0.0 {
            return *self;
        }
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        let r0 = [st * cp, st * sp, ct];
        let e_theta = [ct * cp, ct * sp, -st];
        let e_phi = [-sp, cp, 0.0];
        let v_phi = if self.p_phi == 0.0 { 0.0 } else { self.p_phi / st };
        let v0: [f64; 3] = std::array::from_fn(|k| self.p_theta * e_theta[k] + v_phi * e_phi[k]);
        // great circle: r(t) = r₀ cos ωt + (v₀/ω) sin ωt
        let (s, c) = (w * dt).sin_cos();
        let r: [f64; 3] = std::array::from_fn(|k| r0[k] * c + v0[k] / w * s);
        let v: [f64; 3] = std::array::from_fn(|k| -r0[k] * w * s + v0[k] * c);
        let rho = r[0].hypot(r[1]);
        let theta = rho.atan2(r[2]);
        let phi = if rho == 0.0 { self.phi } else { r[1].atan2(r[0]).rem_euclid(2.0 * PI) };
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let p_theta = v[0] * ct * cp + v[1] * ct * sp - v[2] * st;
        Self {
            theta,
            phi,
            p_theta,
            p_phi: self.p_phi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalEnsemble {
    pub particles: Vec<ThermalParticle>,
    /// P'
    pub kick_strength: f64,
    pub seed: u64,
}

fn particle_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn sample_with(n: usize, seed: u64, thermal: bool) -> Result<ThermalEnsemble> {
    if n == 0 {
        return Err(RotorError::domain("sample_ensemble", "particle count must be at least 1"));
    }
    let particles = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = particle_rng(seed, i);
            let cos_t: f64 = rng.gen_range(-1.0..=1.0);
            let theta = cos_t.acos();
            let phi = rng.gen_range(0.0..2.0 * PI);
            let (a, b): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
            let (p_theta, p_phi) = if thermal { (a, b * theta.sin()) } else { (0.0, 0.0) };
            ThermalParticle {
                theta,
                phi,
                p_theta,
                p_phi,
            }
        })
        .collect();
    Ok(ThermalEnsemble {
        particles,
        kick_strength: 0.0,
        seed,
    })
}

/// Isotropic ensemble with f ∝ exp[−½(p'²_θ + p'²_φ/sin²θ)].
pub fn sample_ensemble(n: usize, seed: u64) -> Result<ThermalEnsemble> {
    sample_with(n, seed, true)
}

/// Isotropic ensemble at rest, the zero-temperature limit P' → ∞ at fixed
/// P't' (use P' = 1 so that t' is the reduced delay s).
pub fn sample_cold(n: usize, seed: u64) -> Result<ThermalEnsemble> {
    sample_with(n, seed, false)
}

impl ThermalEnsemble {
    pub fn with_kick_strength(mut self, p_prime: f64) -> Self {
        self.kick_strength = p_prime;
        self
    }

    pub fn len(&self) -> usize {
        self.particles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.particles.is_empty()
    }

    fn map(&self, f: impl Fn(&ThermalParticle) -> ThermalParticle + Sync + Send) -> Self {
        Self {
            particles: self.particles.par_iter().map(f).collect(),
            kick_strength: self.kick_strength,
            seed: self.seed,
        }
    }
}

/// Dipole kick at the current positions: p'_θ ← p'_θ − P' sin θ.
pub fn kick(ens: &ThermalEnsemble) -> ThermalEnsemble {
    kick_with(ens, Coupling::Dipole)
}

/// Kick for either coupling; the polarization kick is p'_θ ← p'_θ − P' sin 2θ.
pub fn kick_with(ens: &ThermalEnsemble, coupling: Coupling) -> ThermalEnsemble {
    let pk = ens.kick_strength;
    if pk == 0.0 {
        return ens.clone();
    }
    ens.map(|q| {
        let force = match coupling {
            Coupling::Dipole => q.theta.sin(),
            Coupling::Polarization => (2.0 * q.theta).sin(),
        };
        ThermalParticle {
            p_theta: q.p_theta - pk * force,
            ..*q
        }
    })
}

/// Free rotation for a reduced time `dt_prime`.
pub fn evolve(ens: &ThermalEnsemble, dt_prime: f64) -> Result<ThermalEnsemble> {
    if !(dt_prime >= 0.0 && dt_prime.is_finite()) {
        return Err(RotorError::domain("evolve", format!("dt' = {dt_prime} must be >= 0")));
    }
    Ok(ens.map(|q| q.free_flight(dt_prime)))
}

/// Histogram of θ on [0, π], normalized so that Σ density·Δθ = 1.
pub fn angular_histogram(ens: &ThermalEnsemble, bins: usize) -> Result<DensityProfile> {
    if bins < 2 {
        return Err(RotorError::domain("angular_histogram", "need at least 2 bins"));
    }
    let width = PI / bins as f64;
    let counts = ens
        .particles
        .par_iter()
        .fold(
            || vec![0u64; bins],
            |mut acc, q| {
                let k = ((q.theta / width) as usize).min(bins - 1);
                acc[k] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let n = ens.len() as f64;
    let theta = (0..bins).map(|k| (k as f64 + 0.5) * width).collect();
    let density: Vec<f64> = counts.iter().map(|&c| c as f64 / (n * width)).collect();
    Ok(DensityProfile::new(Geometry::Sphere3D, theta, density.clone()).with_weighted(density))
}

/// O = ⟨1 − cos θ⟩ and A = ⟨1 − cos²θ⟩.
pub fn orientation_alignment(ens: &ThermalEnsemble) -> (f64, f64) {
    let n = ens.len();
    let ps = &ens.particles;
    let o = par_pairwise_sum(n, |i| 1.0 - ps[i].theta.cos()) / n as f64;
    let a = par_pairwise_sum(n, |i| ps[i].theta.sin().powi(2)) / n as f64;
    (o, a)
}

/// Which squeezing measure a minimum search tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpreadMeasure {
    Orientation,
    Alignment,
}

impl SpreadMeasure {
    pub fn for_coupling(coupling: Coupling) -> Self {
        match coupling {
            Coupling::Dipole => SpreadMeasure::Orientation,
            Coupling::Polarization => SpreadMeasure::Alignment,
        }
    }

    pub fn of(self, ens: &ThermalEnsemble) -> f64 {
        let (o, a) = orientation_alignment(ens);
        match self {
            SpreadMeasure::Orientation => o,
            SpreadMeasure::Alignment => a,
        }
    }
}

/// First local minimum of the spread measure after `ens`, as (t', value).
/// Scans with P'Δt' = 0.01, then refines by golden section to 10⁻⁶ in P't'.
pub fn first_minimum(ens: &ThermalEnsemble, measure: SpreadMeasure) -> Result<(f64, f64)> {
    let unit = if ens.kick_strength > 0.0 { 1.0 / ens.kick_strength } else { 1.0 };
    if ens.is_empty() {
        return Err(RotorError::domain("first_minimum", "empty ensemble"));
    }
    // cos θ(t) = cos θ₀ cos ωt − (p'_θ sin θ₀/ω) sin ωt along the great circle
    let orbits: Vec<(f64, f64, f64)> = ens
        .particles
        .par_iter()
        .map(|q| {
            let w = q.omega();
            let (st, ct) = q.theta.sin_cos();
            (ct, if w == 0.0 { 0.0 } else { q.p_theta * st / w }, w)
        })
        .collect();
    let n = orbits.len();
    let at = |t: f64| -> Result<f64> {
        let cos_at = |i: usize| {
            let (c0, b, w) = orbits[i];
            let (s, c) = (w * t).sin_cos();
            (c0 * c - b * s).clamp(-1.0, 1.0)
        };
        let sum = match measure {
            SpreadMeasure::Orientation => par_pairwise_sum(n, |i| 1.0 - cos_at(i)),
            SpreadMeasure::Alignment => par_pairwise_sum(n, |i| {
                let c = cos_at(i);
                1.0 - c * c
            }),
        };
        Ok(sum / n as f64)
    };
    let step = SCAN_STEP * unit;
    let mut prev = at(0.0)?;
    let mut cur = at(step)?;
    let mut k = 1usize;
    while cur <= prev {
        if k as f64 * SCAN_STEP > SCAN_LIMIT {
            return Err(RotorError::convergence(
                "first_minimum",
                format!("no minimum within P't' = {SCAN_LIMIT}"),
            ));
        }
        k += 1;
        prev = cur;
        cur = at(k as f64 * step)?;
    }
    // minimum bracketed by [(k−2)·step, k·step]
    let (mut a, mut b) = ((k.saturating_sub(2)) as f64 * step, k as f64 * step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (at(c)?, at(d)?);
    while (b - a) > REFINE_TOL * unit {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = at(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, at(t)?))
}
