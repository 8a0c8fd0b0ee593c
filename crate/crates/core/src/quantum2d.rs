//! Exact quantum evolution of the δ-kicked planar rotor in the angular
//! momentum basis e^{inθ}/√(2π).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, RotorError};
use crate::profile::{DensityProfile, Geometry};
use crate::specfun::bessel_j_seq;

/// Tail mass a kick may push past the truncation before it is an error.
pub const TAIL_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// V ∝ cos θ
    Dipole,
    /// V ∝ cos² θ
    Polarization,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickSpec {
    pub strength: f64,
    pub coupling: Coupling,
}

impl KickSpec {
    pub fn dipole(p: f64) -> Self {
        Self {
            strength: p,
            coupling: Coupling::Dipole,
        }
    }

    pub fn polarization(p: f64) -> Self {
        Self {
            strength: p,
            coupling: Coupling::Polarization,
        }
    }
}

/// Orders a Bessel expansion at argument `p` needs before J_n(p) is
/// negligible.
pub fn truncation_order(p: f64) -> usize {
    (p.abs() + 8.0 * p.abs().cbrt() + 20.0).ceil() as usize
}

/// i^k for any integer k.
pub(crate) fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Planar rotor state: coefficients c_n for n ∈ [−n_max, n_max].
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPacket2D {
    n_max: usize,
    coeffs: Vec<Complex64>,
    time: f64,
}

impl FourierPacket2D {
    pub fn from_coeffs(n_max: usize, coeffs: Vec<Complex64>, time: f64) -> Self {
        assert_eq!(coeffs.len(), 2 * n_max + 1, "coefficient count must be 2·n_max+1");
        Self {
            n_max,
            coeffs,
            time,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Coefficients in order n = −n_max ..= n_max.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        let idx = n + self.n_max as i64;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Ψ(θ) = (2π)^{-1/2} Σ c_n e^{inθ}, evaluated by Horner in e^{iθ}.
    pub fn amplitude(&self, theta: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, theta);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        let shift = Complex64::from_polar(1.0, -(self.n_max as f64) * theta);
        acc * shift / (2.0 * PI).sqrt()
    }
}

/// Rotor ground state c_0 = 1.
pub fn ground_packet(n_max: usize) -> FourierPacket2D {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
    coeffs[n_max] = Complex64::new(1.0, 0.0);
    FourierPacket2D {
        n_max,
        coeffs,
        time: 0.0,
    }
}

/// Applies exp(iP cos θ) or exp(iP cos² θ) through their Jacobi–Anger
/// expansions.
pub fn apply_kick(packet: &FourierPacket2D, kick: KickSpec) -> Result<FourierPacket2D> {
    if !(kick.strength >= 0.0) || !kick.strength.is_finite() {
        return Err(RotorError::domain(
            "apply_kick",
            format!("kick strength {} must be finite and >= 0", kick.strength),
        ));
    }
    if kick.strength == 0.0 {
        return Ok(packet.clone());
    }
    let (arg, stride, global) = match kick.coupling {
        Coupling::Dipole => (kick.strength, 1usize, Complex64::new(1.0, 0.0)),
        Coupling::Polarization => (
            0.5 * kick.strength,
            2usize,
            Complex64::from_polar(1.0, 0.5 * kick.strength),
        ),
    };
    let k_max = truncation_order(arg);
    let j = bessel_j_seq(k_max, arg);
    // weights w_k = i^k J_k for k ∈ [−k_max, k_max]
    let w: Vec<Complex64> = (-(k_max as i64)..=k_max as i64)
        .map(|k| {
            let jk = j[k.unsigned_abs() as usize];
            let jk = if k < 0 && k % 2 != 0 { -jk } else { jk };
            i_pow(k) * jk * global
        })
        .collect();

    let old = packet.n_max as i64;
    let new_n = packet.n_max + stride * k_max;
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * new_n + 1];
    for (mi, &cm) in packet.coeffs.iter().enumerate() {
        if cm == Complex64::new(0.0, 0.0) {
            continue;
        }
        let m = mi as i64 - old;
        for (ki, &wk) in w.iter().enumerate() {
            let k = ki as i64 - k_max as i64;
            let n = m + stride as i64 * k;
            out[(n + new_n as i64) as usize] += wk * cm;
        }
    }
    let before = packet.norm_sqr();
    let after: f64 = out.iter().map(|c| c.norm_sqr()).sum();
    let tail = (before - after).abs() / before;
    if tail > TAIL_LIMIT {
        return Err(RotorError::Truncation {
            tail,
            limit: TAIL_LIMIT,
        });
    }
    Ok(FourierPacket2D {
        n_max: new_n,
        coeffs: out,
        time: packet.time,
    })
}

/// Free rotation: c_n ← c_n·exp(−i n² Δτ/2).
pub fn free_evolve(packet: &FourierPacket2D, dtau: f64) -> FourierPacket2D {
    let n0 = packet.n_max as i64;
    let coeffs = packet
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let n = (i as i64 - n0) as f64;
            // reduce n²/2 modulo 2π-periodicity of the phase before multiplying
            let phase = -(0.5 * n * n * dtau).rem_euclid(2.0 * PI);
            c * Complex64::from_polar(1.0, phase)
        })
        .collect();
    FourierPacket2D {
        n_max: packet.n_max,
        coeffs,
        time: packet.time + dtau,
    }
}

/// |Ψ(θ)|² on `grid`, θ ∈ [0, 2π).
pub fn density(packet: &FourierPacket2D, grid: &[f64]) -> Result<DensityProfile> {
    if let Some(&bad) = grid.iter().find(|t| !(0.0..2.0 * PI).contains(*t)) {
        return Err(RotorError::domain("density", format!("θ = {bad} outside [0, 2π)")));
    }
    let dens: Vec<f64> = grid
        .par_iter()
        .map(|&t| packet.amplitude(t).norm_sqr())
        .collect();
    Ok(DensityProfile::new(Geometry::Circle2D, grid.to_vec(), dens))
}

/// As [`density`], additionally requiring a uniform periodic grid fine enough
/// that its rectangle sum reproduces the norm to 1e-8.
pub fn density_checked(packet: &FourierPacket2D, grid: &[f64]) -> Result<DensityProfile> {
    let n = grid.len();
    if n < 4 * packet.n_max.max(1) {
        return Err(RotorError::Resolution(format!(
            "{n} grid points < 4·n_max = {}",
            4 * packet.n_max
        )));
    }
    let h = 2.0 * PI / n as f64;
    if grid
        .iter()
        .enumerate()
        .any(|(i, &t)| (t - i as f64 * h).abs() > 1e-12)
    {
        return Err(RotorError::Resolution(
            "normalisation check needs a uniform grid on [0, 2π)".into(),
        ));
    }
    let prof = density(packet, grid)?;
    let total: f64 = prof.density.iter().sum::<f64>() * h;
    if (total - packet.norm_sqr()).abs() > 1e-8 {
        return Err(RotorError::Resolution(format!(
            "grid integral {total} differs from the norm"
        )));
    }
    Ok(prof)
}

/// Ground state kicked once: c_n = i^n J_n(P) for the dipole coupling.
pub fn kicked_ground(kick: KickSpec) -> Result<FourierPacket2D> {
    apply_kick(&ground_packet(0), kick)
}
