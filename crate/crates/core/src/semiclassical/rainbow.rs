//! Airy forms of the rainbow. Stationary points follow the full cosine map
//! θ = s·sin θ₀ − θ₀ of the reflected branch.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bisect;
use crate::classical::rainbow_angle;
use crate::error::{Result, RotorError};
use crate::specfun::airy_any;

fn fold_geometry(func: &'static str, tau: f64, p: f64) -> Result<(f64, f64, f64, f64)> {
    if !(p > 0.0 && tau > 0.0 && p.is_finite() && tau.is_finite()) {
        return Err(RotorError::domain(func, format!("P = {p}, tau = {tau} must be positive")));
    }
    let s = p * tau;
    if !(s > 1.0) {
        return Err(RotorError::domain(func, format!("P*tau = {s} must exceed 1")));
    }
    let bar = (1.0 / s).acos();
    let tr = rainbow_angle(s)?;
    // Airy scale (2/(P sin θ̄₀))^{1/3}
    let c = (2.0 / (p * bar.sin())).cbrt();
    Ok((s, bar, tr, c))
}

/// Planar-rotor rainbow: ψ = ψ_r(θ) + ψ_r(2π − θ) with
/// ψ_r(θ) = c/√(iτ) e^{i(2 + (θ + θ̄₀)²)/2τ} Ai(c(θ − θ_r)/τ).
pub fn airy_rainbow_2d(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    if !theta.is_finite() {
        return Err(RotorError::domain("airy_rainbow_2d", "non-finite theta"));
    }
    let t = theta.rem_euclid(2.0 * PI);
    Ok(airy_rainbow_branch(t, tau, p)? + airy_rainbow_branch(2.0 * PI - t, tau, p)?)
}

/// Single fold term ψ_r(θ), θ unreduced.
pub fn airy_rainbow_branch(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    let (_, bar, tr, c) = fold_geometry("airy_rainbow_2d", tau, p)?;
    let (ai, _) = airy_any(c * (theta - tr) / tau);
    let phase = (2.0 + (theta + bar).powi(2)) / (2.0 * tau) - PI / 4.0;
    Ok(Complex64::from_polar(c * ai / tau.sqrt(), phase))
}

/// Ingredients of the uniform Airy form at one angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformAiryCoefficients {
    /// Mean phase A.
    pub phase: f64,
    /// Airy argument: ξ on the lit side, η = c(θ − θ_r)/τ beyond θ_r.
    pub argument: f64,
    pub g1: f64,
    /// Zero beyond θ_r.
    pub g2: f64,
    pub lit: bool,
}

/// Phase (θ + θ₀)²/2τ + P cos θ₀ of the reflected branch.
fn reflected_phase(theta: f64, t0: f64, tau: f64, p: f64) -> f64 {
    (theta + t0).powi(2) / (2.0 * tau) + p * t0.cos()
}

pub fn uniform_airy_coefficients(theta: f64, tau: f64, p: f64) -> Result<UniformAiryCoefficients> {
    let (s, bar, tr, c) = fold_geometry("uniform_airy_3d", tau, p)?;
    if !(theta > 0.0 && theta <= PI) {
        return Err(RotorError::domain(
            "uniform_airy_3d",
            format!("theta = {theta} outside (0, pi]; the form is singular at the pole"),
        ));
    }
    if theta >= tr {
        return Ok(UniformAiryCoefficients {
            phase: reflected_phase(theta, bar, tau, p),
            argument: c * (theta - tr) / tau,
            g1: 2.0 * PI * c * bar.sqrt(),
            g2: 0.0,
            lit: false,
        });
    }
    let map = |t0: f64| s * t0.sin() - t0 - theta;
    let ring = bisect(|t| s * t.sin() - t, bar, PI);
    let t2 = bisect(map, 0.0, bar);
    let t3 = bisect(map, bar, ring);
    let (f2, f3) = (reflected_phase(theta, t2, tau, p), reflected_phase(theta, t3, tau, p));
    let xi = -(0.75 * (f3 - f2).abs()).powf(2.0 / 3.0);
    let amp = |t0: f64| (t0 / (bar.cos() - t0.cos()).abs()).sqrt();
    let (low, high) = if f2 < f3 { (amp(t2), amp(t3)) } else { (amp(t3), amp(t2)) };
    let scale = PI * (2.0 / p).sqrt();
    Ok(UniformAiryCoefficients {
        phase: 0.5 * (f2 + f3),
        argument: xi,
        g1: scale * xi.abs().powf(0.25) * (low + high),
        g2: scale * xi.abs().powf(-0.25) * (low - high),
        lit: true,
    })
}

/// Uniform Airy amplitude of the rigid-rotor rainbow:
/// ψ = I/(4iτπ^{3/2}), I = √(2πτ/θ) e^{−iπ/4} e^{iA}[g₁Ai(ξ) − i g₂Ai′(ξ)];
/// beyond θ_r only the g₁ term survives with η in place of ξ.
pub fn uniform_airy_3d(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    let co = uniform_airy_coefficients(theta, tau, p)?;
    let (ai, aip) = airy_any(co.argument);
    let bracket = Complex64::new(co.g1 * ai, -co.g2 * aip);
    let integral = (2.0 * PI * tau / theta).sqrt()
        * Complex64::from_polar(1.0, co.phase - PI / 4.0)
        * bracket;
    Ok(integral / Complex64::new(0.0, 4.0 * tau * PI.powf(1.5)))
}
