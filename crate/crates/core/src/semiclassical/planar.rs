//! Planar model of the polar region:
//! ψ = e^{i(P + θ²/2τ)}/(iτ√(4π)) ∫₀^L θ₀ J₀(θθ₀/τ) e^{i[½θ₀²(1/τ−P) + Pθ₀⁴/24]} dθ₀.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{PlanarPhaseParams, PLANAR_EXTENT};
use crate::error::{Result, RotorError};
use crate::quad::{integrate, QuadOptions};
use crate::specfun::{bessel_j_unchecked, hyp1f1_focus};

const PLANAR_TOL: f64 = 1e-10;

/// Planar-model amplitude with radial extent L = 2.
pub fn planar_psi(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    planar_psi_with(theta, tau, p, PLANAR_EXTENT)
}

/// Planar-model amplitude with radial extent `extent`.
pub fn planar_psi_with(theta: f64, tau: f64, p: f64, extent: f64) -> Result<Complex64> {
    let pp = PlanarPhaseParams::new(theta, tau, p)?;
    if !(extent > 0.0 && extent.is_finite()) {
        return Err(RotorError::domain("planar_psi", format!("extent {extent} must be positive")));
    }
    let k = theta / tau;
    let radial = integrate(
        |t0| {
            let j0 = if k == 0.0 { 1.0 } else { bessel_j_unchecked(0, k * t0) };
            Complex64::from_polar(t0 * j0, pp.phase(t0, 0.0))
        },
        0.0,
        extent,
        QuadOptions {
            abs_tol: PLANAR_TOL,
            rel_tol: PLANAR_TOL,
            max_panels: 1_000_000,
            initial_panels: 32,
        },
    )?;
    let pre = Complex64::from_polar(1.0, p + theta * theta / (2.0 * tau))
        / (Complex64::new(0.0, tau) * (4.0 * PI).sqrt());
    Ok(pre * radial.value)
}

/// |ψ(0, 1/P)|² of the planar model in closed form,
/// (PL²/2)² |₁F₁(½; 3/2; iPL⁴/24)|² / (4π).
pub fn planar_focus_density(p: f64, extent: f64) -> Result<f64> {
    let l2 = extent * extent;
    let f = hyp1f1_focus(p * l2 * l2 / 24.0)?;
    Ok((0.5 * p * l2).powi(2) * f.norm_sqr() / (4.0 * PI))
}

/// Large-PL⁴ form of [`planar_focus_density`]:
/// (3P/8π)[π + 24/(PL⁴) + 2√π (24/(PL⁴))^{1/2} cos(PL⁴/24 − 3π/4)].
pub fn planar_focus_asymptotic(p: f64, extent: f64) -> f64 {
    let z = p * extent.powi(4) / 24.0;
    3.0 * p / (8.0 * PI) * (PI + 1.0 / z + 2.0 * PI.sqrt() * z.powf(-0.5) * (z - 0.75 * PI).cos())
}
