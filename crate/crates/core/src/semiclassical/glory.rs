//! Bessel forms of the forward glory on the rigid-rotor axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{glory_radius, quartic_rainbow, stationary_points_3d, PlanarPhaseParams};
use crate::error::{Result, RotorError};
use crate::specfun::bessel_j_unchecked;

/// Below this angle the uniform form is replaced by its θ → 0 limit.
const AXIS_TOL: f64 = 1e-8;

fn glory_setup(func: &'static str, theta: f64, tau: f64, p: f64) -> Result<(PlanarPhaseParams, f64)> {
    let pp = PlanarPhaseParams::new(theta, tau, p)?;
    let tg = glory_radius(pp.s())
        .ok_or_else(|| RotorError::domain(func, format!("P*tau = {} must exceed 1", pp.s())))?;
    Ok((pp, tg))
}

/// τ·∂²Φ/∂θ₀² = (1 − s) + sθ₀²/2.
fn curvature(s: f64, t0: f64) -> f64 {
    (1.0 - s) + 0.5 * s * t0 * t0
}

fn assemble(pp: &PlanarPhaseParams, a: f64, chi: f64, bracket: Complex64) -> Complex64 {
    let tau = pp.tau;
    let integral = 2.0 * PI * (2.0 * PI * tau).sqrt() * Complex64::from_polar(1.0, a - chi) * bracket;
    let pre = Complex64::from_polar(1.0, pp.theta * pp.theta / (2.0 * tau) + pp.p)
        / Complex64::new(0.0, (2.0 * PI).powf(1.5) * tau * 2f64.sqrt());
    pre * integral
}

/// Uniform Bessel amplitude built from the pair θ₀₁ (φ₀ = 0) and θ₀₂
/// (φ₀ = π): I = 2π√(2πτ) e^{i(a−χ)}[p₊J₀(b) − i p₋J₁(b)].
///
/// Fails with a domain error once θ₀₂ has merged with θ₀₃, where the form
/// breaks down.
pub fn uniform_bessel_glory(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    let (pp, tg) = glory_setup("uniform_bessel_glory", theta, tau, p)?;
    let s = pp.s();
    if theta < AXIS_TOL {
        let a = pp.phase(tg, 1.0);
        let plus = tg / curvature(s, tg).sqrt();
        return Ok(assemble(&pp, a, -PI / 4.0, Complex64::new(plus, 0.0)));
    }
    let tq = quartic_rainbow(s).expect("s > 1");
    if theta >= tq {
        return Err(RotorError::domain(
            "uniform_bessel_glory",
            format!("theta = {theta} beyond the merger of the inner pair at {tq}"),
        ));
    }
    let sp = stationary_points_3d(theta, tau, p)?;
    let (t1, t2) = (sp.theta01.expect("always present"), sp.theta02.expect("theta < tq"));
    let (f1, f2) = (pp.phase(t1, 1.0), pp.phase(t2, -1.0));
    let a = 0.5 * (f2 + f1);
    let b = 0.5 * (f2 - f1);
    let (d1, d2) = (curvature(s, t1), curvature(s, t2));
    let chi = if d1 > 0.0 { -PI / 4.0 } else { PI / 4.0 };
    let w = 0.5 * (b * tau / theta).sqrt();
    let (r1, r2) = ((t1 / d1.abs()).sqrt(), (t2 / d2.abs()).sqrt());
    let (plus, minus) = (w * (r1 + r2), w * (r1 - r2));
    let bracket = Complex64::new(plus * bessel_j_unchecked(0, b), -minus * bessel_j_unchecked(1, b));
    Ok(assemble(&pp, a, chi, bracket))
}

/// Small-angle glory: ψ ∝ θ_g J₀(θ_g θ/τ)/√(2τ(τΦ''(θ_g))), θ_g = √(6(s−1)/s),
/// with the phase of the uniform form on the axis.
pub fn ford_wheeler_glory(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    let (pp, tg) = glory_setup("ford_wheeler_glory", theta, tau, p)?;
    let plus = tg / curvature(pp.s(), tg).sqrt();
    let bracket = Complex64::new(plus * bessel_j_unchecked(0, tg * theta / tau), 0.0);
    Ok(assemble(&pp, pp.phase(tg, 1.0), -PI / 4.0, bracket))
}
