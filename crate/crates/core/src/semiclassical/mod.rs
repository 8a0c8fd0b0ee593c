//! Semiclassical approximations to the kicked-rotor wave function near its
//! catastrophes, with the planar model as the quadrature oracle for the
//! polar region of the rigid rotor.
//!
//! Planar phase: Φ(θ₀, φ₀) = Pθ₀⁴/24 + ½(1/τ − P)θ₀² − (θ/τ)θ₀ cos φ₀.

mod focus;
mod glory;
mod planar;
mod rainbow;

use serde::{Deserialize, Serialize};

use crate::classical::{airy_fringe_width, rainbow_angle};
use crate::error::{Result, RotorError};

pub use focus::{pearcey_cusp_3d, pearcey_cusp_sum, pearcey_focus_2d, pearcey_focus_sum};
pub use glory::{ford_wheeler_glory, uniform_bessel_glory};
pub use planar::{planar_focus_asymptotic, planar_focus_density, planar_psi, planar_psi_with};
pub use rainbow::{airy_rainbow_2d, airy_rainbow_branch, uniform_airy_3d, uniform_airy_coefficients, UniformAiryCoefficients};

/// Default radial extent L of the planar model.
pub const PLANAR_EXTENT: f64 = 2.0;

/// θ, τ and P of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarPhaseParams {
    pub p: f64,
    pub tau: f64,
    pub theta: f64,
}

impl PlanarPhaseParams {
    pub fn new(theta: f64, tau: f64, p: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(RotorError::domain("semiclassical", format!("P = {p} must be positive")));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(RotorError::domain("semiclassical", format!("tau = {tau} must be positive")));
        }
        if !(theta >= 0.0 && theta.is_finite()) {
            return Err(RotorError::domain("semiclassical", format!("theta = {theta} must be >= 0")));
        }
        Ok(Self { p, tau, theta })
    }

    /// s = Pτ
    pub fn s(&self) -> f64 {
        self.p * self.tau
    }

    /// Pearcey control parameter x = √(6/P)(1/τ − P).
    pub fn pearcey_x(&self) -> f64 {
        (6.0 / self.p).sqrt() * (1.0 / self.tau - self.p)
    }

    /// Pearcey coordinate β = √2 (θ/τ)(6/P)^{1/4}.
    pub fn pearcey_beta(&self) -> f64 {
        std::f64::consts::SQRT_2 * (self.theta / self.tau) * (6.0 / self.p).powf(0.25)
    }

    /// Quartic planar phase at radius θ₀ with cos φ₀ = `cos_phi`.
    pub fn phase(&self, t0: f64, cos_phi: f64) -> f64 {
        let t2 = t0 * t0;
        self.p * t2 * t2 / 24.0 + 0.5 * (1.0 / self.tau - self.p) * t2
            - self.theta * t0 * cos_phi / self.tau
    }

    /// τ·∂Φ/∂θ₀ at cos φ₀ = ±1 without the θ term: sθ₀³/6 + (1 − s)θ₀.
    fn reduced_gradient(&self, t0: f64) -> f64 {
        let s = self.s();
        s * t0 * t0 * t0 / 6.0 + (1.0 - s) * t0
    }
}

/// Stationary points of the planar phase; θ₀₁ on φ₀ = 0, θ₀₂ ≥ θ₀₃ on
/// φ₀ = π. Missing roots are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPointSet3D {
    pub theta01: Option<f64>,
    pub theta02: Option<f64>,
    pub theta03: Option<f64>,
    /// Φ at (θ₀₁, θ₀₂, θ₀₃).
    pub phases: [Option<f64>; 3],
}

impl StationaryPointSet3D {
    pub fn count(&self) -> usize {
        [self.theta01, self.theta02, self.theta03].iter().flatten().count()
    }
}

pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Radius of the glory ring, θ_g = √(6(s − 1)/s), or `None` for s ≤ 1.
pub fn glory_radius(s: f64) -> Option<f64> {
    (s > 1.0).then(|| (6.0 * (s - 1.0) / s).sqrt())
}

/// Angle at which θ₀₂ and θ₀₃ merge in the quartic model (s > 1).
pub fn quartic_rainbow(s: f64) -> Option<f64> {
    (s > 1.0).then(|| {
        let tm = (2.0 * (s - 1.0) / s).sqrt();
        -(s * tm * tm * tm / 6.0 + (1.0 - s) * tm)
    })
}

/// Real stationary points of the quartic planar phase.
pub fn stationary_points_3d(theta: f64, tau: f64, p: f64) -> Result<StationaryPointSet3D> {
    let pp = PlanarPhaseParams::new(theta, tau, p)?;
    let s = pp.s();
    let h = |t: f64| pp.reduced_gradient(t);
    // h is increasing beyond its minimum at t_m (or everywhere for s ≤ 1)
    let tm = if s > 1.0 { (2.0 * (s - 1.0) / s).sqrt() } else { 0.0 };
    let mut hi = tm.max(1.0);
    while h(hi) < theta {
        hi *= 2.0;
    }
    let theta01 = if theta == 0.0 {
        Some(glory_radius(s).unwrap_or(0.0))
    } else {
        Some(bisect(|t| h(t) - theta, tm, hi))
    };
    let (theta02, theta03) = match glory_radius(s) {
        Some(tg) if theta == 0.0 => (Some(tg), Some(0.0)),
        Some(tg) => {
            let depth = -h(tm);
            if theta < depth {
                (
                    Some(bisect(|t| h(t) + theta, tm, tg)),
                    Some(bisect(|t| h(t) + theta, 0.0, tm)),
                )
            } else if theta == depth {
                (Some(tm), Some(tm))
            } else {
                (None, None)
            }
        }
        None => (None, None),
    };
    let phase = |t: Option<f64>, c: f64| t.map(|t| pp.phase(t, c));
    Ok(StationaryPointSet3D {
        theta01,
        theta02,
        theta03,
        phases: [phase(theta01, 1.0), phase(theta02, -1.0), phase(theta03, -1.0)],
    })
}

/// Where an approximation is being used relative to its domain of validity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    Inside,
    Near,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approximation {
    Planar,
    Pearcey2D,
    PearceyCusp3D,
    Airy2D,
    UniformAiry3D,
    UniformBessel,
    FordWheeler,
}

fn band(distance: f64, inner: f64, outer: f64) -> Validity {
    if distance <= inner {
        Validity::Inside
    } else if distance <= outer {
        Validity::Near
    } else {
        Validity::Outside
    }
}

/// Validity window of `approx` at (θ, τ, P). Distances to the rainbow are
/// counted in Airy-fringe widths.
pub fn validity(approx: Approximation, theta: f64, tau: f64, p: f64) -> Validity {
    let s = p * tau;
    let fold = |s: f64| rainbow_angle(s).ok().map(|tr| (tr, airy_fringe_width(p, s)));
    match approx {
        Approximation::Planar => band(theta, 0.5, 1.0),
        Approximation::Pearcey2D => {
            let w = band((s - 1.0).abs(), 0.15, 0.4);
            worst(w, band(theta, 0.5, 1.0))
        }
        Approximation::PearceyCusp3D => {
            let w = if (1.0..=1.4).contains(&s) {
                Validity::Inside
            } else {
                band((s - 1.2).abs(), 0.2, 0.5)
            };
            worst(w, band(theta, 0.4, 0.8))
        }
        Approximation::Airy2D => match fold(s) {
            Some((tr, w)) => band((theta - tr).abs() / w, 2.0, 4.0),
            None => Validity::Outside,
        },
        Approximation::UniformAiry3D => match fold(s) {
            Some((tr, w)) if theta > 0.0 => {
                let dark = band((theta - tr).max(0.0) / w, 3.0, 6.0);
                worst(dark, band(tr / theta, 4.0, 20.0))
            }
            _ => Validity::Outside,
        },
        Approximation::UniformBessel => match quartic_rainbow(s) {
            Some(tq) if theta < tq => {
                let w = tau * (2.0 / (p * (2.0 * (s - 1.0) / s).sqrt())).cbrt();
                let margin = (tq - theta) / w;
                if margin >= 3.0 {
                    Validity::Inside
                } else if margin >= 1.0 {
                    Validity::Near
                } else {
                    Validity::Outside
                }
            }
            _ => Validity::Outside,
        },
        Approximation::FordWheeler => match glory_radius(s) {
            Some(_) => band(theta, 0.1, 0.3),
            None => Validity::Outside,
        },
    }
}

fn worst(a: Validity, b: Validity) -> Validity {
    let rank = |v: Validity| v as u8;
    if rank(a) >= rank(b) {
        a
    } else {
        b
    }
}
