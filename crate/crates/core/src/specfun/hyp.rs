use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, RotorError};
use crate::quad::{integrate, QuadOptions};

const SERIES_LIMIT: f64 = 10.0;
const ASYMPTOTIC_LIMIT: f64 = 30.0;

/// ₁F₁(½; 3/2; iz) = ∫₀¹ exp(i z t²) dt for real z.
pub fn hyp1f1_focus(z: f64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(RotorError::domain("hyp1f1_focus", "non-finite argument"));
    }
    if z < 0.0 {
        return hyp1f1_focus(-z).map(|v| v.conj());
    }
    if z <= SERIES_LIMIT {
        Ok(hyp1f1_series(z))
    } else if z <= ASYMPTOTIC_LIMIT {
        let r = integrate(
            |t| Complex64::new(0.0, z * t * t).exp(),
            0.0,
            1.0,
            QuadOptions::default().panels(16),
        )?;
        Ok(r.value)
    } else {
        Ok(hyp1f1_asymptotic(z))
    }
}

/// Σ (iz)^k / (k!(2k+1)).
pub fn hyp1f1_series(z: f64) -> Complex64 {
    let mut acc = crate::sum::NeumaierC::new();
    let mut pw = Complex64::new(1.0, 0.0);
    let iz = Complex64::new(0.0, z);
    for k in 0..400 {
        let t = pw / (2 * k + 1) as f64;
        acc.add(t);
        if t.norm() < 1e-18 && k as f64 > z.abs() {
            break;
        }
        pw = pw * iz / (k + 1) as f64;
    }
    acc.value()
}

/// Large-z form: z^{-1/2}[(√π/2)e^{iπ/4} − ∫_{√z}^∞ e^{is²} ds], the tail
/// expanded as (i e^{iX²}/(2X)) Σ_k (½)_k (−i/X²)^k.
pub fn hyp1f1_asymptotic(z: f64) -> Complex64 {
    let x = z.sqrt();
    let mut s = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let step = Complex64::new(0.0, -1.0 / (x * x));
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let mag = term.norm();
        if mag > last || mag < 1e-18 {
            break;
        }
        last = mag;
        s += term;
        term = term * step * (0.5 + k as f64);
    }
    let tail = Complex64::new(0.0, 1.0 / (2.0 * x)) * Complex64::new(0.0, z).exp() * s;
    (Complex64::from_polar(0.5 * PI.sqrt(), PI / 4.0) - tail) / x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero() {
        assert_eq!(hyp1f1_focus(0.0).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn regimes_meet() {
        for (z, f) in [
            (SERIES_LIMIT, hyp1f1_series as fn(f64) -> Complex64),
            (ASYMPTOTIC_LIMIT, hyp1f1_asymptotic),
        ] {
            let q = integrate(
                |t| Complex64::new(0.0, z * t * t).exp(),
                0.0,
                1.0,
                QuadOptions::default().panels(16),
            )
            .unwrap()
            .value;
            assert!((f(z) - q).norm() < 1e-12, "z={z}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let a = hyp1f1_focus(7.5).unwrap();
        let b = hyp1f1_focus(-7.5).unwrap();
        assert_eq!(a.conj(), b);
    }
}
