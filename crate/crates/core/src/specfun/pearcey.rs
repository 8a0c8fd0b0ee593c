//! Pearcey integral 𝒫(x,β) = ∫ exp[i(u⁴ + x u² + β u)] du and its half-line
//! moments Q_k(x,y) = ∫₀^∞ u^k exp[i(u⁴ + x u² + y u)] du.
//!
//! The double power series is exact in principle but its terms grow like
//! exp(c·|x|²) before they decay, so it is only used while the largest term
//! stays small. Otherwise the half line is split at R: the piece [0,R] is
//! integrated on the real axis and the tail along the ray R + t·e^{iπ/8},
//! on which the quartic decays.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::ln_gamma;
use crate::error::{Result, RotorError};
use crate::quad::{integrate, QuadOptions};
use crate::sum::NeumaierC;

/// Largest admissible series term; beyond this cancellation costs > 3 digits.
const SERIES_MAX_TERM: f64 = 1e3;
const SERIES_TOL: f64 = 1e-13;
const SERIES_QUIET_RUN: usize = 10;
const SERIES_BUDGET: usize = 600;

fn eighth_root(j: i64) -> Complex64 {
    let j = j.rem_euclid(16) as f64;
    Complex64::from_polar(1.0, PI * j / 8.0)
}

/// Which evaluator produced a value; exposed for diagnostics and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PearceyRoute {
    Series,
    Contour,
}

/// Q_k by the double series; `None` if a term exceeds [`SERIES_MAX_TERM`].
pub fn moment_series(k: u32, x: f64, y: f64) -> Result<Option<Complex64>> {
    let lx = x.abs().ln();
    let ly = y.abs().ln();
    let m_max = if x == 0.0 { 0 } else { SERIES_BUDGET };
    let n_max = if y == 0.0 { 0 } else { SERIES_BUDGET };
    let sx = if x < 0.0 { 8 } else { 0 };
    let sy = if y < 0.0 { 8 } else { 0 };
    let ln_max = SERIES_MAX_TERM.ln();
    let mut total = NeumaierC::new();
    let mut quiet_rows = 0;
    let mut prev_row_mag = 0.0_f64;
    let mut ln_mfact = 0.0;
    for m in 0..=m_max {
        if m > 0 {
            ln_mfact += (m as f64).ln();
        }
        let mut row = NeumaierC::new();
        let mut quiet = 0;
        let mut prev_mag = 0.0_f64;
        let mut ln_nfact = 0.0;
        let mut row_peak = 0.0_f64;
        let mut done_row = false;
        for n in 0..=n_max {
            if n > 0 {
                ln_nfact += (n as f64).ln();
            }
            let a = (k as usize + 2 * m + n + 1) as f64;
            let mut ln_mag = ln_gamma(a / 4.0) - 4f64.ln() - ln_mfact - ln_nfact;
            if m > 0 {
                ln_mag += m as f64 * lx;
            }
            if n > 0 {
                ln_mag += n as f64 * ly;
            }
            if ln_mag > ln_max {
                return Ok(None);
            }
            let mag = ln_mag.exp();
            row_peak = row_peak.max(mag);
            let j = 6 * m as i64 + 5 * n as i64 + k as i64 + 1 + sx * m as i64 + sy * n as i64;
            row.add(eighth_root(j) * mag);
            let scale = (row.value() + total.value()).norm().max(1e-300);
            if mag < SERIES_TOL * scale && mag <= prev_mag {
                quiet += 1;
                if quiet >= SERIES_QUIET_RUN {
                    done_row = true;
                    break;
                }
            } else {
                quiet = 0;
            }
            prev_mag = mag;
        }
        if !done_row && n_max > 0 {
            return Err(RotorError::convergence(
                "pearcey",
                format!("row {m} exhausted the {SERIES_BUDGET}-term budget"),
            ));
        }
        let r = row.value();
        total.add(r);
        let mag = row_peak;
        if mag < SERIES_TOL * total.value().norm().max(1e-300) && mag <= prev_row_mag {
            quiet_rows += 1;
            if quiet_rows >= SERIES_QUIET_RUN {
                return Ok(Some(total.value()));
            }
        } else {
            quiet_rows = 0;
        }
        prev_row_mag = mag;
    }
    if m_max == 0 {
        return Ok(Some(total.value()));
    }
    Err(RotorError::convergence(
        "pearcey",
        format!("series exhausted the {SERIES_BUDGET}-row budget"),
    ))
}

fn phase(u: Complex64, x: f64, y: f64) -> Complex64 {
    let u2 = u * u;
    u2 * u2 + u2 * x + u * y
}

fn split_point(x: f64, y: f64) -> f64 {
    let mut r = 2.0_f64.max(1.5 * x.abs().sqrt()).max(y.abs().cbrt());
    while 4.0 * r.powi(3) + 2.0 * r * x - y.abs() < 4.0 || 6.0 * r * r + x < 1.0 {
        r *= 1.1;
    }
    r
}

/// Q_k by real segment plus rotated tail.
pub fn moment_contour(k: u32, x: f64, y: f64) -> Result<Complex64> {
    let r = split_point(x, y);
    let kk = k as i32;
    let swing = r.powi(4) + x.abs() * r * r + y.abs() * r;
    let opts = QuadOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_panels: 200_000,
        initial_panels: 8 + (swing / PI).ceil() as usize,
    };
    let real = integrate(
        |u| {
            let uc = Complex64::new(u, 0.0);
            uc.powi(kk) * Complex64::new(0.0, phase(uc, x, y).re).exp()
        },
        0.0,
        r,
        opts,
    )?;
    let w = Complex64::from_polar(1.0, PI / 8.0);
    let mut t_end = 1.0;
    while {
        let u = Complex64::new(r, 0.0) + w * t_end;
        phase(u, x, y).im < 45.0
    } {
        t_end *= 1.25;
    }
    let tail = integrate(
        |t| {
            let u = Complex64::new(r, 0.0) + w * t;
            u.powi(kk) * (Complex64::i() * phase(u, x, y)).exp() * w
        },
        0.0,
        t_end,
        QuadOptions {
            initial_panels: 16,
            ..opts
        },
    )?;
    Ok(real.value + tail.value)
}

/// Q_k(x,y), routed by the size of the largest series term.
pub fn pearcey_moment(k: u32, x: f64, y: f64) -> Result<(Complex64, PearceyRoute)> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(RotorError::domain("pearcey", "non-finite argument"));
    }
    if x.abs() <= 12.0 && y.abs() <= 12.0 {
        if let Some(v) = moment_series(k, x, y)? {
            return Ok((v, PearceyRoute::Series));
        }
    }
    Ok((moment_contour(k, x, y)?, PearceyRoute::Contour))
}

/// 𝒫(x,β); symmetric in β bit for bit.
pub fn pearcey(x: f64, beta: f64) -> Result<Complex64> {
    let b = beta.abs();
    let (plus, _) = pearcey_moment(0, x, b)?;
    let (minus, _) = pearcey_moment(0, x, -b)?;
    Ok(plus + minus)
}

/// 𝒫₁(x,y) = ∫₀^∞ exp[i(u⁴ + x u² + y u)] du.
pub fn pearcey_half(x: f64, y: f64) -> Result<Complex64> {
    pearcey_moment(0, x, y).map(|(v, _)| v)
}

/// ∂𝒫₁/∂y = i·Q₁(x,y).
pub fn pearcey_half_dy(x: f64, y: f64) -> Result<Complex64> {
    pearcey_moment(1, x, y).map(|(v, _)| Complex64::i() * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_fn;

    #[test]
    fn origin_is_single_term() {
        let p = pearcey(0.0, 0.0).unwrap();
        let expect = Complex64::from_polar(0.5 * gamma_fn(0.25).unwrap(), PI / 8.0);
        assert!((p - expect).norm() < 1e-15);
    }

    #[test]
    fn half_dy_at_origin() {
        let d = pearcey_half_dy(0.0, 0.0).unwrap();
        let expect = Complex64::from_polar(0.25 * PI.sqrt(), 3.0 * PI / 4.0);
        assert!((d - expect).norm() < 1e-15);
    }

    #[test]
    fn routes_agree_where_both_work() {
        for &(x, y) in &[(1.0, 1.0), (-2.0, 3.0), (3.0, -2.5), (0.0, 4.0)] {
            for k in 0..2 {
                let s = moment_series(k, x, y).unwrap().expect("small arguments");
                let c = moment_contour(k, x, y).unwrap();
                assert!((s - c).norm() < 1e-11, "k={k} ({x},{y}): {s} vs {c}");
            }
        }
    }

    #[test]
    fn large_arguments_take_the_contour() {
        let (_, route) = pearcey_moment(0, 8.0, 8.0).unwrap();
        assert_eq!(route, PearceyRoute::Contour);
        let (_, route) = pearcey_moment(0, 0.5, 0.5).unwrap();
        assert_eq!(route, PearceyRoute::Series);
    }
}
