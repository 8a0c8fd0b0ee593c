//! Pearcey forms of the focus: the 2D cusp and its 3D axially symmetric
//! counterpart.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::PlanarPhaseParams;
use crate::error::{Result, RotorError};
use crate::quad::{integrate, QuadOptions};
use crate::specfun::{gamma_fn, ln_gamma, pearcey, pearcey_moment};
use crate::sum::NeumaierC;

/// Largest series term tolerated before cancellation costs too many digits.
const MAX_TERM: f64 = 1e3;
/// Terms this far (in e-folds) below the largest one are dropped.
const LOG_CUTOFF: f64 = 45.0;
const MAX_ORDER: usize = 600;

fn unit_phase_eighths(k: usize) -> Complex64 {
    Complex64::from_polar(1.0, PI * (k % 16) as f64 / 8.0)
}

/// 𝒫(0, β) = ½ Σₙ (−1)ⁿ β²ⁿ/(2n)! Γ((2n+1)/4) e^{iπ(2n+1)/8}.
///
/// Fails with a convergence error when the largest term exceeds 10³.
pub fn pearcey_focus_sum(beta: f64) -> Result<Complex64> {
    if !beta.is_finite() {
        return Err(RotorError::domain("pearcey_focus_sum", "non-finite beta"));
    }
    if beta == 0.0 {
        return Ok(0.5 * gamma_fn(0.25)? * unit_phase_eighths(1));
    }
    let lb = beta.abs().ln();
    let log_term = |n: usize| -> f64 {
        let pw = if n == 0 { 0.0 } else { 2.0 * n as f64 * lb };
        pw - ln_gamma(2.0 * n as f64 + 1.0) + ln_gamma((2 * n + 1) as f64 / 4.0) - 2f64.ln()
    };
    let mut lmax = f64::NEG_INFINITY;
    let mut acc = NeumaierC::new();
    for n in 0..MAX_ORDER {
        let lt = log_term(n);
        lmax = lmax.max(lt);
        if lmax > MAX_TERM.ln() {
            return Err(RotorError::convergence(
                "pearcey_focus_sum",
                format!("terms exceed {MAX_TERM:e} at beta = {beta}"),
            ));
        }
        if lt < lmax - LOG_CUTOFF {
            return Ok(acc.value());
        }
        // (−1)ⁿ e^{iπ(2n+1)/8} = e^{iπ(10n+1)/8}
        acc.add(lt.exp() * unit_phase_eighths(10 * n + 1));
    }
    Err(RotorError::convergence("pearcey_focus_sum", "term budget exhausted"))
}

/// Focus amplitude of the planar rotor with the cosine kick expanded to
/// fourth order about θ₀ = 0:
/// ψ̃ = (6/P)^{1/4}/(π√(2iτ)) e^{i(θ²/2τ + P)} 𝒫(x, β).
///
/// Each focus contributes only on its own half of the circle, so θ is
/// replaced by its distance to θ = 0.
pub fn pearcey_focus_2d(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    if !theta.is_finite() {
        return Err(RotorError::domain("pearcey_focus_2d", "non-finite theta"));
    }
    let t = theta.rem_euclid(2.0 * PI);
    let t = t.min(2.0 * PI - t);
    let pp = PlanarPhaseParams::new(t, tau, p)?;
    let (x, beta) = (pp.pearcey_x(), pp.pearcey_beta());
    let pe = if x.abs() < 1e-12 {
        match pearcey_focus_sum(beta) {
            Ok(v) => v,
            Err(e) if e.is_convergence() => pearcey(0.0, beta)?,
            Err(e) => return Err(e),
        }
    } else {
        pearcey(x, beta)?
    };
    let pre = (6.0 / p).powf(0.25) / (PI * (2.0 * tau).sqrt())
        * Complex64::from_polar(1.0, t * t / (2.0 * tau) + p - PI / 4.0);
    Ok(pre * pe)
}

/// ln of the (k, m) magnitude factors of the cusp double sum, tabulated once
/// per call.
struct CuspTables {
    ln_fact: Vec<f64>,
    ln_gamma_half: Vec<f64>,
    ln_double_ratio: Vec<f64>,
}

impl CuspTables {
    fn new(n: usize) -> Self {
        let mut ln_fact = vec![0.0; 2 * n + 2];
        for i in 1..ln_fact.len() {
            ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
        }
        // ln Γ(j/2) for j ≥ 1
        let mut ln_gamma_half = vec![0.0; 2 * n + 3];
        ln_gamma_half[1] = 0.5 * PI.ln();
        ln_gamma_half[2] = 0.0;
        for j in 3..ln_gamma_half.len() {
            ln_gamma_half[j] = ln_gamma_half[j - 2] + ((j - 2) as f64 / 2.0).ln();
        }
        // ln[(2k−1)!!/(2k)!!]
        let mut ln_double_ratio = vec![0.0; n + 1];
        for k in 1..=n {
            ln_double_ratio[k] =
                ln_double_ratio[k - 1] + ((2 * k - 1) as f64).ln() - ((2 * k) as f64).ln();
        }
        Self {
            ln_fact,
            ln_gamma_half,
            ln_double_ratio,
        }
    }
}

/// S(x, β) = Σₖₘ xᵐ/m! β²ᵏ/(2k)! (2k−1)!!/(2k)!! Γ((k+m+1)/2) e^{iπ(5k+3m+3)/4}.
///
/// Fails with a convergence error when the largest term exceeds 10³.
pub fn pearcey_cusp_sum(x: f64, beta: f64) -> Result<Complex64> {
    if !(x.is_finite() && beta.is_finite()) {
        return Err(RotorError::domain("pearcey_cusp_sum", "non-finite argument"));
    }
    let n = MAX_ORDER;
    let tab = CuspTables::new(n);
    let lx = x.abs().ln();
    let lb = beta.abs().ln();
    let log_term = |k: usize, m: usize| -> f64 {
        let px = if m == 0 { 0.0 } else { m as f64 * lx };
        let pb = if k == 0 { 0.0 } else { 2.0 * k as f64 * lb };
        px - tab.ln_fact[m] + pb - tab.ln_fact[2 * k] + tab.ln_double_ratio[k]
            + tab.ln_gamma_half[k + m + 1]
    };
    let mut lmax = f64::NEG_INFINITY;
    let mut acc = NeumaierC::new();
    for k in 0..n {
        if beta == 0.0 && k > 0 {
            return Ok(acc.value());
        }
        let mut row_max = f64::NEG_INFINITY;
        for m in 0..n {
            if x == 0.0 && m > 0 {
                break;
            }
            let lt = log_term(k, m);
            row_max = row_max.max(lt);
            lmax = lmax.max(lt);
            if lmax > MAX_TERM.ln() {
                return Err(RotorError::convergence(
                    "pearcey_cusp_sum",
                    format!("terms exceed {MAX_TERM:e} at x = {x}, beta = {beta}"),
                ));
            }
            if lt < row_max - LOG_CUTOFF && lt < lmax - LOG_CUTOFF {
                break;
            }
            let sign = if x < 0.0 && m % 2 == 1 { -1.0 } else { 1.0 };
            // e^{iπ(5k+3m+3)/4} in eighths of π
            acc.add(sign * lt.exp() * unit_phase_eighths(2 * (5 * k + 3 * m + 3)));
        }
        if row_max < lmax - LOG_CUTOFF {
            return Ok(acc.value());
        }
    }
    Err(RotorError::convergence("pearcey_cusp_sum", "term budget exhausted"))
}

/// S(x, β) = (4i/π) ∫₀^π Q₁(x, −β cos φ) dφ by quadrature.
fn pearcey_cusp_integral(x: f64, beta: f64) -> Result<Complex64> {
    let r = integrate(
        |phi| match pearcey_moment(1, x, -beta * phi.cos()) {
            Ok((v, _)) => v,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        },
        0.0,
        PI,
        QuadOptions {
            abs_tol: 1e-11,
            rel_tol: 1e-10,
            max_panels: 20_000,
            initial_panels: 8,
        },
    )?;
    if !r.value.is_finite() {
        return Err(RotorError::convergence("pearcey_cusp_3d", "moment evaluation failed"));
    }
    Ok(Complex64::new(0.0, 4.0 / PI) * r.value)
}

/// Focus amplitude of the rigid rotor near the pole from the planar model
/// with L → ∞: ψ = −√(6/P)/(4√π τ) e^{i(P + θ²/2τ)} S(x, β).
pub fn pearcey_cusp_3d(theta: f64, tau: f64, p: f64) -> Result<Complex64> {
    let pp = PlanarPhaseParams::new(theta, tau, p)?;
    let (x, beta) = (pp.pearcey_x(), pp.pearcey_beta());
    let s = match pearcey_cusp_sum(x, beta) {
        Ok(v) => v,
        Err(e) if e.is_convergence() => pearcey_cusp_integral(x, beta)?,
        Err(e) => return Err(e),
    };
    let pre = -(6.0 / p).sqrt() / (4.0 * PI.sqrt() * tau);
    Ok(pre * Complex64::from_polar(1.0, p + theta * theta / (2.0 * tau)) * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_routes_agree() {
        for &(x, b) in &[(0.0, 0.0), (0.5, 1.0), (-1.5, 2.0), (1.0, -3.0), (-0.3, 0.7)] {
            let a = pearcey_cusp_sum(x, b).unwrap();
            let q = pearcey_cusp_integral(x, b).unwrap();
            assert!((a - q).norm() < 1e-9, "({x},{b}): {a} vs {q}");
        }
    }

    #[test]
    fn large_cusp_arguments_are_refused_by_the_sum() {
        assert!(pearcey_cusp_sum(0.0, 20.0).unwrap_err().is_convergence());
    }

    #[test]
    fn focus_sum_origin() {
        let v = pearcey_focus_sum(0.0).unwrap();
        assert!((v - pearcey(0.0, 0.0).unwrap()).norm() < 1e-15);
    }
}
