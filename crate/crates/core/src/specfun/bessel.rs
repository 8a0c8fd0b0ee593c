//! Cylindrical Bessel J_n of integer order and spherical Bessel j_l.
//!
//! Both use Miller's backward recurrence, which is stable in the direction of
//! decreasing order; upward recurrence blows up once the order passes x.

use crate::error::{Result, RotorError};

use super::gamma::ln_gamma;

const MAX_ORDER: i64 = 1_000_000;
const MAX_ARG: f64 = 1e4;
const RESCALE: f64 = 1e250;
const TINY_ARG: f64 = 1e-8;

fn start_order(n: usize, x: f64) -> usize {
    let m = (n as f64).max(x.abs());
    let start = (m + 50.0 + 20.0 * m.cbrt()).ceil() as usize;
    start + start % 2
}

/// J_n(x) for integer n.
pub fn bessel_j(n: i64, x: f64) -> Result<f64> {
    if n.abs() > MAX_ORDER {
        return Err(RotorError::domain("bessel_j", format!("|n| = {} > {MAX_ORDER}", n.abs())));
    }
    if !(x.abs() <= MAX_ARG) {
        return Err(RotorError::domain("bessel_j", format!("|x| = {} > {MAX_ARG}", x.abs())));
    }
    Ok(bessel_j_unchecked(n, x))
}

pub(crate) fn bessel_j_unchecked(n: i64, x: f64) -> f64 {
    let na = n.unsigned_abs() as usize;
    let flip = (n < 0 && na % 2 == 1) != (x < 0.0 && na % 2 == 1);
    let v = bessel_j_pos(na, x.abs());
    if flip {
        -v
    } else {
        v
    }
}

fn small_arg(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0 - 0.25 * x * x;
    }
    let nf = n as f64;
    let lead = (nf * (0.5 * x).ln() - ln_gamma(nf + 1.0)).exp();
    lead * (1.0 - 0.25 * x * x / (nf + 1.0))
}

fn bessel_j_pos(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < TINY_ARG {
        return small_arg(n, x);
    }
    let m = start_order(n, x);
    let two_over_x = 2.0 / x;
    let (mut jp1, mut j) = (0.0_f64, 1e-300_f64);
    let mut norm = 0.0_f64;
    let mut target = if n == m { j } else { 0.0 };
    // j holds J_k (unnormalised) as k runs from m down to 0.
    let mut k = m;
    while k > 0 {
        if k % 2 == 0 {
            norm += 2.0 * j;
        }
        let jm1 = k as f64 * two_over_x * j - jp1;
        jp1 = j;
        j = jm1;
        k -= 1;
        if k == n {
            target = j;
        }
        if j.abs() > RESCALE {
            j /= RESCALE;
            jp1 /= RESCALE;
            norm /= RESCALE;
            target /= RESCALE;
        }
    }
    norm += j;
    target / norm
}

/// J_0(x) .. J_nmax(x) from a single backward sweep.
pub fn bessel_j_seq(nmax: usize, x: f64) -> Vec<f64> {
    let xa = x.abs();
    let mut out = vec![0.0; nmax + 1];
    if xa == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if xa < TINY_ARG {
        for (n, o) in out.iter_mut().enumerate() {
            *o = small_arg(n, xa);
        }
    } else {
        let m = start_order(nmax, xa).max(nmax + 2);
        let two_over_x = 2.0 / xa;
        let (mut jp1, mut j) = (0.0_f64, 1e-300_f64);
        let mut norm = 0.0_f64;
        let mut k = m;
        while k > 0 {
            if k % 2 == 0 {
                norm += 2.0 * j;
            }
            let jm1 = k as f64 * two_over_x * j - jp1;
            jp1 = j;
            j = jm1;
            k -= 1;
            if k <= nmax {
                out[k] = j;
            }
            if j.abs() > RESCALE {
                j /= RESCALE;
                jp1 /= RESCALE;
                norm /= RESCALE;
                for o in out.iter_mut().skip(k) {
                    *o /= RESCALE;
                }
            }
        }
        norm += j;
        for o in out.iter_mut() {
            *o /= norm;
        }
    }
    if x < 0.0 {
        for (n, o) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *o = -*o;
            }
        }
    }
    out
}

/// Spherical Bessel j_l(x) for l ≥ 0, x ≥ 0.
pub fn spherical_j(l: i64, x: f64) -> Result<f64> {
    if l < 0 {
        return Err(RotorError::domain("spherical_j", format!("l = {l} < 0")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(RotorError::domain("spherical_j", format!("x = {x} must be >= 0")));
    }
    Ok(*spherical_j_seq(l as usize, x).last().expect("non-empty"))
}

fn spherical_small(l: usize, x: f64) -> f64 {
    // x^l / (2l+1)!! · Σ_k (−x²/2)^k / (k! (2l+3)(2l+5)…(2l+2k+1))
    let lf = l as f64;
    let ln_dfact = (lf + 1.0) * 2f64.ln() + ln_gamma(lf + 1.5) - 0.5 * std::f64::consts::PI.ln();
    let lead = if l == 0 {
        1.0
    } else {
        (lf * x.ln() - ln_dfact).exp()
    };
    let mut term = 1.0;
    let mut s = 1.0;
    for k in 1..6 {
        term *= -0.5 * x * x / (k as f64 * (2.0 * lf + 2.0 * k as f64 + 1.0));
        s += term;
    }
    lead * s
}

/// j_0(x) .. j_lmax(x).
pub fn spherical_j_seq(lmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; lmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < 1e-3 {
        for (l, o) in out.iter_mut().enumerate() {
            *o = spherical_small(l, x);
        }
        return out;
    }
    let m = start_order(lmax, x).max(lmax + 2);
    let (mut jp1, mut j) = (0.0_f64, 1e-300_f64);
    let mut k = m;
    let mut j1_unnorm = 0.0;
    while k > 0 {
        let jm1 = (2 * k + 1) as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        k -= 1;
        if k <= lmax {
            out[k] = j;
        }
        if k == 1 {
            j1_unnorm = j;
        }
        if j.abs() > RESCALE {
            j /= RESCALE;
            jp1 /= RESCALE;
            j1_unnorm /= RESCALE;
            for o in out.iter_mut().skip(k) {
                *o /= RESCALE;
            }
        }
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    let scale = if j0.abs() >= j1.abs() { j0 / j } else { j1 / j1_unnorm };
    for o in out.iter_mut() {
        *o *= scale;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(spherical_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(spherical_j(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn tabulated_j0_j1() {
        // J0(2.4048255576957728) = 0, J1(1) and J0(10) from standard tables.
        assert!(bessel_j(0, 2.404_825_557_695_773).unwrap().abs() < 1e-15);
        assert!((bessel_j(1, 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(0, 10.0).unwrap() + 0.245_935_764_451_348_3).abs() < 1e-15);
    }

    #[test]
    fn seq_matches_single() {
        let s = bessel_j_seq(120, 85.0);
        for n in [0usize, 1, 50, 84, 85, 100, 120] {
            let v = bessel_j(n as i64, 85.0).unwrap();
            assert!((s[n] - v).abs() <= 1e-13 * v.abs().max(1e-30), "n={n}");
        }
    }

    #[test]
    fn spherical_closed_forms() {
        for &x in &[0.5, 3.0, 17.0, 75.0] {
            let (s, c) = f64::sin_cos(x);
            let j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
            let v = spherical_j_seq(2, x);
            assert!((v[0] - s / x).abs() < 1e-15);
            assert!((v[2] - j2).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn small_argument_series_matches_recurrence() {
        // 25-digit values of √(π/2x)·J_{l+1/2}(x) at x = 1e-3
        let reference = [
            0.999_999_833_333_341_7,
            3.333_333_000_000_001_2e-4,
            6.666_666_190_476_204e-8,
            9.523_808_994_709_007e-12,
            1.058_201_010_101_011e-15,
            9.620_009_250_009_256e-20,
            7.400_007_153_340_49e-24,
        ];
        let rec = spherical_j_seq(6, 1e-3);
        for (l, r) in reference.iter().enumerate() {
            assert!((rec[l] / r - 1.0).abs() < 1e-9, "recurrence l={l}");
            assert!((spherical_small(l, 1e-3) / r - 1.0).abs() < 1e-14, "series l={l}");
        }
    }
}
