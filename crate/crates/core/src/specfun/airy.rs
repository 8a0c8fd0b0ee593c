//! Airy function Ai and its derivative on the real line.
//!
//! Three regimes: Maclaurin series near the origin, the standard asymptotic
//! expansions far out, and Taylor stepping of y'' = x y in between.

use std::f64::consts::PI;

use crate::error::{Result, RotorError};

/// Ai(0)
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// −Ai'(0)
pub const AIP0: f64 = 0.258_819_403_792_806_8;

const SERIES_LIMIT: f64 = 4.5;
const ASYMPTOTIC_LIMIT: f64 = 9.0;
const MAX_STEP: f64 = 0.5;

/// Ai(x) and Ai'(x) on −60 ≤ x ≤ 20, absolute error ≤ 1e-10.
pub fn airy(x: f64) -> Result<(f64, f64)> {
    if !(-60.0..=20.0).contains(&x) {
        return Err(RotorError::domain("airy", format!("x = {x} outside [-60, 20]")));
    }
    Ok(airy_any(x))
}

/// Unrestricted evaluator; far on the right it underflows to zero.
pub(crate) fn airy_any(x: f64) -> (f64, f64) {
    let ax = x.abs();
    if ax <= SERIES_LIMIT {
        maclaurin(x)
    } else if ax >= ASYMPTOTIC_LIMIT {
        if x > 0.0 {
            asymptotic_pos(x)
        } else {
            asymptotic_neg(-x)
        }
    } else {
        let x0 = ASYMPTOTIC_LIMIT.copysign(x);
        let start = if x > 0.0 {
            asymptotic_pos(x0)
        } else {
            asymptotic_neg(-x0)
        };
        taylor_walk(x0, start, x)
    }
}

fn maclaurin(x: f64) -> (f64, f64) {
    // Ai = c1 f − c2 g with f = Σ a_k x^{3k}, g = Σ b_k x^{3k+1}.
    let x3 = x * x * x;
    let (mut f, mut fp, mut g, mut gp) = (1.0, 0.0, x, 1.0);
    let mut a = 1.0; // a_k x^{3k}
    let mut b = x; // b_k x^{3k+1}
    for k in 1..200 {
        let kf = k as f64;
        a *= x3 / ((3.0 * kf - 1.0) * (3.0 * kf));
        b *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        f += a;
        g += b;
        // d/dx of a_k x^{3k} = 3k a_k x^{3k-1}; written without dividing by x.
        let da = 3.0 * kf * a_over_x(a, x, 3 * k);
        let db = (3.0 * kf + 1.0) * a_over_x(b, x, 3 * k + 1);
        fp += da;
        gp += db;
        if a.abs() < 1e-18 * f.abs().max(1.0) && b.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    (AI0 * f - AIP0 * g, AI0 * fp - AIP0 * gp)
}

fn a_over_x(term: f64, x: f64, power: usize) -> f64 {
    if x != 0.0 {
        term / x
    } else if power == 1 {
        1.0
    } else {
        0.0
    }
}

fn uv_coeffs(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0; n];
    let mut v = vec![1.0; n];
    for k in 1..n {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -u[k] * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
    }
    (u, v)
}

const N_UV: usize = 40;

fn asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = uv_coeffs(N_UV);
    let (mut su, mut sv) = (0.0, 0.0);
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..N_UV {
        let tu = u[k] * pw;
        if tu.abs() > last || tu.abs() < 1e-17 {
            break;
        }
        last = tu.abs();
        su += tu;
        sv += v[k] * pw;
        pw *= -1.0 / zeta;
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * su, -e * q * sv)
}

fn asymptotic_neg(z: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * z.powf(1.5);
    let (u, v) = uv_coeffs(N_UV);
    // even/odd sub-series with alternating signs
    let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..N_UV {
        let tu = u[k] * pw;
        if tu.abs() > last || tu.abs() < 1e-17 {
            break;
        }
        last = tu.abs();
        let tv = v[k] * pw;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * tu;
            ve += sign * tv;
        } else {
            uo += sign * tu;
            vo += sign * tv;
        }
        pw /= zeta;
    }
    let (s, c) = (zeta - PI / 4.0).sin_cos();
    let q = z.powf(0.25);
    let ai = (c * ue + s * uo) / (PI.sqrt() * q);
    let aip = q / PI.sqrt() * (s * ve - c * vo);
    (ai, aip)
}

fn taylor_walk(x0: f64, (y0, yp0): (f64, f64), target: f64) -> (f64, f64) {
    let span = target - x0;
    let steps = (span.abs() / MAX_STEP).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let (mut x, mut y, mut yp) = (x0, y0, yp0);
    for _ in 0..steps {
        // a_{k+2} = (x a_k + a_{k−1}) / ((k+2)(k+1))
        let mut a = [0.0_f64; 80];
        a[0] = y;
        a[1] = yp;
        let mut val = y + yp * h;
        let mut der = yp;
        let mut hp = h; // h^{k-1} for derivative accumulation
        for k in 0..78 {
            let prev = if k > 0 { a[k - 1] } else { 0.0 };
            a[k + 2] = (x * a[k] + prev) / ((k + 2) as f64 * (k + 1) as f64);
            let n = k + 2;
            der += n as f64 * a[n] * hp;
            hp *= h;
            let t = a[n] * hp;
            val += t;
            if t.abs() < 1e-20 * val.abs().max(1e-300) && k > 4 {
                break;
            }
        }
        x += h;
        y = val;
        yp = der;
    }
    (y, yp)
}
