//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;

/// Gauss–Legendre nodes on [-1,1] via Newton on P_n.
pub fn gl(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut d = 1.0;
        for _ in 0..60 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let step = p1 / d;
            z -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        xs.push(z);
        ws.push(2.0 / ((1.0 - z * z) * d * d));
    }
    (xs, ws)
}

/// Composite 20-point Gauss–Legendre over `panels` equal panels.
pub fn cquad<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> Complex64 {
    let (xs, ws) = gl(20);
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        for (x, w) in xs.iter().zip(&ws) {
            acc += f(c + 0.5 * h * x) * (w * 0.5 * h);
        }
    }
    acc
}

pub fn rquad<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    cquad(|x| Complex64::new(f(x), 0.0), a, b, panels).re
}

/// Pearcey integral on the contour u = s·e^{iπ/8}, s ∈ ℝ.
pub fn pearcey_rotated(x: f64, beta: f64) -> Complex64 {
    let w = Complex64::from_polar(1.0, std::f64::consts::PI / 8.0);
    let f = |s: f64| {
        let u = w * s;
        let u2 = u * u;
        (Complex64::i() * (u2 * u2 + u2 * x + u * beta)).exp() * w
    };
    cquad(f, -6.5, 6.5, 1200)
}

/// ∫₀^∞ u^k exp[i(u⁴ + x u² + y u)] du on the rotated ray.
pub fn half_moment_rotated(k: i32, x: f64, y: f64) -> Complex64 {
    let w = Complex64::from_polar(1.0, std::f64::consts::PI / 8.0);
    let f = |s: f64| {
        let u = w * s;
        let u2 = u * u;
        u.powi(k) * (Complex64::i() * (u2 * u2 + u2 * x + u * y)).exp() * w
    };
    cquad(f, 0.0, 6.5, 600)
}

/// Integer-order J via (1/π)∫₀^π cos(nt − x sin t) dt.
pub fn bessel_integral(n: i64, x: f64) -> f64 {
    let panels = 200 + (x.abs() + n.abs() as f64) as usize * 4;
    rquad(
        |t| (n as f64 * t - x * t.sin()).cos(),
        0.0,
        std::f64::consts::PI,
        panels,
    ) / std::f64::consts::PI
}

/// Real-order J_ν(x), x > 0, Schläfli integral.
pub fn bessel_real_order(nu: f64, x: f64) -> f64 {
    let pi = std::f64::consts::PI;
    let panels = 400 + (x + nu) as usize * 4;
    let a = rquad(|t| (nu * t - x * t.sin()).cos(), 0.0, pi, panels) / pi;
    let b = rquad(|t| (-x * t.sinh() - nu * t).exp(), 0.0, 12.0, 4000);
    a - (nu * pi).sin() / pi * b
}

/// Golden-section minimum of a unimodal function on [a, b].
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    while (b - a).abs() > tol {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    0.5 * (a + b)
}
