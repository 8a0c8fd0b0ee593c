//! Angular density profiles shared by the quantum, classical and thermal
//! modules.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Planar rotor, θ on the circle [0, 2π).
    Circle2D,
    /// Rigid rotor, polar angle θ in [0, π].
    Sphere3D,
}

/// Density samples on a θ grid. On the sphere `weighted` carries the
/// solid-angle weighted 2π·sinθ·|ψ|², which integrates to one over dθ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub geometry: Geometry,
    pub theta: Vec<f64>,
    pub density: Vec<f64>,
    pub weighted: Option<Vec<f64>>,
}

impl DensityProfile {
    pub fn new(geometry: Geometry, theta: Vec<f64>, density: Vec<f64>) -> Self {
        assert_eq!(theta.len(), density.len(), "column lengths differ");
        Self {
            geometry,
            theta,
            density,
            weighted: None,
        }
    }

    pub fn with_weighted(mut self, weighted: Vec<f64>) -> Self {
        assert_eq!(weighted.len(), self.theta.len(), "column lengths differ");
        self.weighted = Some(weighted);
        self
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Location and value of the largest finite density sample.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.theta
            .iter()
            .zip(&self.density)
            .filter(|(_, d)| d.is_finite())
            .fold(None, |best, (&t, &d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((t, d)),
            })
    }

    /// Trapezoid integral of the density (circle) or the weighted density
    /// (sphere) over the grid.
    pub fn trapezoid_norm(&self) -> f64 {
        let ys = match (&self.geometry, &self.weighted) {
            (Geometry::Sphere3D, Some(w)) => w,
            _ => &self.density,
        };
        self.theta
            .windows(2)
            .zip(ys.windows(2))
            .map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1]))
            .sum()
    }
}

/// Clenshaw–Curtis weights for nodes x_j = cos(jπ/n), j = 0..=n; exact for
/// polynomials of degree ≤ n on [−1, 1]. Uniform θ grids on [0, π] are such
/// nodes in x = cos θ.
pub fn clenshaw_curtis_weights(n: usize) -> Vec<f64> {
    assert!(n >= 1, "need at least two nodes");
    let nf = n as f64;
    (0..=n)
        .map(|j| {
            let c = if j == 0 || j == n { 1.0 } else { 2.0 };
            let mut s = 1.0;
            for k in 1..=n / 2 {
                let b = if 2 * k == n { 1.0 } else { 2.0 };
                let kf = k as f64;
                s -= b / (4.0 * kf * kf - 1.0)
                    * (2.0 * kf * j as f64 * std::f64::consts::PI / nf).cos();
            }
            c / nf * s
        })
        .collect()
}

/// `n` points uniformly covering `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `n` points uniformly covering the period `[0, 2π)`.
pub fn periodic_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / n as f64)
        .collect()
}

/// Mean of `f` over windows of width `width` centred on `centers`, each
/// sampled at `samples` points; windows touching an excluded zone are `None`.
pub fn box_average<F>(
    f: F,
    centers: &[f64],
    width: f64,
    samples: usize,
    excluded: &[(f64, f64)],
) -> Vec<Option<f64>>
where
    F: Fn(f64) -> f64,
{
    centers
        .iter()
        .map(|&c| {
            let (lo, hi) = (c - 0.5 * width, c + 0.5 * width);
            if excluded.iter().any(|&(a, b)| lo < b && hi > a) {
                return None;
            }
            let s: f64 = (0..samples)
                .map(|i| f(lo + width * (i as f64 + 0.5) / samples as f64))
                .sum();
            Some(s / samples as f64)
        })
        .collect()
}
