//! Exact quantum evolution of the axially symmetric rigid rotor (m = 0)
//! kicked from its ground state.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, RotorError};
use crate::profile::{clenshaw_curtis_weights, DensityProfile, Geometry};
use crate::quantum2d::{i_pow, truncation_order, TAIL_LIMIT};
use crate::specfun::{legendre_seq, spherical_j_seq};

/// Rigid-rotor state Σ_l c_l Y_l^0.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendrePacket3D {
    l_max: usize,
    coeffs: Vec<Complex64>,
    time: f64,
}

impl LegendrePacket3D {
    pub fn from_coeffs(coeffs: Vec<Complex64>, time: f64) -> Self {
        assert!(!coeffs.is_empty(), "need at least c_0");
        Self {
            l_max: coeffs.len() - 1,
            coeffs,
            time,
        }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// ψ(θ) = Σ c_l √((2l+1)/4π) P_l(cos θ).
    pub fn amplitude(&self, theta: f64) -> Complex64 {
        let p = legendre_seq(self.l_max, theta.cos());
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, (c, pl)) in self.coeffs.iter().zip(&p).enumerate() {
            acc += c * (((2 * l + 1) as f64 / (4.0 * PI)).sqrt() * pl);
        }
        acc
    }
}

pub fn ground_packet_3d(l_max: usize) -> LegendrePacket3D {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); l_max + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    LegendrePacket3D {
        l_max,
        coeffs,
        time: 0.0,
    }
}

fn check_strength(func: &'static str, p: f64) -> Result<()> {
    if p >= 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(RotorError::domain(func, format!("kick strength {p} must be finite and >= 0")))
    }
}

fn check_tail(coeffs: &[Complex64]) -> Result<()> {
    let tail = (1.0 - coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).abs();
    if tail > TAIL_LIMIT {
        Err(RotorError::Truncation {
            tail,
            limit: TAIL_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// exp(iP cos θ)·Y_0^0: c_l = i^l √(2l+1) j_l(P). `l_max` is raised to the
/// truncation order if smaller.
pub fn dipole_kick_ground(p: f64, l_max: usize) -> Result<LegendrePacket3D> {
    check_strength("dipole_kick_ground", p)?;
    let l_max = l_max.max(truncation_order(p));
    let j = spherical_j_seq(l_max, p);
    let coeffs: Vec<Complex64> = j
        .iter()
        .enumerate()
        .map(|(l, jl)| i_pow(l as i64) * (((2 * l + 1) as f64).sqrt() * jl))
        .collect();
    check_tail(&coeffs)?;
    Ok(LegendrePacket3D {
        l_max,
        coeffs,
        time: 0.0,
    })
}

/// Expansion coefficients d_{L,l} of P_l(2x²−1) = Σ_L d_{L,l} P_L(x),
/// for L ≤ `big_l_max` and l ≤ `big_l_max`/2.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    big_l_max: usize,
    rows: usize,
    d: Vec<f64>,
}

impl RecurrenceTable {
    pub fn big_l_max(&self) -> usize {
        self.big_l_max
    }

    /// Largest l with a complete row.
    pub fn l_max(&self) -> usize {
        self.rows - 1
    }

    pub fn get(&self, big_l: usize, l: usize) -> f64 {
        if big_l > self.big_l_max || l >= self.rows {
            0.0
        } else {
            self.d[l * (self.big_l_max + 1) + big_l]
        }
    }

    /// Row l as a slice over L.
    pub fn row(&self, l: usize) -> &[f64] {
        let w = self.big_l_max + 1;
        &self.d[l * w..(l + 1) * w]
    }
}

/// N_{L,L'} = ∫ P_L P_L' x² dx.
fn n_matrix(big_l: usize, other: usize) -> f64 {
    let l = big_l as f64;
    if other == big_l {
        let below = if big_l == 0 { 0.0 } else { l * l / (2.0 * l - 1.0) };
        2.0 / ((2.0 * l + 1.0).powi(2)) * ((l + 1.0).powi(2) / (2.0 * l + 3.0) + below)
    } else if other == big_l + 2 {
        2.0 * (l + 1.0) * (l + 2.0) / ((2.0 * l + 1.0) * (2.0 * l + 3.0) * (2.0 * l + 5.0))
    } else if big_l >= 2 && other == big_l - 2 {
        2.0 * l * (l - 1.0) / ((2.0 * l - 3.0) * (2.0 * l - 1.0) * (2.0 * l + 1.0))
    } else {
        0.0
    }
}

/// Runs the three-term recurrence in l seeded by P_0(u) = 1.
pub fn build_recurrence(big_l_max: usize) -> Result<RecurrenceTable> {
    if big_l_max < 2 || big_l_max % 2 != 0 {
        return Err(RotorError::domain(
            "build_recurrence",
            format!("L_max = {big_l_max} must be even and >= 2"),
        ));
    }
    let w = big_l_max + 1;
    let rows = big_l_max / 2 + 1;
    let mut d = vec![0.0; rows * w];
    d[0] = 1.0;
    for l in 0..rows - 1 {
        let lf = l as f64;
        let (lo, hi) = d.split_at_mut((l + 1) * w);
        let cur = &lo[l * w..];
        let prev: Option<&[f64]> = if l > 0 { Some(&lo[(l - 1) * w..l * w]) } else { None };
        let next = &mut hi[..w];
        // row l has support L ≤ 2l, so row l+1 needs L ≤ 2l+2
        for big_l in 0..=(2 * l + 2).min(big_l_max) {
            let mut s = 0.0;
            for other in [big_l.wrapping_sub(2), big_l, big_l + 2] {
                if other <= big_l_max {
                    s += cur[other] * n_matrix(big_l, other);
                }
            }
            let bl = big_l as f64;
            let mut v = (2.0 * lf + 1.0) * (2.0 * bl + 1.0) / (lf + 1.0) * s
                - (2.0 * lf + 1.0) / (lf + 1.0) * cur[big_l];
            if let Some(p) = prev {
                v -= lf / (lf + 1.0) * p[big_l];
            }
            next[big_l] = v;
        }
    }
    Ok(RecurrenceTable { big_l_max, rows, d })
}

/// Shared, lazily built table; every caller sees the identical object.
pub fn recurrence_table(big_l_max: usize) -> Result<Arc<RecurrenceTable>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<RecurrenceTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&big_l_max) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(build_recurrence(big_l_max)?);
    let mut guard = cache.lock().expect("cache lock");
    Ok(Arc::clone(guard.entry(big_l_max).or_insert(t)))
}

/// exp(iP cos² θ)·Y_0^0 expanded over even harmonics Y_{2k}^0. The returned
/// packet indexes by harmonic order, so odd entries are zero.
pub fn polarization_kick_ground(p: f64, l_max: usize) -> Result<LegendrePacket3D> {
    check_strength("polarization_kick_ground", p)?;
    if p == 0.0 {
        return Ok(ground_packet_3d(l_max));
    }
    let rows = truncation_order(0.5 * p);
    let big_l_max = (2 * rows).max(l_max + l_max % 2);
    let table = recurrence_table(big_l_max)?;
    let rows = table.l_max();
    let j = spherical_j_seq(rows, 0.5 * p);
    let global = Complex64::from_polar(1.0, 0.5 * p);
    let weights: Vec<Complex64> = (0..=rows)
        .map(|l| i_pow(l as i64) * ((2 * l + 1) as f64 * j[l]))
        .collect();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); big_l_max + 1];
    for big_l in (0..=big_l_max).step_by(2) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, w) in weights.iter().enumerate().skip(big_l / 2) {
            acc += w * table.get(big_l, l);
        }
        coeffs[big_l] = global * acc / ((2 * big_l + 1) as f64).sqrt();
    }
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(RotorError::Truncation {
            tail: (norm - 1.0).abs(),
            limit: 1e-8,
        });
    }
    Ok(LegendrePacket3D {
        l_max: big_l_max,
        coeffs,
        time: 0.0,
    })
}

/// c_l ← c_l·exp(−i l(l+1) Δτ/2).
pub fn free_evolve_3d(packet: &LegendrePacket3D, dtau: f64) -> LegendrePacket3D {
    let coeffs = packet
        .coeffs
        .iter()
        .enumerate()
        .map(|(l, c)| {
            let e = (l * (l + 1) / 2) as f64;
            c * Complex64::from_polar(1.0, -(e * dtau).rem_euclid(2.0 * PI))
        })
        .collect();
    LegendrePacket3D {
        l_max: packet.l_max,
        coeffs,
        time: packet.time + dtau,
    }
}

/// |ψ(θ)|² and 2π sinθ |ψ(θ)|² on `grid` ⊂ [0, π].
pub fn density_3d(packet: &LegendrePacket3D, grid: &[f64]) -> Result<DensityProfile> {
    if let Some(&bad) = grid.iter().find(|t| !(0.0..=PI).contains(*t)) {
        return Err(RotorError::domain("density_3d", format!("θ = {bad} outside [0, π]")));
    }
    let dens: Vec<f64> = grid
        .par_iter()
        .map(|&t| packet.amplitude(t).norm_sqr())
        .collect();
    let weighted = grid
        .iter()
        .zip(&dens)
        .map(|(t, d)| 2.0 * PI * t.sin() * d)
        .collect();
    Ok(DensityProfile::new(Geometry::Sphere3D, grid.to_vec(), dens).with_weighted(weighted))
}

/// As [`density_3d`] on a uniform [0, π] grid, requiring the weighted
/// density to integrate to the norm within 1e-8. The integral uses
/// Clenshaw–Curtis weights, exact once the grid has ≥ 4·l_max intervals.
pub fn density_3d_checked(packet: &LegendrePacket3D, grid: &[f64]) -> Result<DensityProfile> {
    let n = grid.len().saturating_sub(1);
    if n < 4 * packet.l_max.max(1) {
        return Err(RotorError::Resolution(format!(
            "{n} grid intervals < 4·l_max = {}",
            4 * packet.l_max
        )));
    }
    let h = PI / n as f64;
    if grid
        .iter()
        .enumerate()
        .any(|(i, &t)| (t - i as f64 * h).abs() > 1e-12)
    {
        return Err(RotorError::Resolution(
            "normalisation check needs a uniform grid on [0, π]".into(),
        ));
    }
    let prof = density_3d(packet, grid)?;
    let w = clenshaw_curtis_weights(n);
    let total = 2.0 * PI * w.iter().zip(&prof.density).map(|(a, b)| a * b).sum::<f64>();
    if (total - packet.norm_sqr()).abs() > 1e-8 {
        return Err(RotorError::Resolution(format!(
            "grid integral {total} differs from the norm"
        )));
    }
    Ok(prof)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows() {
        let t = build_recurrence(8).unwrap();
        // P_1(2x²−1) = (4/3) P_2 − (1/3) P_0
        assert!((t.get(0, 1) + 1.0 / 3.0).abs() < 1e-15);
        assert!((t.get(2, 1) - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(t.get(0, 0), 1.0);
        assert!(t.row(0)[1..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cache_is_shared() {
        let a = recurrence_table(40).unwrap();
        let b = recurrence_table(40).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(*a, build_recurrence(40).unwrap());
    }

    #[test]
    fn bad_table_size() {
        assert!(build_recurrence(7).is_err());
        assert!(build_recurrence(0).is_err());
    }

    #[test]
    fn zero_kick() {
        let p = dipole_kick_ground(0.0, 10).unwrap();
        assert_eq!(p.coeffs()[0], Complex64::new(1.0, 0.0));
        assert!(p.coeffs()[1..].iter().all(|c| c.norm() == 0.0));
        let q = polarization_kick_ground(0.0, 10).unwrap();
        assert_eq!(q, ground_packet_3d(10));
    }
}
