//! Zero-temperature classical ensembles: the single-kick map
//! θ = θ₀ − s·sin θ₀ (or sin 2θ₀), its inversion, and the singular
//! densities it produces.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RotorError};
use crate::profile::Geometry;
use crate::quantum2d::Coupling;

const ROOT_TOL: f64 = 1e-13;
const DEDUP_TOL: f64 = 1e-10;
/// |dθ/dθ₀| below which a root is treated as sitting on a fold.
pub const FOLD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapParams {
    /// s = P·τ
    pub s: f64,
    pub coupling: Coupling,
    pub geometry: Geometry,
}

impl MapParams {
    pub fn new(s: f64, coupling: Coupling, geometry: Geometry) -> Self {
        Self {
            s,
            coupling,
            geometry,
        }
    }

    pub fn planar(s: f64) -> Self {
        Self::new(s, Coupling::Dipole, Geometry::Circle2D)
    }

    pub fn sphere(s: f64) -> Self {
        Self::new(s, Coupling::Dipole, Geometry::Sphere3D)
    }

    /// Unfolded map g(θ₀).
    pub fn g(&self, t0: f64) -> f64 {
        match self.coupling {
            Coupling::Dipole => t0 - self.s * t0.sin(),
            Coupling::Polarization => t0 - self.s * (2.0 * t0).sin(),
        }
    }

    /// g'(θ₀) = dθ/dθ₀.
    pub fn dg(&self, t0: f64) -> f64 {
        match self.coupling {
            Coupling::Dipole => 1.0 - self.s * t0.cos(),
            Coupling::Polarization => 1.0 - 2.0 * self.s * (2.0 * t0).cos(),
        }
    }

    pub fn d2g(&self, t0: f64) -> f64 {
        match self.coupling {
            Coupling::Dipole => self.s * t0.sin(),
            Coupling::Polarization => 4.0 * self.s * (2.0 * t0).sin(),
        }
    }

    /// Zeros of g' in `[lo, hi)`, ascending.
    fn critical_points(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts = Vec::new();
        let (base, freq) = match self.coupling {
            Coupling::Dipole if self.s >= 1.0 => ((1.0 / self.s).acos(), 1.0),
            Coupling::Polarization if 2.0 * self.s >= 1.0 => ((0.5 / self.s).acos(), 2.0),
            _ => return pts,
        };
        // solutions of freq·θ₀ = ±base + 2πk
        let period = 2.0 * PI / freq;
        let kmin = ((lo - base / freq) / period).floor() as i64 - 1;
        let kmax = ((hi + base / freq) / period).ceil() as i64 + 1;
        for k in kmin..=kmax {
            for sgn in [-1.0, 1.0] {
                let t = (sgn * base + 2.0 * PI * k as f64) / freq;
                if t >= lo && t < hi {
                    pts.push(t);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        pts
    }
}

/// Which copy of the target a sphere trajectory reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// g(θ₀) ≡ θ (mod 2π), or the planar case.
    Direct,
    /// g(θ₀) ≡ −θ (mod 2π): the trajectory went over the pole (φ → φ + π).
    Reflected,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BranchSet {
    pub roots: Vec<f64>,
    /// dθ/dθ₀ = g'(θ₀) at each root.
    pub derivative: Vec<f64>,
    pub branch: Vec<Branch>,
}

impl BranchSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    fn push(&mut self, root: f64, d: f64, branch: Branch) {
        self.roots.push(root);
        self.derivative.push(d);
        self.branch.push(branch);
    }
}

/// Reduces an angle to [0, 2π).
pub fn fold_to_circle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y >= 2.0 * PI {
        0.0
    } else {
        y
    }
}

/// Reflects an angle along a meridian into [0, π].
pub fn fold_to_sphere(x: f64) -> f64 {
    let y = fold_to_circle(x);
    if y > PI {
        2.0 * PI - y
    } else {
        y
    }
}

/// θ for a rotor starting at θ₀.
pub fn map_forward(theta0: f64, params: &MapParams) -> f64 {
    let g = params.g(theta0);
    match params.geometry {
        Geometry::Circle2D => fold_to_circle(g),
        Geometry::Sphere3D => fold_to_sphere(g),
    }
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    while b - a > ROOT_TOL * (1.0 + a.abs().max(b.abs())) {
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

/// Solves g(θ₀) = target on [lo, hi], splitting at the zeros of g'.
fn solve_on(params: &MapParams, lo: f64, hi: f64, target: f64) -> Vec<f64> {
    let mut edges = vec![lo];
    edges.extend(params.critical_points(lo, hi).into_iter().filter(|&c| c > lo));
    edges.push(hi);
    let mut out: Vec<f64> = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (ga, gb) = (params.g(a) - target, params.g(b) - target);
        if ga == 0.0 {
            out.push(a);
        }
        if gb == 0.0 {
            out.push(b);
        }
        if ga * gb < 0.0 {
            out.push(bisect(|t| params.g(t) - target, a, b));
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|x, y| (*x - *y).abs() < DEDUP_TOL);
    out
}

fn image_range(params: &MapParams, lo: f64, hi: f64) -> (f64, f64) {
    let mut pts = vec![lo, hi];
    pts.extend(params.critical_points(lo, hi));
    pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(mn, mx), &t| {
        let g = params.g(t);
        (mn.min(g), mx.max(g))
    })
}

/// All initial angles θ₀ reaching `theta`.
///
/// Planar roots lie in [−π, π). Sphere roots lie in [0, π] and carry the
/// branch on which they arrive; on the poles a root at θ₀ ∈ {0, π} is listed
/// once while interior roots (a ring of trajectories) appear on both branches.
pub fn invert_map(theta: f64, params: &MapParams) -> BranchSet {
    let mut set = BranchSet::default();
    match params.geometry {
        Geometry::Circle2D => {
            let (lo, hi) = (-PI, PI);
            let (gmin, gmax) = image_range(params, lo, hi);
            let pmin = ((gmin - theta) / (2.0 * PI)).floor() as i64;
            let pmax = ((gmax - theta) / (2.0 * PI)).ceil() as i64;
            let mut roots = Vec::new();
            for p in pmin..=pmax {
                roots.extend(solve_on(params, lo, hi, theta + 2.0 * PI * p as f64));
            }
            // θ₀ = π is the same rotor as θ₀ = −π
            roots.retain(|&r| r < PI - DEDUP_TOL || (r - PI).abs() >= DEDUP_TOL && r < PI);
            roots.sort_by(f64::total_cmp);
            roots.dedup_by(|x, y| (*x - *y).abs() < DEDUP_TOL);
            for r in roots {
                set.push(r, params.dg(r), Branch::Direct);
            }
        }
        Geometry::Sphere3D => {
            let (lo, hi) = (0.0, PI);
            let (gmin, gmax) = image_range(params, lo, hi);
            let on_pole = theta.abs() < DEDUP_TOL || (theta - PI).abs() < DEDUP_TOL;
            for (branch, target) in [(Branch::Direct, theta), (Branch::Reflected, -theta)] {
                let pmin = ((gmin - target) / (2.0 * PI)).floor() as i64;
                let pmax = ((gmax - target) / (2.0 * PI)).ceil() as i64;
                for p in pmin..=pmax {
                    for r in solve_on(params, lo, hi, target + 2.0 * PI * p as f64) {
                        let axial = r < DEDUP_TOL || r > PI - DEDUP_TOL;
                        if on_pole && axial && branch == Branch::Reflected {
                            continue;
                        }
                        if set
                            .roots
                            .iter()
                            .zip(&set.branch)
                            .any(|(&q, &b)| b == branch && (q - r).abs() < DEDUP_TOL)
                        {
                            continue;
                        }
                        set.push(r, params.dg(r), branch);
                    }
                }
            }
        }
    }
    set
}

/// Kind of divergence in a classical density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Singularity {
    /// Two branches merge (rainbow, or the focus at s = 1).
    Fold,
    /// A ring of trajectories converges on a pole.
    Glory,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPoint {
    /// Density per dθ (circle) or per solid angle (sphere); +∞ on a singularity.
    pub value: f64,
    pub singular: Option<Singularity>,
}

/// Classical density of an initially uniform ensemble.
pub fn density_point(theta: f64, params: &MapParams) -> DensityPoint {
    let theta = match params.geometry {
        Geometry::Circle2D => fold_to_circle(theta),
        Geometry::Sphere3D => fold_to_sphere(theta),
    };
    if on_fold(theta, params) {
        return DensityPoint {
            value: f64::INFINITY,
            singular: Some(Singularity::Fold),
        };
    }
    let set = invert_map(theta, params);
    let mut value = 0.0;
    for (&r, &d) in set.roots.iter().zip(&set.derivative) {
        if d.abs() < FOLD_TOL {
            return DensityPoint {
                value: f64::INFINITY,
                singular: Some(Singularity::Fold),
            };
        }
        match params.geometry {
            Geometry::Circle2D => value += 1.0 / (2.0 * PI * d.abs()),
            Geometry::Sphere3D => {
                let st = theta.sin();
                let axial = r < DEDUP_TOL || r > PI - DEDUP_TOL;
                if st.abs() < DEDUP_TOL {
                    if !axial {
                        return DensityPoint {
                            value: f64::INFINITY,
                            singular: Some(Singularity::Glory),
                        };
                    }
                    // sin θ₀ / sin θ → 1/|g'| along the axis
                    value += 1.0 / (4.0 * PI * d * d);
                } else {
                    value += r.sin() / (4.0 * PI * d.abs() * st);
                }
            }
        }
    }
    DensityPoint {
        value,
        singular: None,
    }
}

/// Density value with +∞ as the singular sentinel.
pub fn density_classical(theta: f64, params: &MapParams) -> f64 {
    density_point(theta, params).value
}

fn on_fold(theta: f64, params: &MapParams) -> bool {
    folds(params).iter().any(|&(_, image, _)| {
        let d = (image - theta).abs();
        d < 1e-12 || (params.geometry == Geometry::Circle2D && (2.0 * PI - d).abs() < 1e-12)
    })
}

/// Sphere density per dθ, 2π·sinθ·f(θ) = ½ Σ sinθ₀/|g'|; finite on the poles
/// unless a focus sits there.
pub fn weighted_density_3d(theta: f64, params: &MapParams) -> f64 {
    let theta = fold_to_sphere(theta);
    if on_fold(theta, params) {
        return f64::INFINITY;
    }
    let set = invert_map(theta, params);
    let mut v = 0.0;
    for (&r, &d) in set.roots.iter().zip(&set.derivative) {
        if d.abs() < FOLD_TOL {
            return f64::INFINITY;
        }
        v += 0.5 * r.sin() / d.abs();
    }
    v
}

/// θ_r = √(s²−1) − arccos(1/s), unfolded. Values above π describe a rainbow
/// that has passed the far pole; see [`fold_to_sphere`].
pub fn rainbow_angle(s: f64) -> Result<f64> {
    if !(s >= 1.0) {
        return Err(RotorError::domain("rainbow_angle", format!("s = {s} < 1")));
    }
    Ok((s * s - 1.0).sqrt() - (1.0 / s).acos())
}

/// Angular extent of the first Airy lobe of the dipole rainbow at kick
/// strength `p` and s = Pτ: |a₁|·τ·(P sin θ̄₀/2)^{1/3}, a₁ the first zero
/// of Ai.
pub fn airy_fringe_width(p: f64, s: f64) -> f64 {
    const AI_FIRST_ZERO: f64 = 2.338_107_410_459_767;
    let sin_bar = (1.0 - 1.0 / (s * s)).max(0.0).sqrt();
    AI_FIRST_ZERO * (s / p) * (0.5 * p * sin_bar).cbrt()
}

/// Critical angles θ̄₀ ∈ [0, π] (cos θ̄₀ = 1/s, dipole) with the fold they
/// create, as (θ̄₀, folded θ_r, coefficient c) where the density behaves as
/// c·|θ − θ_r|^{−1/2} on the lit side.
pub fn folds(params: &MapParams) -> Vec<(f64, f64, f64)> {
    let (lo, hi) = match params.geometry {
        Geometry::Circle2D => (-PI, PI),
        Geometry::Sphere3D => (0.0, PI),
    };
    params
        .critical_points(lo, hi)
        .into_iter()
        .filter(|&t| t.abs() > 1e-12)
        .map(|t| {
            let curv = params.d2g(t).abs();
            let theta = map_forward(t, params);
            let base = (2.0 / curv).sqrt();
            let c = match params.geometry {
                Geometry::Circle2D => base / (2.0 * PI),
                Geometry::Sphere3D => base * t.sin() / (4.0 * PI * theta.sin()),
            };
            (t, theta, c)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GloryAngles {
    /// Root of θ = s·sin θ in [0, π); present for s ≥ 1.
    pub forward: Option<f64>,
    /// Roots of θ − s·sin θ = −π in (0, π); present for s ≥ s'_f.
    pub backward: Option<(f64, f64)>,
    /// s'_f, where the rainbow ring reaches the south pole.
    pub s_prime_f: f64,
}

/// Solves √(s²−1) − arccos(1/s) = π.
pub fn backward_threshold() -> f64 {
    bisect(|s| rainbow_angle(s).expect("s >= 1") - PI, 1.0, 10.0)
}

pub fn glory_angles(s: f64) -> GloryAngles {
    let s_prime_f = backward_threshold();
    let forward = if s > 1.0 {
        Some(bisect(|t| t - s * t.sin(), 1e-12, PI))
    } else if s == 1.0 {
        Some(0.0)
    } else {
        None
    };
    let backward = if s >= s_prime_f {
        let bar = (1.0 / s).acos();
        let f = |t: f64| t - s * t.sin() + PI;
        Some((bisect(f, 0.0, bar), bisect(f, bar, PI)))
    } else {
        None
    };
    GloryAngles {
        forward,
        backward,
        s_prime_f,
    }
}

/// τ_f = 1/P (dipole) or 1/(2P) (polarization).
pub fn focal_times(p: f64, coupling: Coupling) -> Result<f64> {
    if !(p > 0.0) {
        return Err(RotorError::domain("focal_times", format!("P = {p} must be positive")));
    }
    Ok(match coupling {
        Coupling::Dipole => 1.0 / p,
        Coupling::Polarization => 0.5 / p,
    })
}
