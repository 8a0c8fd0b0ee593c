//! Dispatch of a validated scenario to the numerical modules.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use kicked_rotor::classical::{density_classical, weighted_density_3d, MapParams};
use kicked_rotor::profile::{linspace, Geometry};
use kicked_rotor::quantum2d::{self, Coupling, KickSpec};
use kicked_rotor::quantum3d;
use kicked_rotor::semiclassical as sc;
use kicked_rotor::squeeze::{classical_accumulative_3d, ode_invariant, run_accumulative, SqueezeTrace};
use kicked_rotor::thermal::{self, SpreadMeasure};
use kicked_rotor::{Complex64, Result as RotorResult};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Command, Method, Scenario};
use crate::error::CliError;
use crate::output::Column;

/// Columns and summary scalars; metadata is attached by the caller.
pub struct Table {
    pub columns: Vec<(String, Column)>,
    pub summary: BTreeMap<String, Value>,
}

/// Angles closer to the pole than this enter the near-pole gap.
pub const NEAR_POLE: f64 = 0.3;

fn grid(sc: &Scenario) -> Vec<f64> {
    linspace(sc.theta_min, sc.theta_max, sc.grid_points)
}

fn pointwise<F>(theta: &[f64], f: F) -> RotorResult<Vec<f64>>
where
    F: Fn(f64) -> RotorResult<Complex64> + Sync,
{
    theta.par_iter().map(|&t| f(t).map(|z| z.norm_sqr())).collect()
}

/// Density per dθ (planar) or per solid angle (sphere) from one method.
fn method_density(sc: &Scenario, method: Method, theta: &[f64]) -> RotorResult<Vec<f64>> {
    let (p, tau) = (sc.p, sc.tau);
    match (method, sc.dim) {
        (Method::Exact, 2) => {
            let kick = KickSpec {
                strength: p,
                coupling: sc.coupling,
            };
            let packet = quantum2d::free_evolve(&quantum2d::kicked_ground(kick)?, tau);
            Ok(quantum2d::density(&packet, theta)?.density)
        }
        (Method::Exact, _) => {
            let packet = quantum3d::free_evolve_3d(&kicked_3d(p, sc.coupling)?, tau);
            Ok(quantum3d::density_3d(&packet, theta)?.density)
        }
        (Method::Classical, dim) => {
            let geometry = if dim == 2 { Geometry::Circle2D } else { Geometry::Sphere3D };
            let params = MapParams::new(sc.s, sc.coupling, geometry);
            Ok(theta.par_iter().map(|&t| density_classical(t, &params)).collect())
        }
        (Method::Pearcey, 2) => pointwise(theta, |t| sc::pearcey_focus_2d(t, tau, p)),
        (Method::Pearcey, _) => pointwise(theta, |t| sc::pearcey_cusp_3d(t, tau, p)),
        (Method::Airy, _) => pointwise(theta, |t| sc::airy_rainbow_2d(t, tau, p)),
        (Method::UniformAiry, _) => pointwise(theta, |t| sc::uniform_airy_3d(t, tau, p)),
        (Method::UniformBessel, _) => pointwise(theta, |t| sc::uniform_bessel_glory(t, tau, p)),
        (Method::FordWheeler, _) => pointwise(theta, |t| sc::ford_wheeler_glory(t, tau, p)),
        (Method::Planar, _) => {
            pointwise(theta, |t| sc::planar_psi_with(t, tau, p, sc.planar_extent))
        }
    }
}

fn kicked_3d(p: f64, coupling: Coupling) -> RotorResult<quantum3d::LegendrePacket3D> {
    match coupling {
        Coupling::Dipole => quantum3d::dipole_kick_ground(p, 0),
        Coupling::Polarization => quantum3d::polarization_kick_ground(p, 0),
    }
}

fn peak(theta: &[f64], values: &[f64]) -> Option<(f64, f64)> {
    theta
        .iter()
        .zip(values)
        .filter(|(_, v)| v.is_finite())
        .fold(None, |best, (&t, &v)| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((t, v)),
        })
}

fn insert_peak(summary: &mut BTreeMap<String, Value>, theta: &[f64], values: &[f64]) {
    if let Some((t, v)) = peak(theta, values) {
        summary.insert("peak_theta".into(), json!(t));
        summary.insert("peak_value".into(), json!(v));
    }
}

/// max |a − b| / max |a| over the finite samples with θ ≤ `upto`.
pub fn max_relative_gap(theta: &[f64], a: &[f64], b: &[f64], upto: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = theta
        .iter()
        .zip(a.iter().zip(b))
        .filter(|(t, (x, y))| **t <= upto && x.is_finite() && y.is_finite())
        .map(|(_, (x, y))| (*x, *y))
        .collect();
    let scale = pts.iter().map(|(x, _)| x.abs()).fold(0.0, f64::max);
    (scale > 0.0).then(|| pts.iter().map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale)
}

fn densities(sc: &Scenario) -> Result<Table, CliError> {
    let theta = grid(sc);
    let method = sc.methods[0];
    let density = method_density(sc, method, &theta)?;
    let mut summary = BTreeMap::new();
    insert_peak(&mut summary, &theta, &density);
    if method == Method::Exact {
        let norm = match sc.dim {
            2 => quantum2d::kicked_ground(KickSpec {
                strength: sc.p,
                coupling: sc.coupling,
            })?
            .norm_sqr(),
            _ => kicked_3d(sc.p, sc.coupling)?.norm_sqr(),
        };
        summary.insert("norm".into(), json!(norm));
    }
    let mut columns = vec![("theta".to_string(), Column::Real(theta.clone()))];
    if sc.dim == 3 {
        let weighted = if method == Method::Classical {
            let params = MapParams::new(sc.s, sc.coupling, Geometry::Sphere3D);
            theta.par_iter().map(|&t| weighted_density_3d(t, &params)).collect()
        } else {
            theta.iter().zip(&density).map(|(t, d)| 2.0 * PI * t.sin() * d).collect()
        };
        columns.push(("density".into(), Column::Real(density)));
        columns.push(("weighted".into(), Column::Real(weighted)));
    } else {
        columns.push(("density".into(), Column::Real(density)));
    }
    Ok(Table { columns, summary })
}

fn compare(sc: &Scenario) -> Result<Table, CliError> {
    let theta = grid(sc);
    let values = sc
        .methods
        .iter()
        .map(|&m| method_density(sc, m, &theta))
        .collect::<RotorResult<Vec<_>>>()?;
    let mut summary = BTreeMap::new();
    insert_peak(&mut summary, &theta, &values[0]);
    if let Some(g) = max_relative_gap(&theta, &values[0], &values[1], f64::INFINITY) {
        summary.insert("max_rel_gap".into(), json!(g));
    }
    if let Some(g) = max_relative_gap(&theta, &values[0], &values[1], NEAR_POLE) {
        summary.insert("max_rel_gap_near_pole".into(), json!(g));
    }
    let mut columns = vec![("theta".to_string(), Column::Real(theta))];
    for (m, v) in sc.methods.iter().zip(values) {
        columns.push((m.name().to_string(), Column::Real(v)));
    }
    Ok(Table { columns, summary })
}

fn initial_ensemble(sc: &Scenario) -> RotorResult<thermal::ThermalEnsemble> {
    if sc.zero_temperature {
        Ok(thermal::sample_cold(sc.particles, sc.seed)?.with_kick_strength(1.0))
    } else {
        Ok(thermal::sample_ensemble(sc.particles, sc.seed)?.with_kick_strength(sc.p))
    }
}

fn thermal_run(sc: &Scenario) -> Result<Table, CliError> {
    let kicked = thermal::kick_with(&initial_ensemble(sc)?, sc.coupling);
    let ens = thermal::evolve(&kicked, sc.s / sc.p)?;
    let h = thermal::angular_histogram(&ens, sc.grid_points)?;
    let (o, a) = thermal::orientation_alignment(&ens);
    let mut summary = BTreeMap::new();
    insert_peak(&mut summary, &h.theta, &h.density);
    summary.insert("O".into(), json!(o));
    summary.insert("A".into(), json!(a));
    Ok(Table {
        columns: vec![
            ("theta".into(), Column::Real(h.theta)),
            ("density".into(), Column::Real(h.density)),
        ],
        summary,
    })
}

/// Least-squares slope of ln u against ln k over the last 90% of kicks.
pub fn decay_slope(trace: &SqueezeTrace) -> Option<f64> {
    let n = trace.records.len();
    let start = (n / 10).max(1) - 1;
    let pts: Vec<(f64, f64)> = trace.records[start..]
        .iter()
        .filter_map(|r| r.u.map(|u| ((r.k as f64).ln(), u.ln())))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

fn squeeze_run(sc: &Scenario) -> Result<Table, CliError> {
    let mut summary = BTreeMap::new();
    let k: Vec<u64> = (1..=sc.kicks as u64).collect();
    if sc.methods.is_empty() {
        let tr = run_accumulative(1.0, 1.0, sc.kicks)?;
        let last = tr.records.last().expect("kicks >= 1");
        let (u, w) = (last.u.expect("recurrence"), last.w.expect("recurrence"));
        if let Some(slope) = decay_slope(&tr) {
            summary.insert("slope".into(), json!(slope));
        }
        summary.insert("final_u".into(), json!(u));
        summary.insert("final_w".into(), json!(w));
        summary.insert("final_dtau_k".into(), json!(last.dtau * last.k as f64));
        summary.insert("invariant".into(), json!(ode_invariant(u, w)?));
        let col = |f: fn(&kicked_rotor::squeeze::SqueezeRecord) -> f64| {
            Column::Real(tr.records.iter().map(f).collect())
        };
        return Ok(Table {
            columns: vec![
                ("k".into(), Column::Integer(k)),
                ("u".into(), col(|r| r.u.unwrap_or(f64::NAN))),
                ("w".into(), col(|r| r.w.unwrap_or(f64::NAN))),
                ("dtau".into(), col(|r| r.dtau)),
            ],
            summary,
        });
    }
    let p = if sc.zero_temperature { f64::INFINITY } else { sc.p };
    let tr = classical_accumulative_3d(sc.particles, p, sc.kicks, sc.seed, sc.coupling)?;
    let spread: Vec<f64> = tr.records.iter().map(|r| r.spread.unwrap_or(f64::NAN)).collect();
    let name = match SpreadMeasure::for_coupling(sc.coupling) {
        SpreadMeasure::Orientation => "O",
        SpreadMeasure::Alignment => "A",
    };
    summary.insert("final_spread".into(), json!(spread.last().copied()));
    summary.insert(
        "strictly_decreasing".into(),
        json!(spread.windows(2).all(|w| w[1] < w[0])),
    );
    Ok(Table {
        columns: vec![
            ("k".into(), Column::Integer(k)),
            (name.into(), Column::Real(spread)),
            ("dtau".into(), Column::Real(tr.records.iter().map(|r| r.dtau).collect())),
        ],
        summary,
    })
}

/// Runs one validated scenario.
pub fn run_scenario(sc: &Scenario) -> Result<Table, CliError> {
    match sc.command {
        Command::Quantum2d | Command::Quantum3d | Command::Classical | Command::Semiclassical => {
            densities(sc)
        }
        Command::Compare => compare(sc),
        Command::Thermal => thermal_run(sc),
        Command::Squeeze => squeeze_run(sc),
    }
}
