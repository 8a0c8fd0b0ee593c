//! Scenario configuration shared by the command line, batch files and JSON
//! sidecars.

use std::f64::consts::PI;
use std::path::PathBuf;

use kicked_rotor::quantum2d::Coupling;
use kicked_rotor::semiclassical::{quartic_rainbow, PLANAR_EXTENT};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Quantum2d,
    Quantum3d,
    Classical,
    Thermal,
    Semiclassical,
    Squeeze,
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Quantum2d => "quantum2d",
            Command::Quantum3d => "quantum3d",
            Command::Classical => "classical",
            Command::Thermal => "thermal",
            Command::Semiclassical => "semiclassical",
            Command::Squeeze => "squeeze",
            Command::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exact,
    Pearcey,
    Airy,
    UniformAiry,
    UniformBessel,
    FordWheeler,
    Planar,
    Classical,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Pearcey => "pearcey",
            Method::Airy => "airy",
            Method::UniformAiry => "uniform-airy",
            Method::UniformBessel => "uniform-bessel",
            Method::FordWheeler => "ford-wheeler",
            Method::Planar => "planar",
            Method::Classical => "classical",
        }
    }

    fn supports(self, dim: u8) -> bool {
        match self {
            Method::Exact | Method::Pearcey | Method::Classical => true,
            Method::Airy => dim == 2,
            Method::UniformAiry | Method::UniformBessel | Method::FordWheeler | Method::Planar => {
                dim == 3
            }
        }
    }

    fn is_semiclassical(self) -> bool {
        !matches!(self, Method::Exact | Method::Classical)
    }

    /// Fold methods diverge beyond the caustic unless s exceeds 1.
    fn needs_fold(self) -> bool {
        matches!(
            self,
            Method::Airy | Method::UniformAiry | Method::UniformBessel | Method::FordWheeler
        )
    }
}

fn default_grid() -> usize {
    400
}
fn default_particles() -> usize {
    100_000
}
fn default_kicks() -> usize {
    1
}
fn default_coupling() -> Coupling {
    Coupling::Dipole
}

/// One scenario as written on the command line or in a batch file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub command: Command,
    /// Kick strength P, or P' for thermal ensembles.
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    /// s = Pτ, or P't' for thermal ensembles; takes precedence over tau.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default = "default_coupling")]
    pub coupling: Coupling,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub method: Vec<Method>,
    /// 2 for the planar rotor, 3 for the rigid rotor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u8>,
    #[serde(default = "default_grid")]
    pub grid_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_max: Option<f64>,
    #[serde(default = "default_particles")]
    pub particles: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_kicks")]
    pub kicks: usize,
    /// Start thermal ensembles at rest (P' = ∞); times are then P't'.
    #[serde(default)]
    pub zero_temperature: bool,
    /// Upper limit L of the planar-model integral.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planar_extent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            p: None,
            tau: None,
            s: None,
            coupling: Coupling::Dipole,
            method: Vec::new(),
            dim: None,
            grid_points: default_grid(),
            theta_min: None,
            theta_max: None,
            particles: default_particles(),
            seed: 0,
            kicks: default_kicks(),
            zero_temperature: false,
            planar_extent: None,
            output_path: None,
        }
    }

    pub fn from_json(line: &str) -> Result<Self, CliError> {
        serde_json::from_str(line).map_err(|e| CliError::config("config", e.to_string()))
    }
}

/// A validated scenario with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub command: Command,
    pub p: f64,
    pub s: f64,
    pub tau: f64,
    pub coupling: Coupling,
    pub methods: Vec<Method>,
    pub dim: u8,
    pub grid_points: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    pub particles: usize,
    pub seed: u64,
    pub kicks: usize,
    pub zero_temperature: bool,
    pub planar_extent: f64,
}

impl Scenario {
    /// Configuration that reproduces this scenario, for the sidecar.
    pub fn echo(&self, output_path: Option<PathBuf>) -> ScenarioConfig {
        let mut c = ScenarioConfig::new(self.command);
        c.coupling = self.coupling;
        c.method = self.methods.clone();
        c.output_path = output_path;
        match self.command {
            Command::Squeeze if self.methods.is_empty() => {
                c.kicks = self.kicks;
            }
            Command::Squeeze | Command::Thermal => {
                c.p = (!self.zero_temperature).then_some(self.p);
                c.zero_temperature = self.zero_temperature;
                c.particles = self.particles;
                c.seed = self.seed;
                c.kicks = self.kicks;
                if self.command == Command::Thermal {
                    c.s = Some(self.s);
                    c.grid_points = self.grid_points;
                }
            }
            _ => {
                c.p = Some(self.p);
                c.s = Some(self.s);
                c.dim = Some(self.dim);
                c.grid_points = self.grid_points;
                c.theta_min = Some(self.theta_min);
                c.theta_max = Some(self.theta_max);
                if self.methods.contains(&Method::Planar) {
                    c.planar_extent = Some(self.planar_extent);
                }
            }
        }
        c
    }
}

fn positive(field: &'static str, v: Option<f64>) -> Result<f64, CliError> {
    match v {
        None => Err(CliError::config(field, "required for this command")),
        Some(x) if x > 0.0 && x.is_finite() => Ok(x),
        Some(x) => Err(CliError::config(field, format!("{x} must be positive and finite"))),
    }
}

fn allowed_methods(cfg: &ScenarioConfig) -> Result<Vec<Method>, CliError> {
    let m = &cfg.method;
    let bad = |why: &str| Err(CliError::config("method", why.to_string()));
    match cfg.command {
        Command::Quantum2d | Command::Quantum3d => match m.as_slice() {
            [] | [Method::Exact] => Ok(vec![Method::Exact]),
            _ => bad("only `exact` is available"),
        },
        Command::Classical => match m.as_slice() {
            [] | [Method::Classical] => Ok(vec![Method::Classical]),
            _ => bad("only `classical` is available"),
        },
        Command::Thermal => match m.as_slice() {
            [] => Ok(Vec::new()),
            _ => bad("thermal takes no method"),
        },
        Command::Squeeze => match m.as_slice() {
            [] => Ok(Vec::new()),
            [Method::Classical] => Ok(vec![Method::Classical]),
            _ => bad("squeeze takes no method, or `classical` for the Monte Carlo driver"),
        },
        Command::Semiclassical => match m.as_slice() {
            [x] if x.is_semiclassical() => Ok(vec![*x]),
            _ => bad("exactly one approximation is required"),
        },
        Command::Compare => {
            if m.len() < 2 {
                return bad("at least two methods are required");
            }
            if (1..m.len()).any(|i| m[..i].contains(&m[i])) {
                return bad("methods repeat");
            }
            Ok(m.clone())
        }
    }
}

fn resolve_dim(cfg: &ScenarioConfig, methods: &[Method]) -> Result<u8, CliError> {
    let fixed = match cfg.command {
        Command::Quantum2d => Some(2),
        Command::Quantum3d | Command::Thermal | Command::Squeeze => Some(3),
        _ => None,
    };
    let dim = match (fixed, cfg.dim) {
        (Some(f), Some(d)) if f != d => {
            return Err(CliError::config("dim", format!("{} is {f}-dimensional", cfg.command.name())))
        }
        (Some(f), _) => f,
        (None, Some(d)) => d,
        (None, None) => {
            if methods.iter().any(|m| !m.supports(2)) {
                3
            } else {
                2
            }
        }
    };
    if dim != 2 && dim != 3 {
        return Err(CliError::config("dim", format!("{dim} must be 2 or 3")));
    }
    if let Some(m) = methods.iter().find(|m| !m.supports(dim)) {
        return Err(CliError::config("method", format!("`{}` has no {dim}D form", m.name())));
    }
    Ok(dim)
}

/// Checks a configuration and fills in its defaults.
pub fn validate(cfg: &ScenarioConfig) -> Result<Scenario, CliError> {
    let methods = allowed_methods(cfg)?;
    let dim = resolve_dim(cfg, &methods)?;
    let monte_carlo = matches!(cfg.command, Command::Thermal)
        || (cfg.command == Command::Squeeze && !methods.is_empty());
    let recurrence = cfg.command == Command::Squeeze && methods.is_empty();

    let p = if recurrence || (monte_carlo && cfg.zero_temperature) {
        1.0
    } else if cfg.command == Command::Classical {
        cfg.p.map_or(Ok(1.0), |_| positive("P", cfg.p))?
    } else {
        positive("P", cfg.p)?
    };
    let s = if recurrence || cfg.command == Command::Squeeze {
        0.0
    } else {
        match (cfg.s, cfg.tau) {
            (Some(_), _) => positive("s", cfg.s)?,
            (None, Some(_)) => p * positive("tau", cfg.tau)?,
            (None, None) => return Err(CliError::config("s", "s or tau is required")),
        }
    };
    if let (Some(s_given), Some(tau)) = (cfg.s, cfg.tau) {
        if (p * tau - s_given).abs() > 1e-12 * s_given.abs() {
            return Err(CliError::config("tau", format!("tau = {tau} disagrees with s = {s_given}")));
        }
    }
    let planar_extent = match cfg.planar_extent {
        None => PLANAR_EXTENT,
        Some(_) => positive("planar_extent", cfg.planar_extent)?,
    };
    if cfg.grid_points < 2 {
        return Err(CliError::config("grid_points", format!("{} must be at least 2", cfg.grid_points)));
    }
    if monte_carlo && cfg.particles == 0 {
        return Err(CliError::config("particles", "must be at least 1"));
    }
    if cfg.command == Command::Squeeze && cfg.kicks == 0 {
        return Err(CliError::config("kicks", "must be at least 1"));
    }

    let upper = if dim == 2 { 2.0 * PI } else { PI };
    let theta_min = cfg.theta_min.unwrap_or_else(|| {
        if methods.contains(&Method::UniformAiry) {
            PI / cfg.grid_points as f64
        } else {
            0.0
        }
    });
    let merge = methods
        .contains(&Method::UniformBessel)
        .then(|| quartic_rainbow(s))
        .flatten();
    let theta_max = cfg
        .theta_max
        .unwrap_or_else(|| merge.map_or(PI, |m| (0.8 * m).min(PI)));
    if !(theta_min >= 0.0 && theta_min < upper) {
        return Err(CliError::config("theta_min", format!("{theta_min} outside [0, {upper})")));
    }
    let closed = dim == 3;
    if !(theta_max > theta_min && (theta_max < upper || (closed && theta_max == upper))) {
        let end = if closed { ']' } else { ')' };
        return Err(CliError::config(
            "theta_max",
            format!("{theta_max} must lie in ({theta_min}, {upper}{end}"),
        ));
    }
    if cfg.coupling != Coupling::Dipole && methods.iter().any(|m| m.is_semiclassical()) {
        return Err(CliError::config("coupling", "approximations are built for the dipole kick"));
    }
    if methods.iter().any(|m| m.needs_fold()) && s <= 1.0 {
        return Err(CliError::config("s", format!("{s} must exceed 1 for fold approximations")));
    }
    if methods.contains(&Method::UniformAiry) && theta_min <= 0.0 {
        return Err(CliError::config("theta_min", "uniform-airy needs theta_min > 0"));
    }
    if let Some(m) = merge {
        if theta_max >= m {
            return Err(CliError::config(
                "theta_max",
                format!("uniform-bessel branches merge at {m:.6}"),
            ));
        }
    }
    Ok(Scenario {
        command: cfg.command,
        p,
        s,
        tau: if p > 0.0 { s / p } else { 0.0 },
        coupling: cfg.coupling,
        methods,
        dim,
        grid_points: cfg.grid_points,
        theta_min,
        theta_max,
        particles: cfg.particles,
        seed: cfg.seed,
        kicks: cfg.kicks,
        zero_temperature: cfg.zero_temperature,
        planar_extent,
    })
}
