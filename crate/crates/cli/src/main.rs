use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kicked_rotor::quantum2d::Coupling;
use krotor::config::{Command, Method, ScenarioConfig};
use krotor::error::CliError;
use krotor::output::{default_output_dir, OUTPUT_DIR_ENV};

#[derive(Parser)]
#[command(name = "krotor", version, about = "Kicked planar and rigid rotor scenarios")]
struct Cli {
    /// Directory for outputs with relative or missing paths.
    #[arg(long, global = true, env = OUTPUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Exact planar rotor density after one kick.
    Quantum2d(ScenarioArgs),
    /// Exact rigid rotor density after one kick.
    Quantum3d(ScenarioArgs),
    /// Classical density of an initially uniform ensemble.
    Classical(ScenarioArgs),
    /// Histogram of a kicked thermal ensemble.
    Thermal(ScenarioArgs),
    /// One semiclassical approximation.
    Semiclassical(ScenarioArgs),
    /// Accumulative squeezing: moment recurrence, or Monte Carlo with `--method classical`.
    Squeeze(ScenarioArgs),
    /// Several methods on one grid.
    Compare(ScenarioArgs),
    /// Line-delimited JSON scenarios.
    Batch(BatchArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Kick strength P (P' for thermal ensembles).
    #[arg(long = "P")]
    p: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// s = Pτ (P't' for thermal ensembles).
    #[arg(long)]
    s: Option<f64>,
    #[arg(long, value_enum, default_value = "dipole")]
    coupling: CouplingArg,
    #[arg(long, value_enum, value_delimiter = ',')]
    method: Vec<Method>,
    #[arg(long)]
    dim: Option<u8>,
    #[arg(long = "grid", alias = "grid-points", default_value_t = 400)]
    grid_points: usize,
    #[arg(long)]
    theta_min: Option<f64>,
    #[arg(long)]
    theta_max: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    particles: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    kicks: usize,
    #[arg(long)]
    zero_temperature: bool,
    /// Upper limit of the planar-model integral.
    #[arg(long)]
    planar_extent: Option<f64>,
    /// CSV path; the sidecar takes the same name with a .json extension.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum CouplingArg {
    Dipole,
    Polarization,
}

#[derive(Args)]
struct BatchArgs {
    file: PathBuf,
    /// Index path; defaults to batch-index.json in the output directory.
    #[arg(long)]
    index: Option<PathBuf>,
}

impl ScenarioArgs {
    fn into_config(self, command: Command) -> ScenarioConfig {
        ScenarioConfig {
            command,
            p: self.p,
            tau: self.tau,
            s: self.s,
            coupling: match self.coupling {
                CouplingArg::Dipole => Coupling::Dipole,
                CouplingArg::Polarization => Coupling::Polarization,
            },
            method: self.method,
            dim: self.dim,
            grid_points: self.grid_points,
            theta_min: self.theta_min,
            theta_max: self.theta_max,
            particles: self.particles,
            seed: self.seed,
            kicks: self.kicks,
            zero_temperature: self.zero_temperature,
            planar_extent: self.planar_extent,
            output_path: self.output,
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("krotor: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dir = cli.out_dir.unwrap_or_else(default_output_dir);
    let (command, args) = match cli.command {
        Sub::Batch(b) => {
            let text = match std::fs::read_to_string(&b.file) {
                Ok(t) => t,
                Err(e) => return fail(&CliError::config("file", format!("{}: {e}", b.file.display()))),
            };
            let index = match krotor::batch(&text, &dir) {
                Ok(i) => i,
                Err(e) => return fail(&e),
            };
            let path = b.index.unwrap_or_else(|| dir.join("batch-index.json"));
            if let Err(e) = krotor::write_index(&index, &path) {
                return fail(&e);
            }
            for entry in index.scenarios.iter().filter(|e| e.exit_code != 0) {
                eprintln!(
                    "krotor: line {}: {}",
                    entry.line,
                    entry.message.as_deref().unwrap_or("failed")
                );
            }
            return ExitCode::from(index.exit_code() as u8);
        }
        Sub::Quantum2d(a) => (Command::Quantum2d, a),
        Sub::Quantum3d(a) => (Command::Quantum3d, a),
        Sub::Classical(a) => (Command::Classical, a),
        Sub::Thermal(a) => (Command::Thermal, a),
        Sub::Semiclassical(a) => (Command::Semiclassical, a),
        Sub::Squeeze(a) => (Command::Squeeze, a),
        Sub::Compare(a) => (Command::Compare, a),
    };
    match krotor::execute(&args.into_config(command), &dir) {
        Ok((path, env)) => {
            println!("{}", path.display());
            let summary = serde_json::to_string(&env.summary).expect("summary serializes");
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
