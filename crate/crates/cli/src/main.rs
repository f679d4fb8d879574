use clap::{Args, Parser, Subcommand};

use mbep_cli::config::{self, Overrides, RunConfig};
use mbep_cli::{
    cmd_fidelities, cmd_graph_curve, cmd_graph_thresholds, cmd_mbqc_check, cmd_thresholds,
    cmd_verify, deliver, EXIT_BAD_CONFIG,
};

/// Workbench for measurement-based entanglement purification under local
/// noise: closed-form protocol maps, a dense verification oracle, noise
/// thresholds, and reachable fidelities.
#[derive(Parser)]
#[command(name = "mbep", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Plain-text key=value config file; command-line flags win.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    /// Protocols to run (deutsch, bennett, code-513); repeat or
    /// comma-separate.
    #[arg(long, value_delimiter = ',')]
    protocol: Option<Vec<String>>,

    /// Concatenation depths; defaults depend on the protocol.
    #[arg(long, value_delimiter = ',')]
    depth: Option<Vec<usize>>,

    /// Noise grid as 1−p values ("0.01,0.03" or "1%,3%").
    #[arg(long, value_delimiter = ',', value_parser = parse_noise)]
    noise_grid: Option<Vec<f64>>,

    /// Output format.
    #[arg(long, value_parser = parse_format)]
    format: Option<config::OutputFormat>,

    /// Seed for the randomized verification suites.
    #[arg(long)]
    seed: Option<u64>,

    /// Noise convention at super-round interfaces.
    #[arg(long, value_parser = parse_convention)]
    convention: Option<mbep_core::analysis::NoiseConvention>,

    /// Worker threads for grid fan-out (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,

    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,

    /// Override the threshold bisection tolerance.
    #[arg(long)]
    bisection_tol: Option<f64>,

    /// Override the fixed-point convergence tolerance.
    #[arg(long)]
    convergence_tol: Option<f64>,

    /// Override the iteration round cap.
    #[arg(long)]
    max_rounds: Option<usize>,
}

fn parse_noise(s: &str) -> Result<f64, String> {
    config::parse_noise_value(s)
}

fn parse_format(s: &str) -> Result<config::OutputFormat, String> {
    s.parse()
}

fn parse_convention(s: &str) -> Result<mbep_core::analysis::NoiseConvention, String> {
    s.parse().map_err(|e: mbep_core::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Resource-noise thresholds 1−p per protocol and concatenation depth.
    Thresholds {
        #[command(flatten)]
        common: Common,
    },
    /// Reachable fixed-point fidelities over the noise grid.
    Fidelities {
        #[command(flatten)]
        common: Common,
    },
    /// Run the randomized verification suites (dense-oracle identities).
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Run the measurement-based invariant suite.
    MbqcCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Graph-state threshold conversions, or exact fidelity curves with
    /// --curve.
    Graph {
        #[command(flatten)]
        common: Common,
        /// Emit a fidelity curve for this graph shape (line|ring|star).
        #[arg(long)]
        curve: Option<String>,
        /// Vertex count for --curve.
        #[arg(long, default_value_t = 10)]
        size: usize,
        /// Number of p samples for --curve.
        #[arg(long, default_value_t = 51)]
        points: usize,
    },
}

fn build_config(common: &Common) -> anyhow::Result<RunConfig> {
    let file = match &common.config {
        Some(path) => Some(config::parse_config_file(path)?),
        None => None,
    };
    let flags = Overrides {
        protocols: common.protocol.clone(),
        depths: common.depth.clone(),
        noise_grid: common.noise_grid.clone(),
        format: common.format,
        seed: common.seed,
        convention: common.convention,
        jobs: common.jobs,
        out: common.out.clone(),
        bisection_tol: common.bisection_tol,
        convergence_tol: common.convergence_tol,
        max_rounds: common.max_rounds,
    };
    Ok(config::merge(file, flags))
}

fn main() {
    let cli = Cli::parse();
    let result = (|| -> anyhow::Result<i32> {
        let (common, outcome) = match &cli.command {
            Command::Thresholds { common } => {
                let config = build_config(common)?;
                (config.clone(), cmd_thresholds(&config)?)
            }
            Command::Fidelities { common } => {
                let config = build_config(common)?;
                (config.clone(), cmd_fidelities(&config)?)
            }
            Command::Verify { common } => {
                let config = build_config(common)?;
                (config.clone(), cmd_verify(&config)?)
            }
            Command::MbqcCheck { common } => {
                let config = build_config(common)?;
                (config.clone(), cmd_mbqc_check(&config)?)
            }
            Command::Graph {
                common,
                curve,
                size,
                points,
            } => {
                let config = build_config(common)?;
                let outcome = match curve {
                    Some(shape) => cmd_graph_curve(&config, shape, *size, *points)?,
                    None => cmd_graph_thresholds(&config)?,
                };
                (config, outcome)
            }
        };
        deliver(&outcome, &common)?;
        Ok(outcome.exit_code)
    })();
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_BAD_CONFIG);
        }
    }
}
