use std::path::PathBuf;
use std::process::ExitCode;

use absep::commands::{
    self, GenerateKind, GenerateParams, StateInput, ThresholdChannel,
};
use absep::CliError;
use absep_core::thresholds::SweepMode;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Absolute separability of 2 x d quantum states.
#[derive(Parser)]
#[command(name = "absep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the state in a JSON state file.
    Check {
        file: PathBuf,
        /// Boundary band for the spectral criterion.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build a named state, write it as a state file and report on it.
    Generate(GenerateArgs),
    /// Noise thresholds of cos(x/2)|00> + sin(x/2)|11> under a local channel pair.
    Threshold(ThresholdArgs),
    /// Classify a grid of (state parameter, noise parameter) and write CSV.
    Sweep {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Points per axis.
        #[arg(long, default_value_t = 100)]
        res: usize,
        #[arg(long)]
        out: PathBuf,
        /// Evaluate cells on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Depolarizing thresholds for the reference inputs.
    Table1 {
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Extreme,
    OutsideBall,
    KappaFamily,
    Werner,
    Pure,
    Rank3Psi,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, env = "ABSEP_SEED")]
    seed: Option<u64>,
    /// Write the state file here; otherwise it is embedded in the output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use reference values for every unset parameter.
    #[arg(long)]
    defaults: bool,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    lambda4: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    /// Nonzero weights of the rank-3 seed (outside-ball, d = 2).
    #[arg(long, num_args = 3, value_names = ["P1", "P2", "P3"])]
    weights: Option<Vec<f64>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Channel {
    Dpc,
    Adc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dpc,
    Adc,
    WernerPdc,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "input")]
struct InputArgs {
    /// State angle in radians.
    #[arg(long)]
    x: Option<f64>,
    /// Entanglement entropy in bits.
    #[arg(long)]
    entropy: Option<f64>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, value_enum)]
    channel: Channel,
    #[command(flatten)]
    input: InputArgs,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Check { file, tol } => Ok(json(&commands::check(&file, tol)?)),
        Command::Generate(a) => {
            let kind = match a.kind {
                Kind::Extreme => GenerateKind::Extreme,
                Kind::OutsideBall => GenerateKind::OutsideBall,
                Kind::KappaFamily => GenerateKind::KappaFamily,
                Kind::Werner => GenerateKind::Werner,
                Kind::Pure => GenerateKind::Pure,
                Kind::Rank3Psi => GenerateKind::Rank3Psi,
            };
            let params = GenerateParams {
                seed: a.seed,
                defaults: a.defaults,
                d: a.d,
                kappa: a.kappa,
                lambda4: a.lambda4,
                q: a.q,
                x: a.x,
                phi: a.phi,
                weights: a.weights.map(|w| [w[0], w[1], w[2]]),
            };
            let (file, report) = commands::generate(kind, &params)?;
            match a.out {
                Some(path) => {
                    file.write(&path)?;
                    Ok(json(&report))
                }
                None => Ok(json(&serde_json::json!({ "state": file, "report": report }))),
            }
        }
        Command::Threshold(a) => {
            let channel = match a.channel {
                Channel::Dpc => ThresholdChannel::Dpc,
                Channel::Adc => ThresholdChannel::Adc,
            };
            let input = match (a.input.x, a.input.entropy) {
                (Some(x), _) => StateInput::X(x),
                (None, Some(e)) => StateInput::Entropy(e),
                (None, None) => unreachable!("clap requires one input"),
            };
            Ok(json(&commands::threshold(channel, input)?))
        }
        Command::Sweep {
            mode,
            res,
            out,
            sequential,
        } => {
            let mode = match mode {
                Mode::Dpc => SweepMode::Dpc,
                Mode::Adc => SweepMode::Adc,
                Mode::WernerPdc => SweepMode::WernerPdc,
            };
            let cells = commands::sweep(mode, res, &out, !sequential)?;
            Ok(format!("wrote {cells} cells to {}", out.display()))
        }
        Command::Table1 { json: as_json } => {
            let rows = commands::table1_rows()?;
            Ok(if as_json {
                json(&rows)
            } else {
                commands::format_table1(&rows).trim_end().to_string()
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
