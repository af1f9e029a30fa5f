use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use timelocal::commands::{
    cmd_decay_rate, cmd_evolve, cmd_figures, cmd_nonuniqueness, cmd_spectrum, cmd_xi, Outcome,
};
use timelocal::{Error, OutputFormat, Overrides, RunConfig, ScenarioKind};
use timelocal_core::scenarios::FigureId;
use timelocal_core::Window;

/// Time-local master equations for a two-level atom in a cavity.
#[derive(Parser)]
#[command(name = "timelocal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    /// Write the density-matrix trajectory.
    Evolve,
    /// Write the extracted decay rate with singular points flagged.
    DecayRate,
    /// Write the power spectrum of c_e and a peak report.
    Spectrum,
    /// Report the diabaticity of the coupling switch.
    Xi,
    /// Check that one decay-rate series drives two different evolutions.
    Nonuniqueness,
    /// Write the data behind each figure.
    Figures {
        /// fig1..fig6 or all
        #[arg(long, default_value = "all")]
        figure: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioArg {
    Resonant,
    Switched,
    Instantaneous,
}

#[derive(Clone, Copy, ValueEnum)]
enum WindowArg {
    Rectangular,
    Hann,
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<FormatArg>,
    #[arg(long, global = true)]
    scenario: Option<ScenarioArg>,
    #[arg(long, global = true)]
    window: Option<WindowArg>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    omega_r: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    omega_max: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    omega_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    k: Option<f64>,
    #[arg(long, global = true)]
    n_switch: Option<u32>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    t_end: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    step: Option<f64>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            scenario: self.scenario.map(|s| match s {
                ScenarioArg::Resonant => ScenarioKind::Resonant,
                ScenarioArg::Switched => ScenarioKind::Switched,
                ScenarioArg::Instantaneous => ScenarioKind::Instantaneous,
            }),
            omega_r: self.omega_r,
            omega_max: self.omega_max,
            omega_min: self.omega_min,
            k: self.k,
            n_switch: self.n_switch,
            t_end: self.t_end,
            step: self.step,
            window: self.window.map(|w| match w {
                WindowArg::Rectangular => Window::Rectangular,
                WindowArg::Hann => Window::Hann,
            }),
            out: self.out.clone(),
            format: self.format.map(|f| match f {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            }),
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let cfg = RunConfig::load(cli.common.config.as_deref(), &cli.common.overrides())?;
    match &cli.command {
        Command::Evolve => cmd_evolve(&cfg),
        Command::DecayRate => cmd_decay_rate(&cfg),
        Command::Spectrum => cmd_spectrum(&cfg),
        Command::Xi => cmd_xi(&cfg),
        Command::Nonuniqueness => cmd_nonuniqueness(&cfg),
        Command::Figures { figure } => {
            let id = match figure.as_str() {
                "all" => None,
                name => Some(
                    name.parse::<FigureId>()
                        .map_err(|e| Error::Config(e.to_string()))?,
                ),
            };
            cmd_figures(&cfg, id)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            // a closed stdout (e.g. piped into head) is not an error
            let mut out = io::stdout().lock();
            for (key, value) in &outcome.summary {
                let _ = writeln!(out, "{key} = {value}");
            }
            for path in &outcome.files {
                let _ = writeln!(out, "wrote {}", path.display());
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: tolerance check failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
