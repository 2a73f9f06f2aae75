use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cohosc_sim::config::{Format, ScenarioConfig};
use cohosc_sim::crossing::ordering_change;
use cohosc_sim::output::{to_path_or_stdout, write_run, write_sweep};
use cohosc_sim::presets::{toy1, toy2, Preset};
use cohosc_sim::scenario::{run_scenario, run_sweep, SweepVar};
use cohosc_sim::suite::{run_oracle_suite, SuiteOptions};
use cohosc_sim::Result;

/// Entanglement and uncertainty dynamics of two coupled, quenched oscillators.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario from a TOML config.
    Simulate {
        /// Scenario file (TOML)
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a scenario once per value of one parameter.
    Sweep {
        /// Scenario file (TOML)
        config: PathBuf,
        #[arg(long)]
        var: SweepVar,
        /// Comma-separated values, e.g. `0.6,0.9,1.1`
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        values: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the closed forms with brute-force grid numerics.
    OracleCheck {
        #[arg(long, default_value = "all")]
        preset: PresetChoice,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Minimum grid points per axis.
        #[arg(long, default_value_t = 257)]
        points: usize,
        /// Shift the closed-form ξ by this much (negative control).
        #[arg(long, hide = true)]
        corrupt_xi: Option<f64>,
    },
    /// Write the data behind one figure, one CSV or JSON file per panel.
    Figure {
        figure: Preset,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Overrides the config's output path (stdout if neither is set)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// Number of time samples
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    t_end: Option<f64>,
}

impl OutputArgs {
    fn apply(&self, cfg: &mut ScenarioConfig) -> Result<()> {
        if let Some(n) = self.samples {
            cfg.time.samples = n;
        }
        if let Some(t) = self.t_end {
            cfg.time.t_end = t;
        }
        if let Some(path) = &self.out {
            cfg.output.path = Some(path.clone());
        }
        if let Some(f) = self.format {
            cfg.output.format = f;
        }
        cfg.validate()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresetChoice {
    All,
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl PresetChoice {
    fn presets(self) -> Vec<Preset> {
        match self {
            PresetChoice::All => Preset::ALL.to_vec(),
            PresetChoice::Fig1 => vec![Preset::Fig1],
            PresetChoice::Fig2 => vec![Preset::Fig2],
            PresetChoice::Fig3 => vec![Preset::Fig3],
            PresetChoice::Fig4 => vec![Preset::Fig4],
        }
    }
}

/// Exit status when an oracle comparison fails.
const ORACLE_FAILURE: u8 = 4;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Simulate { config, out } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            out.apply(&mut cfg)?;
            let result = run_scenario(&cfg)?;
            if let Some(why) = &result.metadata.truncated {
                eprintln!("warning: run stopped early: {why}");
            }
            to_path_or_stdout(cfg.output.path.as_deref(), |w| {
                write_run(&result, cfg.output.format, w)
            })?;
        }
        Command::Sweep {
            config,
            var,
            values,
            out,
        } => {
            let mut cfg = ScenarioConfig::load(&config)?;
            out.apply(&mut cfg)?;
            let result = run_sweep(&cfg, var, &values)?;
            to_path_or_stdout(cfg.output.path.as_deref(), |w| {
                write_sweep(&result, cfg.output.format, w)
            })?;
        }
        Command::OracleCheck {
            preset,
            out,
            points,
            corrupt_xi,
        } => {
            let report = run_oracle_suite(&SuiteOptions {
                presets: preset.presets(),
                points,
                corrupt_xi,
                ..SuiteOptions::default()
            })?;
            to_path_or_stdout(out.as_deref(), |w| report.write_csv(w))?;
            let failed = report.failures().count();
            if failed > 0 {
                eprintln!("{failed} of {} checks failed", report.rows.len());
                return Ok(ORACLE_FAILURE);
            }
        }
        Command::Figure {
            figure,
            out,
            format,
            samples,
            t_end,
        } => write_figure(figure, &out, format.unwrap_or_default(), samples, t_end)?,
    }
    Ok(0)
}

fn write_figure(
    figure: Preset,
    dir: &Path,
    format: Format,
    samples: Option<usize>,
    t_end: Option<f64>,
) -> Result<()> {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    for panel in figure.panels() {
        let mut base = panel.base.clone();
        OutputArgs {
            out: None,
            format: Some(format),
            samples,
            t_end,
        }
        .apply(&mut base)?;
        let sweep = run_sweep(&base, panel.var, &panel.values)?;
        let path = dir.join(format!("{}.{ext}", panel.name));
        to_path_or_stdout(Some(&path), |w| write_sweep(&sweep, format, w))?;
        eprintln!("wrote {}", path.display());
    }
    let toy: Option<fn(f64) -> cohosc_sim::config::ModelConfig> = match figure {
        Preset::Fig1 => Some(toy1),
        Preset::Fig2 => Some(toy2),
        _ => None,
    };
    if let Some(toy) = toy {
        let models = [PI / 4.0, PI / 8.0, 0.0]
            .iter()
            .map(|&a| toy(a).normal_modes())
            .collect::<Result<Vec<_>>>()?;
        match ordering_change(&models, 1e-3, t_end.unwrap_or(cohosc_sim::presets::T_END))? {
            Some(t) => {
                eprintln!("Omega ordering of alpha = pi/4, pi/8, 0 first changes at t = {t:.4}")
            }
            None => eprintln!("Omega ordering of alpha = pi/4, pi/8, 0 never changes"),
        }
    }
    Ok(())
}
