mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ionqc::config::{Scenario, ScenarioBuilder, PRESETS};
use ionqc::report::{self, GateMethod, Report};
use ionqc::species::{lookup, registry};

use output::{emit, Failure};

#[derive(Parser)]
#[command(
    name = "ionqc",
    version,
    about = "Gate, cavity and machine estimates for trapped-ion processors"
)]
struct Cli {
    #[command(flatten)]
    inputs: Inputs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
pub struct Inputs {
    /// Start from a shipped preset
    #[arg(long, global = true, value_parser = preset_names())]
    preset: Option<String>,
    /// TOML scenario file, merged over the preset (repeatable)
    #[arg(long = "config", global = true, value_name = "FILE")]
    configs: Vec<PathBuf>,
    /// Override one field, e.g. cavity.finesse=1e6 or trap.axial_freq_khz=418kHz
    #[arg(long = "set", global = true, value_name = "PATH=VALUE")]
    sets: Vec<String>,
    /// Also write the report (or sweep table) as CSV
    #[arg(long, global = true, value_name = "FILE")]
    csv: Option<PathBuf>,
}

fn preset_names() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(PRESETS.iter().map(|(n, _)| *n))
}

#[derive(Subcommand)]
enum Command {
    /// Atomic data for a species (from the scenario, or by key)
    Species {
        key: Option<String>,
        /// List the shipped species
        #[arg(long)]
        list: bool,
    },
    /// Cavity coupling, decay and Rabi-flop figures
    Cavity,
    /// Error budget and rate for one gate scheme
    Gate { method: Method },
    /// Fault-tolerant machine layout and runtime
    Machine,
    /// Evaluate a report over a range of one parameter, as CSV
    Sweep(sweep::SweepArgs),
    /// Compare an analytic error estimate with direct integration
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
}

#[derive(Subcommand, Clone, Copy)]
pub enum Target {
    Cavity,
    Gate { method: Method },
    Machine,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Method {
    Cz,
    Lightshift,
    Ms,
    Adiabatic,
    #[value(name = "rabi_flop")]
    RabiFlop,
}

impl From<Method> for GateMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Cz => GateMethod::Cz,
            Method::Lightshift => GateMethod::Lightshift,
            Method::Ms => GateMethod::Ms,
            Method::Adiabatic => GateMethod::Adiabatic,
            Method::RabiFlop => GateMethod::RabiFlop,
        }
    }
}

#[derive(Subcommand)]
enum OracleCheck {
    /// Carrier leakage of two sideband π pulses (frequencies in units of ω_z)
    Carrier {
        /// Carrier Rabi frequency over trap frequency
        #[arg(long, default_value_t = 0.05)]
        ratio: f64,
        /// Sideband over carrier Rabi frequency
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
    },
    /// Adiabatic passage through the dark state (rates in units of Ω)
    Adiabatic {
        #[arg(long, default_value_t = 50.0)]
        t_omega: f64,
        #[arg(long, default_value_t = 10.0)]
        g_over_omega: f64,
        #[arg(long, default_value_t = 0.0)]
        kappa_over_g: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma_over_g: f64,
        /// Write the population time series to FILE
        #[arg(long, value_name = "FILE")]
        series: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        series_points: usize,
    },
    /// Scattering through the detuned excited state of a Raman pulse (rates in units of Ω)
    Raman {
        #[arg(long, default_value_t = 20.0)]
        detuning: f64,
        #[arg(long, default_value_t = 0.2)]
        gamma: f64,
        #[arg(long, default_value_t = 0.1)]
        g: f64,
    },
}

impl Inputs {
    pub fn builder(&self) -> Result<ScenarioBuilder, Failure> {
        let mut b = ScenarioBuilder::new();
        if let Some(p) = &self.preset {
            b = b.preset(p)?;
        }
        for path in &self.configs {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            b = b.text(&text, &path.display().to_string())?;
        }
        for s in &self.sets {
            b = b.set(s)?;
        }
        Ok(b)
    }

    fn scenario(&self) -> Result<Scenario, Failure> {
        Ok(self.builder()?.build()?)
    }
}

pub fn target_report(sc: &Scenario, target: Target) -> ionqc::Result<Report> {
    match target {
        Target::Cavity => report::cavity_report(sc),
        Target::Gate { method } => report::gate_report(sc, method.into()),
        Target::Machine => report::machine_report(sc),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let inputs = &cli.inputs;
    match cli.command {
        Command::Species { list: true, .. } => {
            for (key, s) in registry() {
                println!("{key:<4} {}", s.name);
            }
            Ok(())
        }
        Command::Species { key: Some(key), .. } => emit(&report::species_report(&lookup(&key)?), None, inputs),
        Command::Species { key: None, .. } => {
            let sc = inputs.scenario()?;
            emit(&report::species_report(sc.require_species()?), Some(&sc), inputs)
        }
        Command::Cavity => {
            let sc = inputs.scenario()?;
            emit(&target_report(&sc, Target::Cavity)?, Some(&sc), inputs)
        }
        Command::Gate { method } => {
            let sc = inputs.scenario()?;
            emit(&target_report(&sc, Target::Gate { method })?, Some(&sc), inputs)
        }
        Command::Machine => {
            let sc = inputs.scenario()?;
            emit(&target_report(&sc, Target::Machine)?, Some(&sc), inputs)
        }
        Command::Sweep(args) => sweep::run(&args, inputs),
        Command::Oracle { check } => {
            let r = match check {
                OracleCheck::Carrier { ratio, eta } => report::carrier_report(ratio, eta)?,
                OracleCheck::Adiabatic {
                    t_omega,
                    g_over_omega,
                    kappa_over_g,
                    gamma_over_g,
                    series,
                    series_points,
                } => {
                    if let Some(path) = series {
                        output::write_series(&path, t_omega, g_over_omega, kappa_over_g, gamma_over_g, series_points)?;
                    }
                    report::adiabatic_oracle_report(t_omega, g_over_omega, kappa_over_g, gamma_over_g)?
                }
                OracleCheck::Raman { detuning, gamma, g } => report::raman_report(detuning, gamma, g)?,
            };
            emit(&r, None, inputs)
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
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ionqc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
