//! `dkp-spectra` command-line front end.
//!
//! Settings resolve per key as: command-line flag, then config file entry,
//! then built-in default. The config file comes from `--config` or the
//! `DKP_SPECTRA_CONFIG` environment variable.

mod commands;
mod config;
mod output;
mod reference;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::dkp_yukawa::{PhysicalParams, Spectrum, HBAR_C_MEV_FM};

pub use config::ConfigFile;
pub use output::{format_sig, Cell, Table};
pub use reference::{is_suspect_entry, reference_energy, REFERENCE_SCREENING};

pub const CONFIG_ENV: &str = "DKP_SPECTRA_CONFIG";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Physics(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Physics(_) => 1,
        }
    }
}

/// Rendered command output plus whether a physics check failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

#[derive(Debug, Parser)]
#[command(name = "dkp-spectra", version, about = "Spin-0 DKP bound states in a Yukawa potential")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Closed-form energy levels for n <= n-max, J <= j-max.
    Energies,
    /// Paper-spectrum energies side by side with the tabulated reference values.
    Table2,
    /// Sampled, normalized spinor components of one level.
    Wavefunction { n: usize, j: usize },
    /// Closed forms checked against the shooting-method oracle for one level.
    Verify { n: usize, j: usize },
    /// Yukawa potential against its exponential approximation.
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Paper,
    Physical,
    Both,
}

impl BranchArg {
    pub fn spectra(self) -> Vec<Spectrum> {
        match self {
            BranchArg::Paper => vec![Spectrum::Paper],
            BranchArg::Physical => vec![Spectrum::Physical],
            BranchArg::Both => vec![Spectrum::Paper, Spectrum::Physical],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Component {
    #[value(name = "F")]
    F,
    #[value(name = "G")]
    G,
    #[value(name = "H_plus")]
    HPlus,
    #[value(name = "H_minus")]
    HMinus,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::F, Component::G, Component::HPlus, Component::HMinus];

    pub fn label(self) -> &'static str {
        match self {
            Component::F => "F",
            Component::G => "G",
            Component::HPlus => "H_plus",
            Component::HMinus => "H_minus",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Particle mass in MeV.
    #[arg(long = "mass-mev", global = true, allow_negative_numbers = true)]
    pub mass_mev: Option<f64>,
    /// Potential strength U0 in MeV fm.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub u0: Option<f64>,
    /// Screening parameter(s) in fm^-1, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub a: Option<Vec<f64>>,
    /// hbar c in MeV fm.
    #[arg(long = "hbar-c", global = true, allow_negative_numbers = true)]
    pub hbar_c: Option<f64>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    #[arg(long = "j-max", global = true)]
    pub j_max: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub branch: Option<BranchArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// key=value settings file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Pass/fail bound: relative deviation for table2, |dE|/m for verify.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Largest radius in fm for wavefunction and approx.
    #[arg(long = "r-max", global = true, allow_negative_numbers = true)]
    pub r_max: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Spinor components to print, comma separated.
    #[arg(long, global = true, value_delimiter = ',', value_enum)]
    pub components: Option<Vec<Component>>,
    /// Also solve the unapproximated Yukawa equation in verify.
    #[arg(long = "exact-oracle", global = true, num_args = 0..=1, default_missing_value = "true")]
    pub exact_oracle: Option<bool>,
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mass_mev: f64,
    pub u0_mev_fm: f64,
    pub a_inv_fm: Vec<f64>,
    pub hbar_c: f64,
    pub n_max: usize,
    pub j_max: usize,
    pub branch: BranchArg,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tolerance: f64,
    pub r_max_fm: Option<f64>,
    pub samples: usize,
    pub components: Vec<Component>,
    pub exact_oracle: bool,
}

impl RunConfig {
    pub fn resolve(options: &Options, file: &ConfigFile, command: &Command) -> Result<Self, CliError> {
        let default_a = match command {
            Command::Table2 => REFERENCE_SCREENING.to_vec(),
            _ => vec![REFERENCE_SCREENING[0]],
        };
        let default_branch = match command {
            Command::Wavefunction { .. } => BranchArg::Physical,
            Command::Verify { .. } => BranchArg::Both,
            _ => BranchArg::Paper,
        };
        let default_tolerance = match command {
            Command::Verify { .. } => 1e-6,
            _ => 1e-3,
        };
        let default_format = match command {
            Command::Verify { .. } => Format::Json,
            _ => Format::Csv,
        };
        let cfg = RunConfig {
            mass_mev: pick(options.mass_mev, file.mass_mev, 938.0),
            u0_mev_fm: pick(options.u0, file.u0_mev_fm, 67.54),
            a_inv_fm: options.a.clone().or_else(|| file.a_inv_fm.clone()).unwrap_or(default_a),
            hbar_c: pick(options.hbar_c, file.hbar_c, HBAR_C_MEV_FM),
            n_max: pick(options.n_max, file.n_max, 5),
            j_max: pick(options.j_max, file.j_max, 5),
            branch: pick(options.branch, file.branch, default_branch),
            format: pick(options.format, file.format, default_format),
            output: options.output.clone(),
            tolerance: pick(options.tolerance, file.tolerance, default_tolerance),
            r_max_fm: options.r_max,
            samples: options.samples.unwrap_or(200),
            components: options.components.clone().unwrap_or_else(|| Component::ALL.to_vec()),
            exact_oracle: options.exact_oracle.unwrap_or(true),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.a_inv_fm.is_empty() {
            return Err(CliError::Usage("--a needs at least one value".into()));
        }
        for &a in &self.a_inv_fm {
            self.physical(a).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        if let Some(r) = self.r_max_fm {
            if !(r > 0.0 && r.is_finite()) {
                return Err(CliError::Usage(format!("--r-max must be > 0, got {r}")));
            }
        }
        if self.samples < 2 {
            return Err(CliError::Usage(format!("--samples must be >= 2, got {}", self.samples)));
        }
        Ok(())
    }

    pub fn physical(&self, a_inv_fm: f64) -> crate::Result<PhysicalParams> {
        PhysicalParams::new(self.mass_mev, self.u0_mev_fm, a_inv_fm, self.hbar_c)
    }
}

fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Resolves settings and runs the command, returning the rendered output.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let path = cli.options.config.clone().or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let file = match path {
        Some(p) => ConfigFile::load(&p)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(&cli.options, &file, &cli.command)?;
    match cli.command {
        Command::Energies => commands::energies(&cfg),
        Command::Table2 => commands::table2(&cfg),
        Command::Wavefunction { n, j } => commands::wavefunction(&cfg, n, j),
        Command::Verify { n, j } => commands::verify(&cfg, n, j),
        Command::Approx => commands::approx(&cfg),
    }
}
