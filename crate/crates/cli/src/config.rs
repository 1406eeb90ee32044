use std::path::PathBuf;

use clap::{Args, ValueEnum};
use entwb_core::claims::Tolerances;
use entwb_core::states::{ConstructionVariant, ExtraProjector, Normalization};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Sigma,
    Rho,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantArg {
    Printed,
    Consistent,
    /// Both extra-projector choices (construct only).
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationArg {
    Renormalized,
    PrintedWeights,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "sigma")]
    pub family: FamilyArg,
    /// Comma-separated b values for σ_b.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    pub b: Vec<f64>,
    /// Comma-separated a values for ρ_a.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    pub a: Vec<f64>,
    /// Comma-separated n values for ρ_a.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub n: Vec<usize>,
    /// Largest accepted n (local dimension 2n, total (2n)³).
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "consistent")]
    pub variant: VariantArg,
    #[arg(long, value_enum, default_value = "renormalized")]
    pub normalization: NormalizationArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol_psd: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_rank: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_member: f64,
    /// Restarts for Schmidt-rank-2 searches.
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    /// Iterations per restart for Schmidt-rank-2 searches.
    #[arg(long, default_value_t = 200)]
    pub iters: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
}

/// Validated run configuration; everything that influences numeric output.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub family: FamilyArg,
    pub b_grid: Vec<f64>,
    pub a_grid: Vec<f64>,
    pub n_list: Vec<usize>,
    pub variants: Vec<ConstructionVariant>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub restarts: usize,
    pub iters: usize,
    pub format: FormatArg,
    #[serde(skip)]
    pub out: PathBuf,
}

fn check_grid(name: &str, grid: &[f64]) -> Result<(), CliError> {
    if grid.is_empty() {
        return Err(CliError::Config(format!("--{name} grid is empty")));
    }
    if let Some(x) = grid.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        return Err(CliError::Config(format!("--{name} value {x} outside [0, 1]")));
    }
    Ok(())
}

fn check_tol(name: &str, t: f64) -> Result<(), CliError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(CliError::Config(format!("--{name} must be positive, got {t}")));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_args(command: &str, args: &RunArgs) -> Result<Self, CliError> {
        check_grid("b", &args.b)?;
        check_grid("a", &args.a)?;
        if args.n.is_empty() {
            return Err(CliError::Config("--n list is empty".into()));
        }
        if let Some(n) = args.n.iter().find(|&&n| n == 0 || n > args.n_max) {
            return Err(CliError::Config(format!("--n value {n} outside 1..={}", args.n_max)));
        }
        check_tol("tol-psd", args.tol_psd)?;
        check_tol("tol-rank", args.tol_rank)?;
        check_tol("tol-member", args.tol_member)?;
        if args.restarts == 0 || args.iters == 0 {
            return Err(CliError::Config("--restarts and --iters must be positive".into()));
        }
        let normalization = match args.normalization {
            NormalizationArg::Renormalized => Normalization::Renormalized,
            NormalizationArg::PrintedWeights => Normalization::PrintedWeights,
        };
        let extras = match args.variant {
            VariantArg::Printed => vec![ExtraProjector::Printed],
            VariantArg::Consistent => vec![ExtraProjector::Consistent],
            VariantArg::Both if command == "construct" => {
                vec![ExtraProjector::Printed, ExtraProjector::Consistent]
            }
            VariantArg::Both => return Err(CliError::Config("--variant both is only valid for construct".into())),
        };
        Ok(Self {
            command: command.into(),
            family: args.family,
            b_grid: args.b.clone(),
            a_grid: args.a.clone(),
            n_list: args.n.clone(),
            variants: extras
                .into_iter()
                .map(|e| ConstructionVariant::new(e, normalization))
                .collect(),
            seed: args.seed,
            tolerances: Tolerances {
                psd: args.tol_psd,
                rank: args.tol_rank,
                member: args.tol_member,
                ..Tolerances::default()
            },
            restarts: args.restarts,
            iters: args.iters,
            format: args.format,
            out: args.out.clone(),
        })
    }

    pub fn variant(&self) -> ConstructionVariant {
        self.variants[0]
    }

    /// SHA-256 of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Header embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunMeta {
    pub toolkit_version: String,
    pub config_hash: String,
    pub seed: u64,
    pub config: RunConfig,
}

impl RunMeta {
    pub fn new(cfg: &RunConfig) -> Self {
        Self {
            toolkit_version: env!("CARGO_PKG_VERSION").into(),
            config_hash: cfg.hash(),
            seed: cfg.seed,
            config: cfg.clone(),
        }
    }
}
