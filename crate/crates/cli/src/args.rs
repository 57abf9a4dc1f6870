use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vlevel_core::config::ParamOverrides;
use vlevel_core::figures::Figure;
use vlevel_core::response::Backend;
use vlevel_core::sweep::{ContourQuantity, CurveKind};
use vlevel_core::ParamField;

#[derive(Debug, Parser)]
#[command(name = "vlevel", version, about = "Probe response of a pumped, driven V-type atom")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One-row table of populations, coherences, χ and n_g − 1.
    #[command(allow_negative_numbers = true)]
    Steady(SteadyArgs),
    /// χ′ and χ″ against probe detuning.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Line-center n_g − 1 or χ″ over (Ω_c, r₁) with level lines.
    #[command(allow_negative_numbers = true)]
    Contour(ContourArgs),
    /// Line-center group-index curves.
    #[command(name = "groupindex", allow_negative_numbers = true)]
    GroupIndex(GroupIndexArgs),
    /// Cross-check the analytic formulas against the exact solvers.
    Validate(ValidateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Steady(_) => "steady",
            Command::Spectrum(_) => "spectrum",
            Command::Contour(_) => "contour",
            Command::GroupIndex(_) => "groupindex",
            Command::Validate(_) => "validate",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// key=value parameter file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV path; related files share its stem.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot next to the CSV.
    #[arg(long)]
    pub svg: bool,
    /// Solver for populations and χ.
    #[arg(long, default_value = "analytic")]
    pub backend: Backend,
    /// Load the parameter sets of a published figure.
    #[arg(long)]
    pub figure: Option<Figure>,
    #[command(flatten)]
    pub params: ParamFlags,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamFlags {
    #[arg(long)]
    pub gamma21: Option<f64>,
    #[arg(long)]
    pub gamma31: Option<f64>,
    #[arg(long)]
    pub r1: Option<f64>,
    #[arg(long)]
    pub r2: Option<f64>,
    #[arg(long = "omega-c")]
    pub omega_c: Option<f64>,
    #[arg(long = "omega-p")]
    pub omega_p: Option<f64>,
    #[arg(long = "delta-c")]
    pub delta_c: Option<f64>,
    #[arg(long = "delta-p")]
    pub delta_p: Option<f64>,
    #[arg(long = "chi-prefactor")]
    pub chi_prefactor: Option<f64>,
    #[arg(long = "omega-scale")]
    pub omega_scale: Option<f64>,
}

impl ParamFlags {
    pub fn overrides(&self) -> ParamOverrides {
        let mut out = ParamOverrides::new();
        let pairs = [
            (ParamField::Gamma21, self.gamma21),
            (ParamField::Gamma31, self.gamma31),
            (ParamField::R1, self.r1),
            (ParamField::R2, self.r2),
            (ParamField::OmegaC, self.omega_c),
            (ParamField::OmegaP, self.omega_p),
            (ParamField::DeltaC, self.delta_c),
            (ParamField::DeltaP, self.delta_p),
            (ParamField::ChiPrefactor, self.chi_prefactor),
            (ParamField::OmegaScale, self.omega_scale),
        ];
        for (field, value) in pairs {
            if let Some(v) = value {
                out.insert(field, v);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Args)]
pub struct SteadyArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long = "dp-min")]
    pub dp_min: Option<f64>,
    #[arg(long = "dp-max")]
    pub dp_max: Option<f64>,
    /// Number of detuning samples, endpoints included.
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    /// n_g − 1
    Ng,
    /// χ″
    Chi,
}

impl From<QuantityArg> for ContourQuantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::Ng => ContourQuantity::GroupIndexMinus1,
            QuantityArg::Chi => ContourQuantity::ChiImag,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ContourArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "ng")]
    pub quantity: QuantityArg,
    #[arg(long = "omega-c-min")]
    pub omega_c_min: Option<f64>,
    #[arg(long = "omega-c-max")]
    pub omega_c_max: Option<f64>,
    #[arg(long = "r1-min")]
    pub r1_min: Option<f64>,
    #[arg(long = "r1-max")]
    pub r1_max: Option<f64>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Against r₁, one curve per Ω_c.
    R1,
    /// Against Ω_c, one curve per r₁.
    OmegaC,
    /// Against r₁ with the zero-gain r₂ at every point.
    R1ZeroGain,
}

impl From<KindArg> for CurveKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::R1 => CurveKind::R1Sweep,
            KindArg::OmegaC => CurveKind::OmegaCSweep,
            KindArg::R1ZeroGain => CurveKind::R1SweepWithZeroGainR2,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GroupIndexArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "r1")]
    pub kind: KindArg,
    #[arg(long = "axis-min")]
    pub axis_min: Option<f64>,
    #[arg(long = "axis-max")]
    pub axis_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Comma-separated curve parameters; defaults to the configured Ω_c (or
    /// r₁ for `--kind omega-c`).
    #[arg(long, value_delimiter = ',')]
    pub family: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    /// Seed of the random parameter grid and random states.
    #[arg(long, default_value_t = vlevel_core::validation::DEFAULT_SEED)]
    pub seed: u64,
    /// Tolerance for the linear-solve vs ODE row.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "grid-size", default_value_t = vlevel_core::validation::RANDOM_GRID_SIZE)]
    pub grid_size: usize,
}
