use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tdcf_core::extended;

#[derive(Debug, Parser)]
#[command(
    name = "tdcf",
    version,
    about = "Tandem detection cost function toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum t-DCF report for one ASV/CM score pair.
    Evaluate(EvaluateArgs),
    /// Normalized unconstrained t-DCF on the full threshold grid, as CSV.
    Sweep(SweepArgs),
    /// C0, C1, C2 at every ASV candidate threshold, as CSV.
    Coefficients(CoefficientsArgs),
    /// Gaussian score files with a known analytic t-DCF.
    Simulate(SimulateArgs),
    /// Dev-selected thresholds applied to evaluation scores.
    SelectThresholds(SelectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Asvspoof19,
}

#[derive(Debug, Clone, Args)]
pub struct CostArgs {
    /// Named cost model.
    #[arg(
        long,
        value_enum,
        default_value = "asvspoof19",
        conflicts_with = "cost_model"
    )]
    pub preset: Preset,
    /// Spoof prior for the preset.
    #[arg(long, default_value_t = 0.05, conflicts_with = "cost_model")]
    pub pi_spoof: f64,
    /// Cost model file with `key = value` lines for pi_tar, pi_spoof,
    /// c_miss, c_fa and c_fa_spoof.
    #[arg(long, value_name = "FILE")]
    pub cost_model: Option<PathBuf>,
}

/// How the ASV threshold is fixed before the CM threshold is optimized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Policy {
    /// ASV equal error rate point.
    Eer,
    /// Minimum of the ASV floor C0.
    MinC0,
    Fixed(f64),
    /// Joint minimum of the unconstrained t-DCF over both thresholds.
    Min,
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eer" => Ok(Policy::Eer),
            "min-c0" => Ok(Policy::MinC0),
            "min" => Ok(Policy::Min),
            _ => {
                let value = s.strip_prefix("fixed:").ok_or_else(|| {
                    format!("unknown policy `{s}` (eer, min-c0, min, fixed:<value>)")
                })?;
                extended::parse(value)
                    .map(Policy::Fixed)
                    .ok_or_else(|| format!("`{value}` is not a threshold"))
            }
        }
    }
}

impl Policy {
    pub fn name(self) -> String {
        match self {
            Policy::Eer => "eer".into(),
            Policy::MinC0 => "min-c0".into(),
            Policy::Min => "min".into(),
            Policy::Fixed(v) => format!("fixed:{}", extended::format(v)),
        }
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, value_name = "FILE")]
    pub asv: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub cm: PathBuf,
    #[command(flatten)]
    pub cost: CostArgs,
    /// eer, min-c0, min or fixed:<value>.
    #[arg(long, default_value = "eer")]
    pub policy: Policy,
    /// Add a constrained report per attack id.
    #[arg(long)]
    pub per_attack: bool,
    /// Write report.json here instead of stdout.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_name = "FILE")]
    pub asv: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub cm: PathBuf,
    #[command(flatten)]
    pub cost: CostArgs,
    /// Write surface.csv and surface.manifest.json here instead of stdout.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoefficientsArgs {
    #[arg(long, value_name = "FILE")]
    pub asv: PathBuf,
    #[command(flatten)]
    pub cost: CostArgs,
    /// One block of rows per attack id, with spoofs of that attack only.
    #[arg(long)]
    pub per_attack: bool,
    /// Write coefficients.csv and coefficients.manifest.json here instead of stdout.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// ASV equal error rate.
    #[arg(long, default_value_t = 0.01)]
    pub p_e_asv: f64,
    /// CM equal error rate.
    #[arg(long, default_value_t = 0.02)]
    pub p_e_cm: f64,
    /// Spoofing factor.
    #[arg(long, default_value_t = 0.85)]
    pub xi: f64,
    #[arg(long, default_value_t = 10_000)]
    pub n_tar: usize,
    #[arg(long, default_value_t = 10_000)]
    pub n_non: usize,
    #[arg(long, default_value_t = 10_000)]
    pub n_spoof: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub cost: CostArgs,
    /// Also write the analytic normalized unconstrained t-DCF on an
    /// N x N grid.
    #[arg(long, value_name = "N")]
    pub surface: Option<usize>,
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[arg(long, value_name = "FILE")]
    pub dev_asv: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub dev_cm: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub eval_asv: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub eval_cm: PathBuf,
    #[command(flatten)]
    pub cost: CostArgs,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies() {
        assert_eq!("eer".parse(), Ok(Policy::Eer));
        assert_eq!("min-c0".parse(), Ok(Policy::MinC0));
        assert_eq!("fixed:+inf".parse(), Ok(Policy::Fixed(f64::INFINITY)));
        assert_eq!("fixed:-0.5".parse(), Ok(Policy::Fixed(-0.5)));
        assert!("fixed:nan".parse::<Policy>().is_err());
        assert!("median".parse::<Policy>().is_err());
        assert_eq!(Policy::Fixed(f64::NEG_INFINITY).name(), "fixed:-inf");
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
