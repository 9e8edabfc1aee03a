use serde::Serialize;

use super::cost_model::CostModel;
use super::tandem::TdcfCoefficients;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Unconstrained,
    Constrained,
}

/// Diagnostics attached to a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TdcfFlag {
    /// Normalized cost above 1: worse than the default system.
    BadlyCalibrated,
    /// C1 < 0, so the constrained minimum sits at a CM threshold extreme.
    NegativeC1,
    /// C1 = C2 = 0: no CM can change the cost.
    CmIrrelevant,
    /// The ASV set has no spoof trials; SFAR was taken as 0.
    NoSpoofTrials,
    /// pi_spoof = 0 although spoof trials are present; they carry no weight.
    ZeroSpoofPrior,
}

/// Result of one t-DCF evaluation.
///
/// `raw`/`normalized` are measured at (`tau_asv`, `tau_cm`); `min_normalized`
/// is the oracle minimum on the same data, attained at the `argmin_*`
/// thresholds. For minimum-cost reports the two coincide.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TdcfReport {
    pub variant: Variant,
    pub raw: f64,
    pub default: f64,
    pub normalized: f64,
    pub min_normalized: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_asv: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_cm: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub argmin_tau_asv: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub argmin_tau_cm: f64,
    pub coefficients: Option<TdcfCoefficients>,
    pub flags: Vec<TdcfFlag>,
}

pub(crate) fn collect_flags(
    model: &CostModel,
    coeffs: &TdcfCoefficients,
    normalized: f64,
    spoof_trials_present: bool,
) -> Vec<TdcfFlag> {
    let mut flags = Vec::new();
    if normalized > 1.0 {
        flags.push(TdcfFlag::BadlyCalibrated);
    }
    if coeffs.c1 < 0.0 {
        flags.push(TdcfFlag::NegativeC1);
    }
    if coeffs.cm_irrelevant() {
        flags.push(TdcfFlag::CmIrrelevant);
    }
    if coeffs.asv.no_spoof_trials {
        flags.push(TdcfFlag::NoSpoofTrials);
    }
    if model.pi_spoof() == 0.0 && spoof_trials_present {
        flags.push(TdcfFlag::ZeroSpoofPrior);
    }
    flags
}
