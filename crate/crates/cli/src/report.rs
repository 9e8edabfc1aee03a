//! JSON report documents.

use serde::Serialize;
use tdcf_core::score_data::Eer;
use tdcf_core::{
    AsvErrorRates, AsvScoreSet, CmErrorRates, CmScoreSet, TdcfCoefficients, TdcfFlag, TdcfReport,
    Variant,
};

use crate::manifest::{CostModelDoc, RunManifest};

fn ext<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    tdcf_core::extended::serialize(x, s)
}

#[derive(Debug, Serialize)]
pub struct EvaluateReport {
    pub manifest: RunManifest,
    pub cost_model: CostModelDoc,
    pub asv_operating_point: AsvOperatingPoint,
    pub cm_operating_point: CmErrorRates,
    pub coefficients: Option<Coefficients>,
    pub tdcf: TdcfDoc,
    pub flags: Vec<TdcfFlag>,
    pub references: References,
    pub eer: EerPair,
    pub trials: TrialCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_attack: Option<Vec<AttackReport>>,
}

#[derive(Debug, Serialize)]
pub struct AsvOperatingPoint {
    pub policy: String,
    #[serde(flatten)]
    pub rates: AsvErrorRates,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Coefficients {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl From<&TdcfCoefficients> for Coefficients {
    fn from(c: &TdcfCoefficients) -> Self {
        Coefficients {
            c0: c.c0,
            c1: c.c1,
            c2: c.c2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TdcfDoc {
    pub variant: Variant,
    pub raw: f64,
    pub default: f64,
    pub normalized: f64,
    pub min_normalized: f64,
    #[serde(serialize_with = "ext")]
    pub tau_asv: f64,
    #[serde(serialize_with = "ext")]
    pub tau_cm: f64,
    pub argmin: Argmin,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Argmin {
    #[serde(serialize_with = "ext")]
    pub tau_asv: f64,
    #[serde(serialize_with = "ext")]
    pub tau_cm: f64,
}

impl From<&TdcfReport> for TdcfDoc {
    fn from(r: &TdcfReport) -> Self {
        TdcfDoc {
            variant: r.variant,
            raw: r.raw,
            default: r.default,
            normalized: r.normalized,
            min_normalized: r.min_normalized,
            tau_asv: r.tau_asv,
            tau_cm: r.tau_cm,
            argmin: Argmin {
                tau_asv: r.argmin_tau_asv,
                tau_cm: r.argmin_tau_cm,
            },
        }
    }
}

/// Reference costs drawn next to the t-DCF: the ASV floor (a perfect CM)
/// and the default CM (accept-all or reject-all, whichever is cheaper).
#[derive(Debug, Serialize)]
pub struct References {
    pub asv_floor: Reference,
    pub default_cm: Reference,
}

#[derive(Debug, Serialize)]
pub struct Reference {
    pub raw: f64,
    pub normalized: f64,
}

impl References {
    pub fn new(report: &TdcfReport) -> Self {
        let c0 = report.coefficients.map_or(0.0, |c| c.c0);
        References {
            asv_floor: Reference {
                raw: c0,
                normalized: c0 / report.default,
            },
            default_cm: Reference {
                raw: report.default,
                normalized: 1.0,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EerPair {
    pub asv: Eer,
    pub cm: Eer,
}

#[derive(Debug, Serialize)]
pub struct TrialCounts {
    pub asv_target: usize,
    pub asv_nontarget: usize,
    pub asv_spoof: usize,
    pub cm_bonafide: usize,
    pub cm_spoof: usize,
}

impl TrialCounts {
    pub fn new(asv: &AsvScoreSet, cm: &CmScoreSet) -> Self {
        TrialCounts {
            asv_target: asv.n_target(),
            asv_nontarget: asv.n_nontarget(),
            asv_spoof: asv.n_spoof(),
            cm_bonafide: cm.n_bonafide(),
            cm_spoof: cm.n_spoof(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AttackReport {
    pub attack_id: String,
    pub p_fa_spoof: f64,
    pub coefficients: Option<Coefficients>,
    pub min_normalized: f64,
    #[serde(serialize_with = "ext")]
    pub tau_cm: f64,
    pub flags: Vec<TdcfFlag>,
}

#[derive(Debug, Serialize)]
pub struct SelectReport {
    pub manifest: RunManifest,
    pub cost_model: CostModelDoc,
    pub dev: DevThresholds,
    pub tdcf: TdcfDoc,
    pub coefficients: Option<Coefficients>,
    pub flags: Vec<TdcfFlag>,
    pub comparison: Vec<tdcf_core::tdcf::PolicyColumn>,
}

#[derive(Debug, Serialize)]
pub struct DevThresholds {
    #[serde(serialize_with = "ext")]
    pub tau_asv: f64,
    #[serde(serialize_with = "ext")]
    pub tau_cm: f64,
}

/// Manifest document written next to CSV and score outputs.
#[derive(Debug, Serialize)]
pub struct ManifestDoc<T: Serialize> {
    pub manifest: RunManifest,
    #[serde(flatten)]
    pub details: T,
}
