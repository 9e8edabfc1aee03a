//! Point evaluation of the tandem cost at fixed operating points.

use serde::Serialize;

use super::cost_model::CostModel;
use crate::error::{Error, Result};
use crate::score_data::{AsvErrorRates, CmErrorRates};

/// Probabilities of the four costly tandem outcomes, assuming independent
/// ASV and CM errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TandemErrorProbs {
    /// CM passes a target, ASV misses it.
    pub p_a: f64,
    /// CM passes a nontarget, ASV accepts it.
    pub p_b: f64,
    /// Both CM and ASV accept a spoof.
    pub p_c: f64,
    /// CM rejects a target (ASV never sees it).
    pub p_d: f64,
}

impl TandemErrorProbs {
    pub fn new(asv: &AsvErrorRates, cm: &CmErrorRates) -> Self {
        let pass = 1.0 - cm.p_miss;
        let probs = TandemErrorProbs {
            p_a: pass * asv.p_miss,
            p_b: pass * asv.p_fa,
            p_c: cm.p_fa * asv.p_fa_spoof,
            p_d: cm.p_miss,
        };
        debug_assert!(probs.p_a <= 1.0 - probs.p_d + f64::EPSILON);
        probs
    }
}

pub fn tandem_error_probs(asv: &AsvErrorRates, cm: &CmErrorRates) -> TandemErrorProbs {
    TandemErrorProbs::new(asv, cm)
}

/// Raw unconstrained t-DCF:
/// `C_miss pi_tar (P_a + P_d) + C_fa pi_non P_b + C_fa,spoof pi_spoof P_c`.
pub fn tdcf_unconstrained(model: &CostModel, asv: &AsvErrorRates, cm: &CmErrorRates) -> f64 {
    let p = TandemErrorProbs::new(asv, cm);
    model.c_miss() * model.pi_tar() * (p.p_a + p.p_d)
        + model.c_fa() * model.pi_non() * p.p_b
        + model.c_fa_spoof() * model.pi_spoof() * p.p_c
}

/// Cost of the better of the accept-all and reject-all tandem systems.
pub fn default_cost_unconstrained(model: &CostModel) -> Result<f64> {
    let default = model.accept_all_cost().min(model.beta());
    if default > 0.0 {
        Ok(default)
    } else {
        Err(Error::DegenerateCost(default))
    }
}

/// Coefficients of the ASV-constrained t-DCF
/// `C0 + C1 P_miss^cm + C2 P_fa^cm` at a fixed ASV operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TdcfCoefficients {
    /// ASV floor: the cost with a perfect CM.
    pub c0: f64,
    /// Weight of CM misses; negative when the ASV alone would do worse than
    /// rejecting everyone.
    pub c1: f64,
    /// Weight of CM false alarms.
    pub c2: f64,
    pub asv: AsvErrorRates,
}

impl TdcfCoefficients {
    pub fn new(model: &CostModel, asv: &AsvErrorRates) -> Self {
        let c0 =
            model.pi_tar() * model.c_miss() * asv.p_miss + model.pi_non() * model.c_fa() * asv.p_fa;
        TdcfCoefficients {
            c0,
            c1: model.pi_tar() * model.c_miss() - c0,
            c2: model.pi_spoof() * model.c_fa_spoof() * asv.p_fa_spoof,
            asv: *asv,
        }
    }

    /// Raw ASV-constrained cost at a CM operating point.
    pub fn cost(&self, cm: &CmErrorRates) -> f64 {
        self.c0 + self.c1 * cm.p_miss + self.c2 * cm.p_fa
    }

    /// `C0 + min(C1, C2)`: the better of the accept-all and reject-all CM.
    pub fn default_cost(&self) -> Result<f64> {
        let default = self.c0 + self.c1.min(self.c2);
        if default > 0.0 {
            Ok(default)
        } else {
            Err(Error::DegenerateCost(default))
        }
    }

    pub fn normalized(&self, cm: &CmErrorRates) -> Result<f64> {
        normalize(self.cost(cm), self.default_cost()?)
    }

    /// No CM operating point changes the cost.
    pub fn cm_irrelevant(&self) -> bool {
        self.c1 == 0.0 && self.c2 == 0.0
    }
}

pub fn coefficients(model: &CostModel, asv: &AsvErrorRates) -> TdcfCoefficients {
    TdcfCoefficients::new(model, asv)
}

pub fn tdcf_constrained(coeffs: &TdcfCoefficients, cm: &CmErrorRates) -> f64 {
    coeffs.cost(cm)
}

pub fn default_cost_constrained(coeffs: &TdcfCoefficients) -> Result<f64> {
    coeffs.default_cost()
}

/// `raw / default`. Values above 1 mean the system is worse than the
/// default one (badly calibrated).
pub fn normalize(raw: f64, default: f64) -> Result<f64> {
    if default > 0.0 {
        Ok(raw / default)
    } else {
        Err(Error::DegenerateCost(default))
    }
}

/// NIST detection cost `C_miss pi_tar P_miss + C_fa (1 - pi_tar) P_fa`.
/// Only defined for models without a spoof prior.
pub fn nist_dcf(model: &CostModel, asv: &AsvErrorRates) -> Result<f64> {
    if model.pi_spoof() != 0.0 {
        return Err(Error::SpoofPriorNotZero(model.pi_spoof()));
    }
    Ok(model.c_miss() * model.pi_tar() * asv.p_miss
        + model.c_fa() * (1.0 - model.pi_tar()) * asv.p_fa)
}
