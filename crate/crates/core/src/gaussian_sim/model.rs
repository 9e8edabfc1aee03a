use serde::Serialize;

use super::normal::{normal_cdf, normal_quantile};
use crate::error::{Error, Result};
use crate::score_data::{AsvErrorRates, CmErrorRates};

/// Simulator controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    /// ASV target/nontarget EER, in (0, 0.5).
    pub p_e_asv: f64,
    /// CM bona fide/spoof EER, in (0, 0.5).
    pub p_e_cm: f64,
    /// Spoofing factor: 0 puts the ASV spoof mean on the nontarget mean, 1 on
    /// the target mean. Unbounded.
    pub xi: f64,
    pub n_tar: usize,
    pub n_non: usize,
    pub n_spoof: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("p_e_asv", self.p_e_asv), ("p_e_cm", self.p_e_cm)] {
            if !(p > 0.0 && p < 0.5) {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {p} must lie strictly between 0 and 0.5"
                )));
            }
        }
        if !self.xi.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "xi = {} is not finite",
                self.xi
            )));
        }
        Ok(())
    }
}

/// `mu` such that two unit-spaced Gaussians `N(+mu, 2 mu)` and `N(-mu, 2 mu)`
/// have equal error rate `p_e`: `mu = 2 [Phi^-1(1 - p_e)]^2`.
pub fn mu_from_eer(p_e: f64) -> Result<f64> {
    if !(p_e > 0.0 && p_e < 0.5) {
        return Err(Error::InvalidConfig(format!(
            "EER {p_e} must lie strictly between 0 and 0.5"
        )));
    }
    let z = -normal_quantile(p_e)?;
    Ok(2.0 * z * z)
}

/// EER implied by `mu`: `1 - Phi(sqrt(mu / 2))`.
pub fn eer_from_mu(mu: f64) -> f64 {
    1.0 - normal_cdf((mu / 2.0).sqrt())
}

/// Class-conditional Gaussians of the simulator. Targets (bona fide for the
/// CM) are `N(+mu, 2 mu)`, nontargets (spoofs for the CM) `N(-mu, 2 mu)`, and
/// ASV spoofs `N(mu (2 xi - 1), 2 mu)`. ASV and CM scores are independent,
/// so each class is a bivariate Gaussian with diagonal covariance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianParams {
    pub mu_asv: f64,
    pub mu_cm: f64,
    pub xi: f64,
}

impl GaussianParams {
    pub fn from_config(config: &SimConfig) -> Result<Self> {
        config.validate()?;
        Ok(GaussianParams {
            mu_asv: mu_from_eer(config.p_e_asv)?,
            mu_cm: mu_from_eer(config.p_e_cm)?,
            xi: config.xi,
        })
    }

    pub fn sigma_asv(&self) -> f64 {
        (2.0 * self.mu_asv).sqrt()
    }

    pub fn sigma_cm(&self) -> f64 {
        (2.0 * self.mu_cm).sqrt()
    }

    pub fn spoof_mean_asv(&self) -> f64 {
        self.mu_asv * (2.0 * self.xi - 1.0)
    }

    /// Mean vectors `[asv, cm]` of the target, nontarget and spoof classes.
    pub fn class_means(&self) -> [[f64; 2]; 3] {
        [
            [self.mu_asv, self.mu_cm],
            [-self.mu_asv, self.mu_cm],
            [self.spoof_mean_asv(), -self.mu_cm],
        ]
    }

    /// Diagonal of the shared class covariance `[2 mu_asv, 2 mu_cm]`.
    pub fn covariance_diagonal(&self) -> [f64; 2] {
        [2.0 * self.mu_asv, 2.0 * self.mu_cm]
    }

    pub fn asv_rates(&self, tau: f64) -> AsvErrorRates {
        analytic_asv_rates(self.mu_asv, self.xi, tau)
    }

    pub fn cm_rates(&self, tau: f64) -> CmErrorRates {
        analytic_cm_rates(self.mu_cm, tau)
    }
}

/// Closed-form ASV error rates of the simulator at threshold `tau`.
pub fn analytic_asv_rates(mu: f64, xi: f64, tau: f64) -> AsvErrorRates {
    let sigma = (2.0 * mu).sqrt();
    AsvErrorRates::new(
        normal_cdf((tau - mu) / sigma),
        1.0 - normal_cdf((tau + mu) / sigma),
        1.0 - normal_cdf((tau - mu * (2.0 * xi - 1.0)) / sigma),
        tau,
    )
}

/// Closed-form CM error rates of the simulator at threshold `tau`.
pub fn analytic_cm_rates(mu: f64, tau: f64) -> CmErrorRates {
    let sigma = (2.0 * mu).sqrt();
    CmErrorRates::new(
        normal_cdf((tau - mu) / sigma),
        1.0 - normal_cdf((tau + mu) / sigma),
        tau,
    )
}
