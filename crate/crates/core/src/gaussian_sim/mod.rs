//! Gaussian score simulator with closed-form error rates.
//!
//! Each detector is parameterized by its EER alone: the two classes are
//! `N(+mu, 2 mu)` and `N(-mu, 2 mu)` with `mu` fixed by the EER. The ASV spoof
//! class sits at `mu (2 xi - 1)` for a spoofing factor `xi`. Closed-form error
//! rates serve as the reference for the empirical pipeline.

mod analytic;
mod model;
mod normal;
mod sample;

pub use analytic::{
    analytic_min_constrained, analytic_surface, analytic_tdcf, asv_grid, cm_grid, AnalyticTdcf,
};
pub use model::{
    analytic_asv_rates, analytic_cm_rates, eer_from_mu, mu_from_eer, GaussianParams, SimConfig,
};
pub use normal::{erfc, normal_cdf, normal_pdf, normal_quantile};
pub use sample::{
    sample_asv_scores, sample_records, sample_scores, SimulatedRecords, SIM_ATTACK_ID,
};
