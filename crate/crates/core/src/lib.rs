//! Tandem detection cost function (t-DCF) for a spoofing countermeasure (CM)
//! gating an automatic speaker verification (ASV) system.
//!
//! The crate is split into three parts:
//!
//! - [`score_data`]: score-file ingestion, empirical error rates, EER.
//! - [`tdcf`]: the cost model, unconstrained and ASV-constrained t-DCF,
//!   normalization, minimum-cost searches and dev/eval threshold selection.
//! - [`gaussian_sim`]: a Gaussian score simulator with closed-form error
//!   rates, used as an analytic reference for the empirical pipeline.

pub mod error;
pub mod extended;
pub mod gaussian_sim;
pub mod score_data;
pub mod tdcf;

pub use error::{Error, Result};
pub use gaussian_sim::{GaussianParams, SimConfig};
pub use score_data::{
    AsvErrorRates, AsvScoreSet, CmErrorRates, CmScoreSet, ScoreRecord, TrialClass,
};
pub use tdcf::{CostModel, TandemErrorProbs, TdcfCoefficients, TdcfFlag, TdcfReport, Variant};
