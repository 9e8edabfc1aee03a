//! Tandem detection cost function: cost model, the unconstrained and
//! ASV-constrained forms, normalization and minimum-cost searches.

mod cost_model;
mod report;
mod search;
mod tandem;

pub use cost_model::CostModel;
pub use report::{TdcfFlag, TdcfReport, Variant};
pub use search::{
    actual_tdcf, coefficient_curves, compare_threshold_policies, evaluate_constrained,
    evaluate_unconstrained, min_tdcf_constrained, min_tdcf_unconstrained, select_asv_threshold,
    select_cm_threshold, tdcf_surface, CoefficientRow, ConstrainedMin, JointMin, PolicyColumn,
    TdcfSurface, ThresholdComparison,
};
pub use tandem::{
    coefficients, default_cost_constrained, default_cost_unconstrained, nist_dcf, normalize,
    tandem_error_probs, tdcf_constrained, tdcf_unconstrained, TandemErrorProbs, TdcfCoefficients,
};
