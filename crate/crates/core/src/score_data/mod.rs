//! Labeled score files, empirical error rates and EER operating points.

mod eer;
mod parse;
mod rates;
mod record;
mod set;

pub use eer::{empirical_eer, Eer};
pub use parse::{
    parse_asv_scores, parse_cm_scores, parse_records, parse_scores, ScoreKind, ScoreSet,
};
pub use rates::{
    asv_error_counts, asv_error_rates, asv_error_sweep, candidate_thresholds, cm_error_counts,
    cm_error_rates, cm_error_sweep, AsvErrorCounts, AsvErrorRates, CmErrorCounts, CmErrorRates,
    Rate,
};
pub use record::{ScoreRecord, TrialClass};
pub use set::{AsvScoreSet, CmScoreSet};
