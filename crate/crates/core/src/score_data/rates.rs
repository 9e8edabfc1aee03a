//! Empirical detection error rates.
//!
//! A trial is accepted iff its score is strictly greater than the threshold,
//! so a score equal to the threshold is rejected. Rates are counted exactly
//! as `(errors, trials)` pairs and only divided when converted to
//! [`AsvErrorRates`] / [`CmErrorRates`].

use serde::Serialize;

use super::set::{AsvScoreSet, CmScoreSet};
use crate::error::{Error, Result};

/// An exact empirical rate `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rate {
    pub num: u64,
    pub den: u64,
}

impl Rate {
    pub fn new(num: u64, den: u64) -> Self {
        debug_assert!(num <= den);
        Rate { num, den }
    }

    /// `num / den`, or 0 for an empty class.
    pub fn value(self) -> f64 {
        if self.den == 0 {
            0.0
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

/// Number of sorted scores `<= tau` (rejected trials).
#[inline]
pub(crate) fn count_rejected(sorted: &[f64], tau: f64) -> u64 {
    debug_assert!(!tau.is_nan(), "threshold must not be NaN");
    sorted.partition_point(|&s| s <= tau) as u64
}

/// Number of sorted scores `> tau` (accepted trials).
#[inline]
pub(crate) fn count_accepted(sorted: &[f64], tau: f64) -> u64 {
    sorted.len() as u64 - count_rejected(sorted, tau)
}

/// ASV miss, false alarm and spoof false alarm rates at one threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsvErrorRates {
    pub p_miss: f64,
    pub p_fa: f64,
    /// Spoof false alarm rate (SFAR).
    pub p_fa_spoof: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub threshold: f64,
    /// Set when the rates came from a set without spoof trials; `p_fa_spoof`
    /// is then 0 by convention.
    pub no_spoof_trials: bool,
}

impl AsvErrorRates {
    pub fn new(p_miss: f64, p_fa: f64, p_fa_spoof: f64, threshold: f64) -> Self {
        AsvErrorRates {
            p_miss,
            p_fa,
            p_fa_spoof,
            threshold,
            no_spoof_trials: false,
        }
    }

    /// Rates of the accept-all ASV system.
    pub fn accept_all() -> Self {
        AsvErrorRates::new(0.0, 1.0, 1.0, f64::NEG_INFINITY)
    }

    /// Rates of the reject-all ASV system.
    pub fn reject_all() -> Self {
        AsvErrorRates::new(1.0, 0.0, 0.0, f64::INFINITY)
    }
}

/// CM miss (bona fide rejected) and false alarm (spoof accepted) rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CmErrorRates {
    pub p_miss: f64,
    pub p_fa: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub threshold: f64,
}

impl CmErrorRates {
    pub fn new(p_miss: f64, p_fa: f64, threshold: f64) -> Self {
        CmErrorRates {
            p_miss,
            p_fa,
            threshold,
        }
    }

    pub fn accept_all() -> Self {
        CmErrorRates::new(0.0, 1.0, f64::NEG_INFINITY)
    }

    pub fn reject_all() -> Self {
        CmErrorRates::new(1.0, 0.0, f64::INFINITY)
    }
}

/// Exact ASV error counts at one threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AsvErrorCounts {
    pub miss: Rate,
    pub fa: Rate,
    pub fa_spoof: Rate,
}

impl AsvErrorCounts {
    pub fn to_rates(self, threshold: f64) -> AsvErrorRates {
        AsvErrorRates {
            p_miss: self.miss.value(),
            p_fa: self.fa.value(),
            p_fa_spoof: self.fa_spoof.value(),
            threshold,
            no_spoof_trials: self.fa_spoof.den == 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmErrorCounts {
    pub miss: Rate,
    pub fa: Rate,
}

impl CmErrorCounts {
    pub fn to_rates(self, threshold: f64) -> CmErrorRates {
        CmErrorRates::new(self.miss.value(), self.fa.value(), threshold)
    }
}

pub fn asv_error_counts(set: &AsvScoreSet, tau: f64) -> AsvErrorCounts {
    let (tar, non, spf) = (
        set.target_scores(),
        set.nontarget_scores(),
        set.spoof_scores(),
    );
    AsvErrorCounts {
        miss: Rate::new(count_rejected(tar, tau), tar.len() as u64),
        fa: Rate::new(count_accepted(non, tau), non.len() as u64),
        fa_spoof: Rate::new(count_accepted(spf, tau), spf.len() as u64),
    }
}

pub fn asv_error_rates(set: &AsvScoreSet, tau: f64) -> AsvErrorRates {
    asv_error_counts(set, tau).to_rates(tau)
}

pub fn cm_error_counts(set: &CmScoreSet, tau: f64) -> CmErrorCounts {
    let (bona, spf) = (set.bonafide_scores(), set.spoof_scores());
    CmErrorCounts {
        miss: Rate::new(count_rejected(bona, tau), bona.len() as u64),
        fa: Rate::new(count_accepted(spf, tau), spf.len() as u64),
    }
}

pub fn cm_error_rates(set: &CmScoreSet, tau: f64) -> CmErrorRates {
    cm_error_counts(set, tau).to_rates(tau)
}

/// Midpoint `m` with `lo <= m < hi`, so that the strict decision rule
/// separates `lo` from `hi` even when the two are adjacent floats.
fn separating_midpoint(lo: f64, hi: f64) -> f64 {
    let sum = lo + hi;
    let mid = if sum.is_finite() {
        sum / 2.0
    } else {
        lo / 2.0 + hi / 2.0
    };
    if mid >= hi || mid < lo {
        lo
    } else {
        mid
    }
}

/// Thresholds realizing every empirical operating point of an ascending
/// score list: `-inf`, the midpoints between consecutive distinct scores,
/// `max + 1` and `+inf`. The result is strictly increasing.
pub fn candidate_thresholds(sorted_scores: &[f64]) -> Result<Vec<f64>> {
    let (&first, &last) = match (sorted_scores.first(), sorted_scores.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::EmptyInput),
    };
    debug_assert!(sorted_scores.windows(2).all(|w| w[0] <= w[1]));
    let mut out = Vec::with_capacity(sorted_scores.len() + 3);
    out.push(f64::NEG_INFINITY);
    let mut prev = first;
    for &s in &sorted_scores[1..] {
        if s > prev {
            out.push(separating_midpoint(prev, s));
            prev = s;
        }
    }
    out.push(last + 1.0);
    out.push(f64::INFINITY);
    Ok(out)
}

impl AsvScoreSet {
    pub fn candidate_thresholds(&self) -> Vec<f64> {
        candidate_thresholds(&self.pooled_scores()).expect("set has target trials")
    }
}

impl CmScoreSet {
    pub fn candidate_thresholds(&self) -> Vec<f64> {
        candidate_thresholds(&self.pooled_scores()).expect("set has bona fide trials")
    }
}

/// ASV rates at every candidate threshold of the set, in threshold order.
pub fn asv_error_sweep(set: &AsvScoreSet) -> Vec<AsvErrorRates> {
    set.candidate_thresholds()
        .into_iter()
        .map(|tau| asv_error_rates(set, tau))
        .collect()
}

/// CM rates at every candidate threshold of the set, in threshold order.
pub fn cm_error_sweep(set: &CmScoreSet) -> Vec<CmErrorRates> {
    set.candidate_thresholds()
        .into_iter()
        .map(|tau| cm_error_rates(set, tau))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::score_data::{ScoreRecord, TrialClass};

    fn asv(targets: &[f64], nontargets: &[f64], spoofs: &[f64]) -> AsvScoreSet {
        let mut records = Vec::new();
        for (i, &s) in targets.iter().enumerate() {
            records.push(ScoreRecord::new(format!("t{i}"), TrialClass::Target, s));
        }
        for (i, &s) in nontargets.iter().enumerate() {
            records.push(ScoreRecord::new(format!("n{i}"), TrialClass::Nontarget, s));
        }
        for (i, &s) in spoofs.iter().enumerate() {
            records.push(ScoreRecord::spoof(format!("s{i}"), s, "A01"));
        }
        AsvScoreSet::new(records).unwrap()
    }

    fn cm(bona: &[f64], spoofs: &[f64]) -> CmScoreSet {
        let mut records = Vec::new();
        for (i, &s) in bona.iter().enumerate() {
            records.push(ScoreRecord::new(format!("b{i}"), TrialClass::Bonafide, s));
        }
        for (i, &s) in spoofs.iter().enumerate() {
            records.push(ScoreRecord::spoof(format!("s{i}"), s, "A01"));
        }
        CmScoreSet::new(records).unwrap()
    }

    #[test]
    fn asv_hand_count() {
        let set = asv(&[2.0, 0.5], &[-1.0, 0.2], &[1.0]);
        let r = asv_error_rates(&set, 0.0);
        assert_eq!((r.p_miss, r.p_fa, r.p_fa_spoof), (0.0, 0.5, 1.0));
    }

    #[test]
    fn asv_infinite_thresholds() {
        let set = asv(&[2.0, 0.5], &[-1.0, 0.2], &[1.0]);
        let lo = asv_error_rates(&set, f64::NEG_INFINITY);
        assert_eq!((lo.p_miss, lo.p_fa, lo.p_fa_spoof), (0.0, 1.0, 1.0));
        let hi = asv_error_rates(&set, f64::INFINITY);
        assert_eq!((hi.p_miss, hi.p_fa, hi.p_fa_spoof), (1.0, 0.0, 0.0));
    }

    #[test]
    fn score_on_threshold_is_rejected() {
        let set = asv(&[1.0], &[0.0], &[]);
        assert_eq!(asv_error_rates(&set, 1.0).p_miss, 1.0);
    }

    #[test]
    fn spoof_free_sfar_is_flagged_zero() {
        let set = asv(&[1.0], &[0.0], &[]);
        let r = asv_error_rates(&set, f64::NEG_INFINITY);
        assert_eq!(r.p_fa_spoof, 0.0);
        assert!(r.no_spoof_trials);
    }

    #[test]
    fn cm_hand_count() {
        let set = cm(&[1.0, 3.0], &[0.0]);
        let r = cm_error_rates(&set, 0.5);
        assert_eq!((r.p_miss, r.p_fa), (0.0, 0.0));
        let r = cm_error_rates(&set, f64::INFINITY);
        assert_eq!((r.p_miss, r.p_fa), (1.0, 0.0));
    }

    #[test]
    fn cm_pooled_miss_is_mixture() {
        let set = CmScoreSet::new(vec![
            ScoreRecord::new("t", TrialClass::Target, 1.0),
            ScoreRecord::new("n", TrialClass::Nontarget, 3.0),
            ScoreRecord::spoof("s", -1.0, "A01"),
        ])
        .unwrap();
        let pooled = cm_error_rates(&set, 2.0).p_miss;
        let w = set.target_proportion();
        let tar_miss = count_rejected(set.target_scores(), 2.0) as f64 / set.n_target() as f64;
        let non_miss =
            count_rejected(set.nontarget_scores(), 2.0) as f64 / set.n_nontarget() as f64;
        assert_eq!(pooled, 0.5);
        assert_eq!(pooled, w * tar_miss + (1.0 - w) * non_miss);
    }

    #[test]
    fn candidates() {
        let inf = f64::INFINITY;
        assert_eq!(
            candidate_thresholds(&[0.0, 1.0]).unwrap(),
            vec![-inf, 0.5, 2.0, inf]
        );
        assert_eq!(
            candidate_thresholds(&[1.0, 1.0, 1.0]).unwrap(),
            vec![-inf, 2.0, inf]
        );
        assert_eq!(
            candidate_thresholds(&[-3.0]).unwrap(),
            vec![-inf, -2.0, inf]
        );
        assert_eq!(candidate_thresholds(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn candidates_separate_adjacent_floats() {
        let a = 1.0_f64;
        let b = f64::from_bits(a.to_bits() + 1);
        let c = candidate_thresholds(&[a, b]).unwrap();
        assert_eq!(c.len(), 4);
        assert!(a <= c[1] && c[1] < b);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        let set = asv(&[b], &[a], &[]);
        let r = asv_error_rates(&set, c[1]);
        assert_eq!((r.p_miss, r.p_fa), (0.0, 0.0));
    }

    #[test]
    fn candidates_near_float_limits() {
        let c = candidate_thresholds(&[-f64::MAX, f64::MAX]).unwrap();
        assert!(c.iter().all(|t| !t.is_nan()));
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sweep_hand_enumeration() {
        let set = asv(&[1.0], &[0.0], &[]);
        let sweep = asv_error_sweep(&set);
        let taus: Vec<f64> = sweep.iter().map(|r| r.threshold).collect();
        assert_eq!(taus, vec![f64::NEG_INFINITY, 0.5, 2.0, f64::INFINITY]);
        let miss: Vec<f64> = sweep.iter().map(|r| r.p_miss).collect();
        let fa: Vec<f64> = sweep.iter().map(|r| r.p_fa).collect();
        assert_eq!(miss, vec![0.0, 0.0, 1.0, 1.0]);
        assert_eq!(fa, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn sweep_of_constant_scores() {
        let set = cm(&[0.3, 0.3], &[0.3]);
        let sweep = cm_error_sweep(&set);
        assert_eq!(sweep.len(), 3);
        let last = sweep.last().unwrap();
        assert_eq!((last.p_miss, last.p_fa), (1.0, 0.0));
    }
}
