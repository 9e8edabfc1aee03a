use serde::Serialize;

use super::rates::{candidate_thresholds, count_accepted, count_rejected};
use super::set::{AsvScoreSet, CmScoreSet};
use crate::error::{Error, Result};

/// Empirical equal-error operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eer {
    /// Average of the miss and false alarm rates at `threshold`.
    pub eer: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub threshold: f64,
    pub p_miss: f64,
    pub p_fa: f64,
}

/// EER of positive-class scores `pos` (expected high) against `neg`.
///
/// Picks the candidate threshold minimizing `|p_miss - p_fa|`, keeping the
/// lowest threshold on ties, and reports the mean of the two rates there.
/// The comparison is done on integer counts so ties are exact.
pub fn empirical_eer(pos: &[f64], neg: &[f64]) -> Result<Eer> {
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pos = pos.to_vec();
    let mut neg = neg.to_vec();
    pos.sort_by(f64::total_cmp);
    neg.sort_by(f64::total_cmp);
    let mut pooled: Vec<f64> = pos.iter().chain(&neg).copied().collect();
    pooled.sort_by(f64::total_cmp);
    Ok(eer_sorted(&pos, &neg, &candidate_thresholds(&pooled)?))
}

fn eer_sorted(pos: &[f64], neg: &[f64], candidates: &[f64]) -> Eer {
    let (n_pos, n_neg) = (pos.len() as u128, neg.len() as u128);
    let mut best: Option<(u128, f64, u64, u64)> = None;
    for &tau in candidates {
        let miss = count_rejected(pos, tau);
        let fa = count_accepted(neg, tau);
        // |miss/n_pos - fa/n_neg| scaled by n_pos * n_neg
        let gap = (miss as u128 * n_neg).abs_diff(fa as u128 * n_pos);
        if best.is_none_or(|(g, ..)| gap < g) {
            best = Some((gap, tau, miss, fa));
        }
    }
    let (_, threshold, miss, fa) = best.expect("candidate list is never empty");
    let p_miss = miss as f64 / pos.len() as f64;
    let p_fa = fa as f64 / neg.len() as f64;
    Eer {
        eer: (p_miss + p_fa) / 2.0,
        threshold,
        p_miss,
        p_fa,
    }
}

impl AsvScoreSet {
    /// Target-vs-nontarget EER.
    pub fn eer(&self) -> Eer {
        let pooled = {
            let mut v: Vec<f64> = self
                .target_scores()
                .iter()
                .chain(self.nontarget_scores())
                .copied()
                .collect();
            v.sort_by(f64::total_cmp);
            v
        };
        let candidates = candidate_thresholds(&pooled).expect("non-empty");
        eer_sorted(self.target_scores(), self.nontarget_scores(), &candidates)
    }
}

impl CmScoreSet {
    /// Bona fide-vs-spoof EER.
    pub fn eer(&self) -> Eer {
        let candidates = candidate_thresholds(&self.pooled_scores()).expect("non-empty");
        eer_sorted(self.bonafide_scores(), self.spoof_scores(), &candidates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tie_break_takes_lowest_threshold() {
        let e = empirical_eer(&[1.0, 2.0, 3.0], &[0.0, 2.5]).unwrap();
        assert_eq!(e.threshold, 1.5);
        assert!((e.eer - 5.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn separable() {
        let e = empirical_eer(&[2.0], &[0.0]).unwrap();
        assert_eq!((e.eer, e.threshold), (0.0, 1.0));
    }

    #[test]
    fn identical_classes() {
        let e = empirical_eer(&[0.0, 1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(e.eer, 0.5);
    }

    #[test]
    fn empty_class() {
        assert_eq!(empirical_eer(&[], &[1.0]), Err(Error::EmptyInput));
        assert_eq!(empirical_eer(&[1.0], &[]), Err(Error::EmptyInput));
    }
}
