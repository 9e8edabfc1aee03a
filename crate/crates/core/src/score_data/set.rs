use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use super::record::{ScoreRecord, TrialClass};
use crate::error::{Error, Result};

fn sorted(mut scores: Vec<f64>) -> Vec<f64> {
    scores.sort_by(f64::total_cmp);
    scores
}

fn merge_sorted(parts: &[&[f64]]) -> Vec<f64> {
    let mut all: Vec<f64> = parts.iter().flat_map(|p| p.iter().copied()).collect();
    all.sort_by(f64::total_cmp);
    all
}

fn check_records(records: &[ScoreRecord]) -> Result<()> {
    for r in records {
        if !r.score.is_finite() {
            return Err(Error::NonFiniteScore {
                line: 0,
                raw: r.score.to_string(),
            });
        }
        if let Some(attack) = &r.attack_id {
            if r.class != TrialClass::Spoof || attack.is_empty() {
                return Err(Error::Malformed {
                    line: 0,
                    message: format!(
                        "trial `{}`: attack id must be non-empty and only on spoof trials",
                        r.trial_id
                    ),
                });
            }
        }
    }
    Ok(())
}

fn duplicate_ids(records: &[ScoreRecord]) -> usize {
    let mut seen = HashSet::with_capacity(records.len());
    records
        .iter()
        .filter(|r| !seen.insert(r.trial_id.as_str()))
        .count()
}

fn attack_ids(records: &[ScoreRecord]) -> Vec<String> {
    records
        .iter()
        .filter_map(|r| r.attack_id.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn filter_attack(records: &[ScoreRecord], attack_id: &str) -> Result<Vec<ScoreRecord>> {
    if !records
        .iter()
        .any(|r| r.attack_id.as_deref() == Some(attack_id))
    {
        return Err(Error::UnknownAttack(attack_id.to_string()));
    }
    Ok(records
        .iter()
        .filter(|r| r.class != TrialClass::Spoof || r.attack_id.as_deref() == Some(attack_id))
        .cloned()
        .collect())
}

fn serialize(records: &[ScoreRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, "{r}");
    }
    out
}

/// Labeled ASV scores: targets, zero-effort nontargets and (optionally) spoofs.
#[derive(Debug, Clone, PartialEq)]
pub struct AsvScoreSet {
    records: Vec<ScoreRecord>,
    target: Vec<f64>,
    nontarget: Vec<f64>,
    spoof: Vec<f64>,
}

impl AsvScoreSet {
    /// Requires at least one target and one nontarget. `bonafide` labels are
    /// rejected because they do not say which side of the ASV decision a
    /// trial belongs to.
    pub fn new(records: Vec<ScoreRecord>) -> Result<Self> {
        check_records(&records)?;
        let (mut target, mut nontarget, mut spoof) = (Vec::new(), Vec::new(), Vec::new());
        for r in &records {
            match r.class {
                TrialClass::Target => target.push(r.score),
                TrialClass::Nontarget => nontarget.push(r.score),
                TrialClass::Spoof => spoof.push(r.score),
                TrialClass::Bonafide => {
                    return Err(Error::Malformed {
                        line: 0,
                        message: format!(
                            "trial `{}`: `bonafide` is not a valid ASV class",
                            r.trial_id
                        ),
                    })
                }
            }
        }
        if target.is_empty() {
            return Err(Error::EmptyClass("target"));
        }
        if nontarget.is_empty() {
            return Err(Error::EmptyClass("nontarget"));
        }
        Ok(AsvScoreSet {
            records,
            target: sorted(target),
            nontarget: sorted(nontarget),
            spoof: sorted(spoof),
        })
    }

    pub fn records(&self) -> &[ScoreRecord] {
        &self.records
    }

    /// Target scores in ascending order.
    pub fn target_scores(&self) -> &[f64] {
        &self.target
    }

    pub fn nontarget_scores(&self) -> &[f64] {
        &self.nontarget
    }

    pub fn spoof_scores(&self) -> &[f64] {
        &self.spoof
    }

    pub fn n_target(&self) -> usize {
        self.target.len()
    }

    pub fn n_nontarget(&self) -> usize {
        self.nontarget.len()
    }

    pub fn n_spoof(&self) -> usize {
        self.spoof.len()
    }

    pub fn has_spoof(&self) -> bool {
        !self.spoof.is_empty()
    }

    /// All scores of the set, ascending.
    pub fn pooled_scores(&self) -> Vec<f64> {
        merge_sorted(&[&self.target, &self.nontarget, &self.spoof])
    }

    pub fn attack_ids(&self) -> Vec<String> {
        attack_ids(&self.records)
    }

    /// Number of records whose trial id already appeared earlier in the set.
    pub fn duplicate_trial_ids(&self) -> usize {
        duplicate_ids(&self.records)
    }

    /// Keeps every target and nontarget trial and only the spoofs of one attack.
    pub fn per_attack_subset(&self, attack_id: &str) -> Result<Self> {
        AsvScoreSet::new(filter_attack(&self.records, attack_id)?)
    }

    /// Score-file text, one record per line, in original order.
    pub fn to_score_file(&self) -> String {
        serialize(&self.records)
    }
}

/// Labeled CM scores: bona fide (target, nontarget or unlabeled) and spoof.
#[derive(Debug, Clone, PartialEq)]
pub struct CmScoreSet {
    records: Vec<ScoreRecord>,
    bonafide: Vec<f64>,
    spoof: Vec<f64>,
    target: Vec<f64>,
    nontarget: Vec<f64>,
}

impl CmScoreSet {
    pub fn new(records: Vec<ScoreRecord>) -> Result<Self> {
        check_records(&records)?;
        let (mut bonafide, mut spoof) = (Vec::new(), Vec::new());
        let (mut target, mut nontarget) = (Vec::new(), Vec::new());
        for r in &records {
            match r.class {
                TrialClass::Spoof => spoof.push(r.score),
                TrialClass::Target => {
                    target.push(r.score);
                    bonafide.push(r.score);
                }
                TrialClass::Nontarget => {
                    nontarget.push(r.score);
                    bonafide.push(r.score);
                }
                TrialClass::Bonafide => bonafide.push(r.score),
            }
        }
        if bonafide.is_empty() {
            return Err(Error::EmptyClass("bona fide"));
        }
        if spoof.is_empty() {
            return Err(Error::EmptyClass("spoof"));
        }
        Ok(CmScoreSet {
            records,
            bonafide: sorted(bonafide),
            spoof: sorted(spoof),
            target: sorted(target),
            nontarget: sorted(nontarget),
        })
    }

    pub fn records(&self) -> &[ScoreRecord] {
        &self.records
    }

    /// Pooled bona fide scores in ascending order.
    pub fn bonafide_scores(&self) -> &[f64] {
        &self.bonafide
    }

    pub fn spoof_scores(&self) -> &[f64] {
        &self.spoof
    }

    /// Bona fide scores explicitly labeled `target`.
    pub fn target_scores(&self) -> &[f64] {
        &self.target
    }

    /// Bona fide scores explicitly labeled `nontarget`.
    pub fn nontarget_scores(&self) -> &[f64] {
        &self.nontarget
    }

    pub fn n_bonafide(&self) -> usize {
        self.bonafide.len()
    }

    pub fn n_spoof(&self) -> usize {
        self.spoof.len()
    }

    pub fn n_target(&self) -> usize {
        self.target.len()
    }

    pub fn n_nontarget(&self) -> usize {
        self.nontarget.len()
    }

    /// Proportion of target-labeled trials within the bona fide class,
    /// `N_tar / N_bona`. Records labeled plain `bonafide` count in the
    /// denominator only.
    pub fn target_proportion(&self) -> f64 {
        self.target.len() as f64 / self.bonafide.len() as f64
    }

    pub fn pooled_scores(&self) -> Vec<f64> {
        merge_sorted(&[&self.bonafide, &self.spoof])
    }

    pub fn attack_ids(&self) -> Vec<String> {
        attack_ids(&self.records)
    }

    pub fn duplicate_trial_ids(&self) -> usize {
        duplicate_ids(&self.records)
    }

    pub fn per_attack_subset(&self, attack_id: &str) -> Result<Self> {
        CmScoreSet::new(filter_attack(&self.records, attack_id)?)
    }

    pub fn to_score_file(&self) -> String {
        serialize(&self.records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asv() -> AsvScoreSet {
        AsvScoreSet::new(vec![
            ScoreRecord::new("t1", TrialClass::Target, 2.0),
            ScoreRecord::new("n1", TrialClass::Nontarget, -1.0),
            ScoreRecord::spoof("s1", 0.1, "A01"),
            ScoreRecord::spoof("s2", 0.9, "A02"),
        ])
        .unwrap()
    }

    #[test]
    fn subset_filters_spoofs_only() {
        let set = asv();
        let sub = set.per_attack_subset("A01").unwrap();
        assert_eq!(sub.n_spoof(), 1);
        assert_eq!(sub.spoof_scores(), &[0.1]);
        assert_eq!(sub.n_target(), set.n_target());
        assert_eq!(sub.n_nontarget(), set.n_nontarget());
    }

    #[test]
    fn subset_unknown_attack() {
        assert_eq!(
            asv().per_attack_subset("A99"),
            Err(Error::UnknownAttack("A99".into()))
        );
    }

    #[test]
    fn asv_requires_both_bonafide_classes() {
        let only_targets = vec![ScoreRecord::new("t", TrialClass::Target, 1.0)];
        assert_eq!(
            AsvScoreSet::new(only_targets),
            Err(Error::EmptyClass("nontarget"))
        );
    }

    #[test]
    fn spoof_free_asv_set_is_valid() {
        let set = AsvScoreSet::new(vec![
            ScoreRecord::new("t", TrialClass::Target, 1.0),
            ScoreRecord::new("n", TrialClass::Nontarget, 0.0),
        ])
        .unwrap();
        assert!(!set.has_spoof());
    }

    #[test]
    fn cm_requires_spoof() {
        let no_spoof = vec![ScoreRecord::new("t", TrialClass::Bonafide, 1.0)];
        assert_eq!(CmScoreSet::new(no_spoof), Err(Error::EmptyClass("spoof")));
    }

    #[test]
    fn attack_id_on_bonafide_rejected() {
        let mut r = ScoreRecord::new("t", TrialClass::Target, 1.0);
        r.attack_id = Some("A01".into());
        let records = vec![r, ScoreRecord::new("n", TrialClass::Nontarget, 0.0)];
        assert!(matches!(
            AsvScoreSet::new(records),
            Err(Error::Malformed { .. })
        ));
    }

    #[test]
    fn duplicates_are_counted_not_rejected() {
        let set = AsvScoreSet::new(vec![
            ScoreRecord::new("x", TrialClass::Target, 1.0),
            ScoreRecord::new("x", TrialClass::Nontarget, 0.0),
        ])
        .unwrap();
        assert_eq!(set.duplicate_trial_ids(), 1);
    }
}
