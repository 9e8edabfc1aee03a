use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Ground-truth class of a single trial.
///
/// ASV files use `Target`, `Nontarget` and `Spoof`. CM files may additionally
/// use `Bonafide`; for the countermeasure every non-spoof label is pooled into
/// the bona fide class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialClass {
    Target,
    Nontarget,
    Bonafide,
    Spoof,
}

impl TrialClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TrialClass::Target => "target",
            TrialClass::Nontarget => "nontarget",
            TrialClass::Bonafide => "bonafide",
            TrialClass::Spoof => "spoof",
        }
    }

    /// True for every label the countermeasure treats as human speech.
    pub fn is_bonafide(self) -> bool {
        !matches!(self, TrialClass::Spoof)
    }
}

impl fmt::Display for TrialClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TrialClass {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let class = match s.to_ascii_lowercase().as_str() {
            "target" => TrialClass::Target,
            "nontarget" => TrialClass::Nontarget,
            "bonafide" => TrialClass::Bonafide,
            "spoof" => TrialClass::Spoof,
            _ => return Err(()),
        };
        Ok(class)
    }
}

/// One labeled detection score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub trial_id: String,
    pub class: TrialClass,
    pub score: f64,
    /// Attack identifier; only ever set on spoof trials.
    pub attack_id: Option<String>,
}

impl ScoreRecord {
    pub fn new(trial_id: impl Into<String>, class: TrialClass, score: f64) -> Self {
        ScoreRecord {
            trial_id: trial_id.into(),
            class,
            score,
            attack_id: None,
        }
    }

    pub fn spoof(trial_id: impl Into<String>, score: f64, attack_id: impl Into<String>) -> Self {
        ScoreRecord {
            trial_id: trial_id.into(),
            class: TrialClass::Spoof,
            score,
            attack_id: Some(attack_id.into()),
        }
    }
}

impl fmt::Display for ScoreRecord {
    /// Writes the record in score-file syntax. `f64`'s `Display` emits the
    /// shortest string that parses back to the same value, so scores
    /// round-trip bit-exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.trial_id, self.class, self.score)?;
        if let Some(attack) = &self.attack_id {
            write!(f, " {attack}")?;
        }
        Ok(())
    }
}
