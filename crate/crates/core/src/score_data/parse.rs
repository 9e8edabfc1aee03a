use std::io::BufRead;

use super::record::{ScoreRecord, TrialClass};
use super::set::{AsvScoreSet, CmScoreSet};
use crate::error::{Error, Result};

/// Which detector a score file belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreKind {
    Asv,
    Cm,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScoreSet {
    Asv(AsvScoreSet),
    Cm(CmScoreSet),
}

/// Parses `trial_id class score [attack_id]` lines. Blank lines and lines
/// starting with `#` are skipped. Line numbers in errors are 1-based.
pub fn parse_records<R: BufRead>(reader: R) -> Result<Vec<ScoreRecord>> {
    parse_lines(reader, None)
}

fn parse_lines<R: BufRead>(reader: R, kind: Option<ScoreKind>) -> Result<Vec<ScoreRecord>> {
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record = parse_line(trimmed, lineno)?;
        if kind == Some(ScoreKind::Asv) && record.class == TrialClass::Bonafide {
            return Err(Error::Malformed {
                line: lineno,
                message: "`bonafide` is not a valid ASV class".into(),
            });
        }
        records.push(record);
    }
    Ok(records)
}

fn parse_line(line: &str, lineno: usize) -> Result<ScoreRecord> {
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    if !(3..=4).contains(&fields.len()) {
        return Err(Error::Malformed {
            line: lineno,
            message: format!("expected 3 or 4 fields, found {}", fields.len()),
        });
    }
    let class: TrialClass = fields[1].parse().map_err(|_| Error::UnknownClass {
        line: lineno,
        label: fields[1].to_string(),
    })?;
    let score: f64 = fields[2].parse().map_err(|_| Error::Malformed {
        line: lineno,
        message: format!("cannot parse score `{}`", fields[2]),
    })?;
    if !score.is_finite() {
        return Err(Error::NonFiniteScore {
            line: lineno,
            raw: fields[2].to_string(),
        });
    }
    let attack_id = fields.get(3).map(|s| s.to_string());
    if attack_id.is_some() && class != TrialClass::Spoof {
        return Err(Error::Malformed {
            line: lineno,
            message: format!("attack id on a `{class}` trial"),
        });
    }
    Ok(ScoreRecord {
        trial_id: fields[0].to_string(),
        class,
        score,
        attack_id,
    })
}

pub fn parse_asv_scores<R: BufRead>(reader: R) -> Result<AsvScoreSet> {
    AsvScoreSet::new(parse_lines(reader, Some(ScoreKind::Asv))?)
}

pub fn parse_cm_scores<R: BufRead>(reader: R) -> Result<CmScoreSet> {
    CmScoreSet::new(parse_records(reader)?)
}

pub fn parse_scores<R: BufRead>(reader: R, kind: ScoreKind) -> Result<ScoreSet> {
    match kind {
        ScoreKind::Asv => parse_asv_scores(reader).map(ScoreSet::Asv),
        ScoreKind::Cm => parse_cm_scores(reader).map(ScoreSet::Cm),
    }
}
