use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;
use sha2::{Digest, Sha256};
use tdcf_core::CostModel;

/// Provenance of one run. Everything except `timestamp` is a function of the
/// inputs and flags.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub version: &'static str,
    pub timestamp: String,
    pub seed: Option<u64>,
    pub cost_model: CostModelDoc,
    pub inputs: Vec<InputDigest>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CostModelDoc {
    pub source: &'static str,
    pub pi_tar: f64,
    pub pi_non: f64,
    pub pi_spoof: f64,
    pub c_miss: f64,
    pub c_fa: f64,
    pub c_fa_spoof: f64,
}

impl CostModelDoc {
    pub fn new(model: &CostModel, source: &'static str) -> Self {
        CostModelDoc {
            source,
            pi_tar: model.pi_tar(),
            pi_non: model.pi_non(),
            pi_spoof: model.pi_spoof(),
            c_miss: model.c_miss(),
            c_fa: model.c_fa(),
            c_fa_spoof: model.c_fa_spoof(),
        }
    }
}

impl InputDigest {
    pub fn new(role: &'static str, path: &Path, bytes: &[u8]) -> Self {
        InputDigest {
            role,
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// RFC 3339 UTC time, taken from `SOURCE_DATE_EPOCH` when set so that
/// reruns can be byte-identical.
pub fn timestamp() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| DateTime::<Utc>::from_timestamp(secs, 0))
        .unwrap_or_else(Utc::now);
    now.to_rfc3339_opts(SecondsFormat::Secs, true)
}

impl RunManifest {
    pub fn new(
        subcommand: &'static str,
        cost_model: CostModelDoc,
        inputs: Vec<InputDigest>,
        seed: Option<u64>,
    ) -> Self {
        RunManifest {
            subcommand,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: timestamp(),
            seed,
            cost_model,
            inputs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        let d = InputDigest::new("asv", Path::new("x"), b"");
        assert_eq!(
            d.sha256,
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
