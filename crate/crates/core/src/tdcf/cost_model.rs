use serde::Serialize;

use crate::error::{Error, Result};

/// Priors and detection costs of a tandem evaluation.
///
/// `pi_non` is always derived as `1 - pi_tar - pi_spoof`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostModel {
    pi_tar: f64,
    pi_non: f64,
    pi_spoof: f64,
    c_miss: f64,
    c_fa: f64,
    c_fa_spoof: f64,
}

// Priors that sum to 1 + this much are treated as summing to exactly 1.
const PRIOR_SLACK: f64 = 1e-12;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if p.is_finite() && (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidCostModel(format!(
            "{name} = {p} is not in [0, 1]"
        )))
    }
}

fn check_cost(name: &str, c: f64) -> Result<()> {
    if c.is_finite() && c >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidCostModel(format!(
            "{name} = {c} must be finite and >= 0"
        )))
    }
}

impl CostModel {
    pub fn new(
        pi_tar: f64,
        pi_spoof: f64,
        c_miss: f64,
        c_fa: f64,
        c_fa_spoof: f64,
    ) -> Result<Self> {
        check_probability("pi_tar", pi_tar)?;
        check_probability("pi_spoof", pi_spoof)?;
        check_cost("c_miss", c_miss)?;
        check_cost("c_fa", c_fa)?;
        check_cost("c_fa_spoof", c_fa_spoof)?;
        let mut pi_non = 1.0 - pi_tar - pi_spoof;
        if pi_non < 0.0 {
            if pi_non < -PRIOR_SLACK {
                return Err(Error::InvalidCostModel(format!(
                    "pi_tar + pi_spoof = {} exceeds 1",
                    pi_tar + pi_spoof
                )));
            }
            pi_non = 0.0;
        }
        let model = CostModel {
            pi_tar,
            pi_non,
            pi_spoof,
            c_miss,
            c_fa,
            c_fa_spoof,
        };
        if model.beta() <= 0.0 && model.accept_all_cost() <= 0.0 {
            return Err(Error::InvalidCostModel(
                "all weighted costs are zero".into(),
            ));
        }
        Ok(model)
    }

    /// The ASVspoof 2019 banking setup: `pi_tar = 0.99 (1 - pi_spoof)`,
    /// `pi_non = 0.01 (1 - pi_spoof)`, `C_miss = 1`, `C_fa = C_fa,spoof = 10`.
    pub fn asvspoof19(pi_spoof: f64) -> Result<Self> {
        check_probability("pi_spoof", pi_spoof)?;
        CostModel::new((1.0 - pi_spoof) * 0.99, pi_spoof, 1.0, 10.0, 10.0)
    }

    /// Reads a flat `key = value` (or `key: value`) document with exactly the
    /// keys `pi_tar`, `pi_spoof`, `c_miss`, `c_fa` and `c_fa_spoof`.
    /// Blank lines and `#` comments are ignored.
    pub fn from_key_values(text: &str) -> Result<Self> {
        const KEYS: [&str; 5] = ["pi_tar", "pi_spoof", "c_miss", "c_fa", "c_fa_spoof"];
        let mut values: [Option<f64>; 5] = [None; 5];
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| {
                    Error::InvalidCostModel(format!("line {}: expected `key = value`", idx + 1))
                })?;
            let key = key.trim();
            let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| {
                Error::InvalidCostModel(format!("line {}: unknown key `{key}`", idx + 1))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::InvalidCostModel(format!(
                    "line {}: `{}` is not a number",
                    idx + 1,
                    value.trim()
                ))
            })?;
            if values[slot].replace(value).is_some() {
                return Err(Error::InvalidCostModel(format!(
                    "line {}: duplicate key `{key}`",
                    idx + 1
                )));
            }
        }
        let get = |i: usize| {
            values[i].ok_or_else(|| Error::InvalidCostModel(format!("missing key `{}`", KEYS[i])))
        };
        CostModel::new(get(0)?, get(1)?, get(2)?, get(3)?, get(4)?)
    }

    pub fn pi_tar(&self) -> f64 {
        self.pi_tar
    }

    pub fn pi_non(&self) -> f64 {
        self.pi_non
    }

    pub fn pi_spoof(&self) -> f64 {
        self.pi_spoof
    }

    pub fn c_miss(&self) -> f64 {
        self.c_miss
    }

    pub fn c_fa(&self) -> f64 {
        self.c_fa
    }

    pub fn c_fa_spoof(&self) -> f64 {
        self.c_fa_spoof
    }

    /// `pi_tar C_miss + pi_non C_fa`: the ASV floor per unit of ASV EER.
    pub fn alpha(&self) -> f64 {
        self.pi_tar * self.c_miss + self.pi_non * self.c_fa
    }

    /// `pi_tar C_miss`: cost of rejecting everything.
    pub fn beta(&self) -> f64 {
        self.pi_tar * self.c_miss
    }

    /// `pi_spoof C_fa,spoof`.
    pub fn gamma(&self) -> f64 {
        self.pi_spoof * self.c_fa_spoof
    }

    /// Cost of accepting everything: `C_fa pi_non + C_fa,spoof pi_spoof`.
    pub fn accept_all_cost(&self) -> f64 {
        self.c_fa * self.pi_non + self.c_fa_spoof * self.pi_spoof
    }
}
