use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};

use super::model::{GaussianParams, SimConfig};
use crate::error::Result;
use crate::score_data::{AsvScoreSet, CmScoreSet, ScoreRecord, TrialClass};

/// Attack id attached to every simulated spoof trial.
pub const SIM_ATTACK_ID: &str = "SIM";

// One ChaCha stream per (system, class), all keyed by the user seed, so each
// class is generated independently of the others and of evaluation order.
#[derive(Clone, Copy)]
enum Stream {
    AsvTarget = 0,
    AsvNontarget = 1,
    AsvSpoof = 2,
    CmTarget = 3,
    CmNontarget = 4,
    CmSpoof = 5,
}

fn draw(seed: u64, stream: Stream, mean: f64, sigma: f64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    let dist = Normal::new(mean, sigma).expect("sigma is positive and finite");
    dist.sample_iter(&mut rng).take(n).collect()
}

/// Simulated ASV and CM score records, in the same trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedRecords {
    pub asv: Vec<ScoreRecord>,
    pub cm: Vec<ScoreRecord>,
}

/// Draws `n_tar`, `n_non` and `n_spoof` trials. Each trial gets an ASV and an
/// independent CM score under the same trial id; spoofs carry the attack id
/// `SIM`. Output is a pure function of the configuration.
pub fn sample_records(config: &SimConfig) -> Result<SimulatedRecords> {
    let g = GaussianParams::from_config(config)?;
    let (sa, sc) = (g.sigma_asv(), g.sigma_cm());
    let seed = config.seed;

    let classes = [
        (
            TrialClass::Target,
            "tar",
            config.n_tar,
            draw(seed, Stream::AsvTarget, g.mu_asv, sa, config.n_tar),
            draw(seed, Stream::CmTarget, g.mu_cm, sc, config.n_tar),
        ),
        (
            TrialClass::Nontarget,
            "non",
            config.n_non,
            draw(seed, Stream::AsvNontarget, -g.mu_asv, sa, config.n_non),
            draw(seed, Stream::CmNontarget, g.mu_cm, sc, config.n_non),
        ),
        (
            TrialClass::Spoof,
            "spf",
            config.n_spoof,
            draw(
                seed,
                Stream::AsvSpoof,
                g.spoof_mean_asv(),
                sa,
                config.n_spoof,
            ),
            draw(seed, Stream::CmSpoof, -g.mu_cm, sc, config.n_spoof),
        ),
    ];

    let total = config.n_tar + config.n_non + config.n_spoof;
    let mut asv = Vec::with_capacity(total);
    let mut cm = Vec::with_capacity(total);
    for (class, prefix, n, asv_scores, cm_scores) in classes {
        for i in 0..n {
            let id = format!("{prefix}_{i:07}");
            let attack = (class == TrialClass::Spoof).then(|| SIM_ATTACK_ID.to_string());
            asv.push(ScoreRecord {
                trial_id: id.clone(),
                class,
                score: asv_scores[i],
                attack_id: attack.clone(),
            });
            cm.push(ScoreRecord {
                trial_id: id,
                class,
                score: cm_scores[i],
                attack_id: attack,
            });
        }
    }
    Ok(SimulatedRecords { asv, cm })
}

/// Simulated score sets. Fails if a class required by either set is empty
/// (e.g. `n_spoof = 0` leaves no CM spoof trials; use
/// [`sample_asv_scores`] for spoof-free ASV data).
pub fn sample_scores(config: &SimConfig) -> Result<(AsvScoreSet, CmScoreSet)> {
    let records = sample_records(config)?;
    Ok((AsvScoreSet::new(records.asv)?, CmScoreSet::new(records.cm)?))
}

pub fn sample_asv_scores(config: &SimConfig) -> Result<AsvScoreSet> {
    AsvScoreSet::new(sample_records(config)?.asv)
}
