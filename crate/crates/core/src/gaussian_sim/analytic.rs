use rayon::prelude::*;
use serde::Serialize;

use super::model::GaussianParams;
use crate::error::Result;
use crate::tdcf::{
    default_cost_unconstrained, normalize, tdcf_unconstrained, CostModel, TdcfCoefficients,
    TdcfSurface,
};

/// Both t-DCF variants evaluated on closed-form error rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticTdcf {
    pub unconstrained_raw: f64,
    pub unconstrained_normalized: f64,
    pub constrained_raw: f64,
    pub constrained_normalized: f64,
}

pub fn analytic_tdcf(
    params: &GaussianParams,
    model: &CostModel,
    tau_asv: f64,
    tau_cm: f64,
) -> Result<AnalyticTdcf> {
    let asv = params.asv_rates(tau_asv);
    let cm = params.cm_rates(tau_cm);
    let unconstrained_raw = tdcf_unconstrained(model, &asv, &cm);
    let coeffs = TdcfCoefficients::new(model, &asv);
    let constrained_raw = coeffs.cost(&cm);
    Ok(AnalyticTdcf {
        unconstrained_raw,
        unconstrained_normalized: normalize(unconstrained_raw, default_cost_unconstrained(model)?)?,
        constrained_raw,
        constrained_normalized: normalize(constrained_raw, coeffs.default_cost()?)?,
    })
}

/// `n` evenly spaced points covering 4 standard deviations beyond the
/// outermost class means of the ASV system.
pub fn asv_grid(params: &GaussianParams, n: usize) -> Vec<f64> {
    let spoof = params.spoof_mean_asv();
    let spread = 4.0 * params.sigma_asv();
    let lo = (-params.mu_asv).min(spoof) - spread;
    let hi = params.mu_asv.max(spoof) + spread;
    linspace(lo, hi, n)
}

/// `n` evenly spaced points over `[-mu - 4 sigma, mu + 4 sigma]` of the CM.
pub fn cm_grid(params: &GaussianParams, n: usize) -> Vec<f64> {
    let spread = 4.0 * params.sigma_cm();
    linspace(-params.mu_cm - spread, params.mu_cm + spread, n)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![(lo + hi) / 2.0],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Minimum of the analytic normalized ASV-constrained t-DCF over `grid`
/// plus both CM infinities. Returns `(value, tau_cm)`; ties keep the
/// smallest threshold.
pub fn analytic_min_constrained(
    params: &GaussianParams,
    model: &CostModel,
    tau_asv: f64,
    grid: &[f64],
) -> Result<(f64, f64)> {
    let coeffs = TdcfCoefficients::new(model, &params.asv_rates(tau_asv));
    let default = coeffs.default_cost()?;
    let mut taus = Vec::with_capacity(grid.len() + 2);
    taus.push(f64::NEG_INFINITY);
    taus.extend_from_slice(grid);
    taus.push(f64::INFINITY);
    taus.sort_by(f64::total_cmp);
    let mut best = (f64::INFINITY, f64::NAN);
    for tau in taus {
        let v = coeffs.cost(&params.cm_rates(tau)) / default;
        if v < best.0 {
            best = (v, tau);
        }
    }
    Ok(best)
}

/// Analytic normalized unconstrained t-DCF on an `n x n` grid (see
/// [`asv_grid`] and [`cm_grid`]).
pub fn analytic_surface(
    params: &GaussianParams,
    model: &CostModel,
    n: usize,
) -> Result<TdcfSurface> {
    let default = default_cost_unconstrained(model)?;
    let tau_asv = asv_grid(params, n);
    let tau_cm = cm_grid(params, n);
    let cm: Vec<_> = tau_cm.iter().map(|&t| params.cm_rates(t)).collect();
    let values = tau_asv
        .par_iter()
        .map(|&ta| {
            let asv = params.asv_rates(ta);
            cm.iter()
                .map(|c| tdcf_unconstrained(model, &asv, c) / default)
                .collect()
        })
        .collect();
    Ok(TdcfSurface {
        tau_asv,
        tau_cm,
        values,
    })
}
