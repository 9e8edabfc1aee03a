//! Minimum-cost searches and threshold selection over empirical candidate
//! thresholds.
//!
//! Every argmin in this module keeps the lexicographically smallest
//! threshold (ASV first, then CM) among equal normalized costs.

use rayon::prelude::*;
use serde::Serialize;

use super::cost_model::CostModel;
use super::report::{collect_flags, TdcfReport, Variant};
use super::tandem::{default_cost_unconstrained, normalize, tdcf_unconstrained, TdcfCoefficients};
use crate::error::Result;
use crate::score_data::{
    asv_error_rates, asv_error_sweep, candidate_thresholds, cm_error_counts, cm_error_rates,
    cm_error_sweep, AsvErrorRates, AsvScoreSet, CmErrorRates, CmScoreSet,
};

/// Minimum of the normalized ASV-constrained t-DCF over CM thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstrainedMin {
    pub normalized: f64,
    pub raw: f64,
    pub default: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_cm: f64,
    pub cm: CmErrorRates,
}

/// Minimum of the normalized unconstrained t-DCF over both thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointMin {
    pub normalized: f64,
    pub raw: f64,
    pub default: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_asv: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_cm: f64,
    pub asv: AsvErrorRates,
    pub cm: CmErrorRates,
}

/// Index of the first minimum of `values` (strict `<`, so ties keep the
/// earliest index).
fn first_argmin(values: impl Iterator<Item = f64>) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.enumerate() {
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((i, v));
        }
    }
    best
}

fn constrained_min_over(
    coeffs: &TdcfCoefficients,
    sweep: &[CmErrorRates],
) -> Result<ConstrainedMin> {
    let default = coeffs.default_cost()?;
    let (idx, normalized) = first_argmin(sweep.iter().map(|cm| coeffs.cost(cm) / default))
        .expect("sweep is never empty");
    let cm = sweep[idx];
    Ok(ConstrainedMin {
        normalized,
        raw: coeffs.cost(&cm),
        default,
        tau_cm: cm.threshold,
        cm,
    })
}

/// Oracle minimum of the normalized ASV-constrained t-DCF over every CM
/// candidate threshold of `cm_set`, including `±inf`. Never exceeds 1.
pub fn min_tdcf_constrained(
    coeffs: &TdcfCoefficients,
    cm_set: &CmScoreSet,
) -> Result<ConstrainedMin> {
    constrained_min_over(coeffs, &cm_error_sweep(cm_set))
}

// Grids with at most this many cells are searched exhaustively; larger ones
// go through the lower convex hull of the CM operating points.
const EXHAUSTIVE_CELLS: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum JointSearch {
    Exhaustive,
    Hull,
}

/// Oracle minimum of the normalized unconstrained t-DCF over the Cartesian
/// product of ASV and CM candidate thresholds.
pub fn min_tdcf_unconstrained(
    model: &CostModel,
    asv_set: &AsvScoreSet,
    cm_set: &CmScoreSet,
) -> Result<JointMin> {
    // upper bound on the candidate counts: distinct midpoints plus three
    let cells = (asv_set.records().len() + 3).saturating_mul(cm_set.records().len() + 3);
    let search = if cells <= EXHAUSTIVE_CELLS {
        JointSearch::Exhaustive
    } else {
        JointSearch::Hull
    };
    min_tdcf_unconstrained_with(model, asv_set, cm_set, search)
}

pub(crate) fn min_tdcf_unconstrained_with(
    model: &CostModel,
    asv_set: &AsvScoreSet,
    cm_set: &CmScoreSet,
    search: JointSearch,
) -> Result<JointMin> {
    let asv = asv_error_sweep(asv_set);
    let cm = cm_error_sweep(cm_set);
    let hull = (search == JointSearch::Hull).then(|| CmHull::new(cm_set));
    joint_min(model, &asv, &cm, hull.as_ref())
}

fn joint_min(
    model: &CostModel,
    asv: &[AsvErrorRates],
    cm: &[CmErrorRates],
    hull: Option<&CmHull>,
) -> Result<JointMin> {
    let default = default_cost_unconstrained(model)?;
    let all: Vec<usize>;
    let columns = match hull {
        Some(h) => &h.vertices,
        None => {
            all = (0..cm.len()).collect();
            &all
        }
    };
    let (value, i, j) = asv
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let cost = |j: usize| tdcf_unconstrained(model, a, &cm[j]) / default;
            let values: Vec<f64> = columns.iter().map(|&j| cost(j)).collect();
            let (k, mut best) = first_argmin(values.iter().copied()).expect("non-empty columns");
            let mut arg = columns[k];
            if let Some(h) = hull {
                // collinear points on a nearly flat edge can win on rounding
                let tol = NEAR_FLAT * best.abs();
                for e in &h.edges {
                    if values[e.from] - best > tol || values[e.to] - best > tol {
                        continue;
                    }
                    for &j in &e.interior {
                        let v = cost(j);
                        if v < best || (v == best && j < arg) {
                            (best, arg) = (v, j);
                        }
                    }
                }
            }
            (best, i, arg)
        })
        .reduce_with(|x, y| {
            if y.0 < x.0 || (y.0 == x.0 && y.1 < x.1) {
                y
            } else {
                x
            }
        })
        .expect("non-empty rows");
    Ok(JointMin {
        normalized: value,
        raw: tdcf_unconstrained(model, &asv[i], &cm[j]),
        default,
        tau_asv: asv[i].threshold,
        tau_cm: cm[j].threshold,
        asv: asv[i],
        cm: cm[j],
    })
}

// Relative gap under which a hull edge counts as flat at the row optimum.
// Steps along a skipped edge then exceed 1e-6 / (edge length), far above
// rounding for any realistic trial count.
const NEAR_FLAT: f64 = 1e-6;

/// CM candidates that can minimize `c0 + c1 P_miss + c2 P_fa` for some
/// `c2 >= 0` and any `c1`.
///
/// `vertices` are the strict vertices of the lower convex hull of the CM
/// operating points (exact integer counts), plus the accept-all point and
/// the first reject-all-bona-fide point, which cover `c2 = 0`. Collinear
/// points between two vertices only matter on exact or rounding-level ties
/// and are kept per edge.
struct CmHull {
    vertices: Vec<usize>,
    edges: Vec<HullEdge>,
}

struct HullEdge {
    // positions in `vertices`
    from: usize,
    to: usize,
    interior: Vec<usize>,
}

impl CmHull {
    fn new(cm_set: &CmScoreSet) -> Self {
        type P = (i128, i128, usize);
        let taus = cm_set.candidate_thresholds();
        let pts: Vec<P> = taus
            .iter()
            .enumerate()
            .map(|(j, &t)| {
                let c = cm_error_counts(cm_set, t);
                (c.miss.num as i128, c.fa.num as i128, j)
            })
            .collect();
        let n_bona = cm_set.n_bonafide() as i128;

        let mut sorted = pts.clone();
        sorted.sort_unstable();
        sorted.dedup_by_key(|p| (p.0, p.1));

        let cross = |o: P, a: P, b: P| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
        let mut hull: Vec<P> = Vec::new();
        for p in sorted {
            if hull.last().is_some_and(|l| l.0 == p.0) {
                continue;
            }
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) < 0 {
                hull.pop();
            }
            hull.push(p);
        }

        let strict: Vec<bool> = (0..hull.len())
            .map(|k| k == 0 || k + 1 == hull.len() || cross(hull[k - 1], hull[k], hull[k + 1]) != 0)
            .collect();
        let mut vertices: Vec<usize> = (0..hull.len())
            .filter(|&k| strict[k])
            .map(|k| hull[k].2)
            .collect();
        vertices.push(0);
        if let Some(p) = pts.iter().find(|p| p.0 == n_bona) {
            vertices.push(p.2);
        }
        vertices.sort_unstable();
        vertices.dedup();
        let pos = |j: usize| vertices.binary_search(&j).expect("hull vertex");

        let mut edges = Vec::new();
        let mut last = 0;
        for k in 1..hull.len() {
            if !strict[k] {
                continue;
            }
            if k > last + 1 {
                edges.push(HullEdge {
                    from: pos(hull[last].2),
                    to: pos(hull[k].2),
                    interior: hull[last + 1..k].iter().map(|p| p.2).collect(),
                });
            }
            last = k;
        }
        CmHull { vertices, edges }
    }
}

/// Normalized unconstrained t-DCF on the full candidate grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TdcfSurface {
    pub tau_asv: Vec<f64>,
    pub tau_cm: Vec<f64>,
    /// `values[i][j]` at `(tau_asv[i], tau_cm[j])`.
    pub values: Vec<Vec<f64>>,
}

pub fn tdcf_surface(
    model: &CostModel,
    asv_set: &AsvScoreSet,
    cm_set: &CmScoreSet,
) -> Result<TdcfSurface> {
    let default = default_cost_unconstrained(model)?;
    let asv = asv_error_sweep(asv_set);
    let cm = cm_error_sweep(cm_set);
    let values = asv
        .par_iter()
        .map(|a| {
            cm.iter()
                .map(|c| tdcf_unconstrained(model, a, c) / default)
                .collect()
        })
        .collect();
    Ok(TdcfSurface {
        tau_asv: asv.iter().map(|a| a.threshold).collect(),
        tau_cm: cm.iter().map(|c| c.threshold).collect(),
        values,
    })
}

/// ASV threshold minimizing the ASV floor `C0` on target and nontarget
/// trials. Spoof trials play no part.
pub fn select_asv_threshold(model: &CostModel, dev_asv: &AsvScoreSet) -> f64 {
    let mut bona: Vec<f64> = dev_asv
        .target_scores()
        .iter()
        .chain(dev_asv.nontarget_scores())
        .copied()
        .collect();
    bona.sort_by(f64::total_cmp);
    let taus = candidate_thresholds(&bona).expect("set has targets");
    let (idx, _) = first_argmin(
        taus.iter()
            .map(|&t| TdcfCoefficients::new(model, &asv_error_rates(dev_asv, t)).c0),
    )
    .expect("non-empty");
    taus[idx]
}

/// CM threshold minimizing the ASV-constrained t-DCF on development data.
/// With a degenerate default cost the raw cost is minimized instead.
pub fn select_cm_threshold(coeffs: &TdcfCoefficients, dev_cm: &CmScoreSet) -> f64 {
    let sweep = cm_error_sweep(dev_cm);
    let scale = coeffs.default_cost().unwrap_or(1.0);
    let (idx, _) = first_argmin(sweep.iter().map(|cm| coeffs.cost(cm) / scale)).expect("non-empty");
    sweep[idx].threshold
}

/// Minimum ASV-constrained t-DCF with the ASV system fixed at `tau_asv`.
pub fn evaluate_constrained(
    model: &CostModel,
    asv_set: &AsvScoreSet,
    cm_set: &CmScoreSet,
    tau_asv: f64,
) -> Result<TdcfReport> {
    let coeffs = TdcfCoefficients::new(model, &asv_error_rates(asv_set, tau_asv));
    let min = min_tdcf_constrained(&coeffs, cm_set)?;
    Ok(TdcfReport {
        variant: Variant::Constrained,
        raw: min.raw,
        default: min.default,
        normalized: min.normalized,
        min_normalized: min.normalized,
        tau_asv,
        tau_cm: min.tau_cm,
        argmin_tau_asv: tau_asv,
        argmin_tau_cm: min.tau_cm,
        flags: collect_flags(model, &coeffs, min.normalized, asv_set.has_spoof()),
        coefficients: Some(coeffs),
    })
}

/// Joint minimum of the unconstrained t-DCF.
pub fn evaluate_unconstrained(
    model: &CostModel,
    asv_set: &AsvScoreSet,
    cm_set: &CmScoreSet,
) -> Result<TdcfReport> {
    let min = min_tdcf_unconstrained(model, asv_set, cm_set)?;
    let coeffs = TdcfCoefficients::new(model, &min.asv);
    Ok(TdcfReport {
        variant: Variant::Unconstrained,
        raw: min.raw,
        default: min.default,
        normalized: min.normalized,
        min_normalized: min.normalized,
        tau_asv: min.tau_asv,
        tau_cm: min.tau_cm,
        argmin_tau_asv: min.tau_asv,
        argmin_tau_cm: min.tau_cm,
        flags: collect_flags(model, &coeffs, min.normalized, asv_set.has_spoof()),
        coefficients: Some(coeffs),
    })
}

/// Normalized ASV-constrained t-DCF on evaluation data at externally fixed
/// thresholds (typically chosen on development data). The default cost comes
/// from the evaluation-set coefficients. May exceed 1.
pub fn actual_tdcf(
    model: &CostModel,
    eval_asv: &AsvScoreSet,
    eval_cm: &CmScoreSet,
    tau_asv: f64,
    tau_cm: f64,
) -> Result<TdcfReport> {
    let coeffs = TdcfCoefficients::new(model, &asv_error_rates(eval_asv, tau_asv));
    let default = coeffs.default_cost()?;
    let raw = coeffs.cost(&cm_error_rates(eval_cm, tau_cm));
    let normalized = normalize(raw, default)?;
    let min = min_tdcf_constrained(&coeffs, eval_cm)?;
    Ok(TdcfReport {
        variant: Variant::Constrained,
        raw,
        default,
        normalized,
        min_normalized: min.normalized,
        tau_asv,
        tau_cm,
        argmin_tau_asv: tau_asv,
        argmin_tau_cm: min.tau_cm,
        flags: collect_flags(model, &coeffs, normalized, eval_asv.has_spoof()),
        coefficients: Some(coeffs),
    })
}

/// One row of the coefficient-vs-ASV-threshold table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientRow {
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_asv: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

/// `(C0, C1, C2)` at every ASV candidate threshold, in threshold order.
pub fn coefficient_curves(model: &CostModel, asv_set: &AsvScoreSet) -> Vec<CoefficientRow> {
    asv_error_sweep(asv_set)
        .iter()
        .map(|a| {
            let c = TdcfCoefficients::new(model, a);
            CoefficientRow {
                tau_asv: a.threshold,
                c0: c.c0,
                c1: c.c1,
                c2: c.c2,
            }
        })
        .collect()
}

/// One column of the dev/eval threshold comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolicyColumn {
    pub asv_policy: &'static str,
    pub cm_policy: &'static str,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_asv: f64,
    #[serde(serialize_with = "crate::extended::serialize")]
    pub tau_cm: f64,
    /// Normalized ASV-constrained t-DCF on evaluation data.
    pub normalized: f64,
    /// Normalized ASV floor `C0 / default` on evaluation data.
    pub asv_floor: f64,
}

/// ASV-constrained t-DCF on evaluation data under four threshold policies:
/// ASV at the eval EER, ASV at the dev EER, ASV at the dev `C0` minimum (all
/// three with the eval-oracle CM threshold), and both thresholds from dev
/// (the actual t-DCF).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdComparison {
    pub columns: Vec<PolicyColumn>,
}

pub fn compare_threshold_policies(
    model: &CostModel,
    dev_asv: &AsvScoreSet,
    dev_cm: &CmScoreSet,
    eval_asv: &AsvScoreSet,
    eval_cm: &CmScoreSet,
) -> Result<ThresholdComparison> {
    let oracle_cm = |asv_policy: &'static str, tau_asv: f64| -> Result<PolicyColumn> {
        let report = evaluate_constrained(model, eval_asv, eval_cm, tau_asv)?;
        let c0 = report.coefficients.map_or(0.0, |c| c.c0);
        Ok(PolicyColumn {
            asv_policy,
            cm_policy: "min_eval",
            tau_asv,
            tau_cm: report.tau_cm,
            normalized: report.normalized,
            asv_floor: c0 / report.default,
        })
    };
    let tau_c0 = select_asv_threshold(model, dev_asv);
    let dev_coeffs = TdcfCoefficients::new(model, &asv_error_rates(dev_asv, tau_c0));
    let tau_cm_dev = select_cm_threshold(&dev_coeffs, dev_cm);
    let actual = actual_tdcf(model, eval_asv, eval_cm, tau_c0, tau_cm_dev)?;
    let actual_c0 = actual.coefficients.map_or(0.0, |c| c.c0);
    Ok(ThresholdComparison {
        columns: vec![
            oracle_cm("eer_eval", eval_asv.eer().threshold)?,
            oracle_cm("eer_dev", dev_asv.eer().threshold)?,
            oracle_cm("min_c0_dev", tau_c0)?,
            PolicyColumn {
                asv_policy: "min_c0_dev",
                cm_policy: "min_dev",
                tau_asv: tau_c0,
                tau_cm: tau_cm_dev,
                normalized: actual.normalized,
                asv_floor: actual_c0 / actual.default,
            },
        ],
    })
}
