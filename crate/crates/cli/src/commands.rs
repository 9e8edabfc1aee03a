use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tdcf_core::extended::format;
use tdcf_core::gaussian_sim::{self, analytic_min_constrained, cm_grid, sample_records};
use tdcf_core::score_data::{asv_error_rates, cm_error_rates, parse_asv_scores, parse_cm_scores};
use tdcf_core::tdcf::{
    actual_tdcf, coefficient_curves, compare_threshold_policies, evaluate_constrained,
    evaluate_unconstrained, min_tdcf_constrained, select_asv_threshold, select_cm_threshold,
    tdcf_surface,
};
use tdcf_core::{AsvScoreSet, CmScoreSet, CostModel, GaussianParams, SimConfig, TdcfCoefficients};

use crate::args::{
    CoefficientsArgs, CostArgs, EvaluateArgs, Policy, Preset, SelectArgs, SimulateArgs, SweepArgs,
};
use crate::error::CliError;
use crate::manifest::{CostModelDoc, InputDigest, RunManifest};
use crate::report::{
    AsvOperatingPoint, AttackReport, Coefficients, DevThresholds, EerPair, EvaluateReport,
    ManifestDoc, References, SelectReport, TdcfDoc, TrialCounts,
};

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn in_file<'a>(path: &'a Path, context: &'a str) -> impl Fn(tdcf_core::Error) -> CliError + 'a {
    move |source| CliError::Input {
        path: path.to_path_buf(),
        context: context.to_string(),
        source,
    }
}

fn warn_duplicates(path: &Path, n: usize) {
    if n > 0 {
        eprintln!("warning: {}: {n} duplicate trial id(s)", path.display());
    }
}

fn load_asv(path: &Path, role: &'static str) -> Result<(AsvScoreSet, InputDigest)> {
    let bytes = read(path)?;
    let set = parse_asv_scores(&bytes[..]).map_err(in_file(path, "ASV scores"))?;
    warn_duplicates(path, set.duplicate_trial_ids());
    Ok((set, InputDigest::new(role, path, &bytes)))
}

fn load_cm(path: &Path, role: &'static str) -> Result<(CmScoreSet, InputDigest)> {
    let bytes = read(path)?;
    let set = parse_cm_scores(&bytes[..]).map_err(in_file(path, "CM scores"))?;
    warn_duplicates(path, set.duplicate_trial_ids());
    Ok((set, InputDigest::new(role, path, &bytes)))
}

fn cost_model(args: &CostArgs, inputs: &mut Vec<InputDigest>) -> Result<(CostModel, CostModelDoc)> {
    match &args.cost_model {
        Some(path) => {
            let bytes = read(path)?;
            let text = String::from_utf8_lossy(&bytes);
            let model = CostModel::from_key_values(&text).map_err(in_file(path, "cost model"))?;
            inputs.push(InputDigest::new("cost_model", path, &bytes));
            Ok((model, CostModelDoc::new(&model, "file")))
        }
        None => match args.preset {
            Preset::Asvspoof19 => {
                let model = CostModel::asvspoof19(args.pi_spoof)?;
                Ok((model, CostModelDoc::new(&model, "asvspoof19")))
            }
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Writes `name` into `dir`, or to stdout without one.
fn emit(out: Option<&PathBuf>, name: &str, contents: &str) -> Result<()> {
    match out {
        Some(dir) => {
            out_dir(dir)?;
            write(&dir.join(name), contents)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

pub fn evaluate(args: &EvaluateArgs) -> Result<()> {
    let (asv, asv_digest) = load_asv(&args.asv, "asv")?;
    let (cm, cm_digest) = load_cm(&args.cm, "cm")?;
    let mut inputs = vec![asv_digest, cm_digest];
    let (model, model_doc) = cost_model(&args.cost, &mut inputs)?;

    let report = match args.policy {
        Policy::Min => evaluate_unconstrained(&model, &asv, &cm)?,
        policy => {
            let tau_asv = match policy {
                Policy::Eer => asv.eer().threshold,
                Policy::MinC0 => select_asv_threshold(&model, &asv),
                Policy::Fixed(v) => v,
                Policy::Min => unreachable!(),
            };
            evaluate_constrained(&model, &asv, &cm, tau_asv)?
        }
    };

    let per_attack = if args.per_attack {
        let mut out = Vec::new();
        for id in asv.attack_ids() {
            let asv_sub = asv
                .per_attack_subset(&id)
                .map_err(in_file(&args.asv, "ASV scores"))?;
            let cm_sub = cm
                .per_attack_subset(&id)
                .map_err(in_file(&args.cm, "CM scores"))?;
            let r = evaluate_constrained(&model, &asv_sub, &cm_sub, report.tau_asv)?;
            out.push(AttackReport {
                attack_id: id,
                p_fa_spoof: r.coefficients.map_or(0.0, |c| c.asv.p_fa_spoof),
                coefficients: r.coefficients.as_ref().map(Coefficients::from),
                min_normalized: r.min_normalized,
                tau_cm: r.argmin_tau_cm,
                flags: r.flags,
            });
        }
        Some(out)
    } else {
        None
    };

    let asv_rates = asv_error_rates(&asv, report.tau_asv);
    let doc = EvaluateReport {
        manifest: RunManifest::new("evaluate", model_doc, inputs, None),
        cost_model: model_doc,
        asv_operating_point: AsvOperatingPoint {
            policy: args.policy.name(),
            rates: asv_rates,
        },
        cm_operating_point: cm_error_rates(&cm, report.tau_cm),
        coefficients: report.coefficients.as_ref().map(Coefficients::from),
        tdcf: TdcfDoc::from(&report),
        flags: report.flags.clone(),
        references: References::new(&report),
        eer: EerPair {
            asv: asv.eer(),
            cm: cm.eer(),
        },
        trials: TrialCounts::new(&asv, &cm),
        per_attack,
    };
    emit(args.out.as_ref(), "report.json", &to_json(&doc))
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let (asv, asv_digest) = load_asv(&args.asv, "asv")?;
    let (cm, cm_digest) = load_cm(&args.cm, "cm")?;
    let mut inputs = vec![asv_digest, cm_digest];
    let (model, model_doc) = cost_model(&args.cost, &mut inputs)?;
    let surface = tdcf_surface(&model, &asv, &cm)?;
    let csv = surface_csv(&surface.tau_asv, &surface.tau_cm, &surface.values);
    if let Some(dir) = &args.out {
        let manifest = ManifestDoc {
            manifest: RunManifest::new("sweep", model_doc, inputs, None),
            details: serde_json::json!({
                "rows": surface.tau_asv.len(),
                "columns": surface.tau_cm.len(),
            }),
        };
        emit(Some(dir), "surface.manifest.json", &to_json(&manifest))?;
    }
    emit(args.out.as_ref(), "surface.csv", &csv)
}

/// Header row `tau_asv,<tau_cm...>`, then one row per ASV threshold.
fn surface_csv(tau_asv: &[f64], tau_cm: &[f64], values: &[Vec<f64>]) -> String {
    let mut s = String::from("tau_asv");
    for t in tau_cm {
        s.push(',');
        s.push_str(&format(*t));
    }
    s.push('\n');
    for (t, row) in tau_asv.iter().zip(values) {
        s.push_str(&format(*t));
        for v in row {
            s.push(',');
            s.push_str(&format(*v));
        }
        s.push('\n');
    }
    s
}

pub fn coefficients(args: &CoefficientsArgs) -> Result<()> {
    let (asv, asv_digest) = load_asv(&args.asv, "asv")?;
    let mut inputs = vec![asv_digest];
    let (model, model_doc) = cost_model(&args.cost, &mut inputs)?;
    let mut csv = String::new();
    if args.per_attack {
        csv.push_str("attack_id,tau_asv,c0,c1,c2\n");
        for id in asv.attack_ids() {
            let sub = asv
                .per_attack_subset(&id)
                .map_err(in_file(&args.asv, "ASV scores"))?;
            for r in coefficient_curves(&model, &sub) {
                let _ = writeln!(csv, "{id},{},{},{},{}", format(r.tau_asv), r.c0, r.c1, r.c2);
            }
        }
    } else {
        csv.push_str("tau_asv,c0,c1,c2\n");
        for r in coefficient_curves(&model, &asv) {
            let _ = writeln!(csv, "{},{},{},{}", format(r.tau_asv), r.c0, r.c1, r.c2);
        }
    }
    if let Some(dir) = &args.out {
        let manifest = ManifestDoc {
            manifest: RunManifest::new("coefficients", model_doc, inputs, None),
            details: serde_json::json!({ "per_attack": args.per_attack }),
        };
        emit(Some(dir), "coefficients.manifest.json", &to_json(&manifest))?;
    }
    emit(args.out.as_ref(), "coefficients.csv", &csv)
}

#[derive(Serialize)]
struct SimulateDetails {
    config: SimConfig,
    params: GaussianParams,
    sigma_asv: f64,
    sigma_cm: f64,
    analytic: AnalyticSummary,
    files: Vec<String>,
}

/// Closed-form references at the ASV EER point (`tau_asv = 0`).
#[derive(Serialize)]
struct AnalyticSummary {
    eer_asv: f64,
    eer_cm: f64,
    p_fa_spoof: f64,
    coefficients: Coefficients,
    min_normalized: f64,
    #[serde(serialize_with = "tdcf_core::extended::serialize")]
    argmin_tau_cm: f64,
}

// CM grid resolution for the analytic constrained minimum.
const ANALYTIC_GRID: usize = 4001;

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let config = SimConfig {
        p_e_asv: args.p_e_asv,
        p_e_cm: args.p_e_cm,
        xi: args.xi,
        n_tar: args.n_tar,
        n_non: args.n_non,
        n_spoof: args.n_spoof,
        seed: args.seed,
    };
    let params = GaussianParams::from_config(&config)?;
    let mut inputs = Vec::new();
    let (model, model_doc) = cost_model(&args.cost, &mut inputs)?;
    let records = sample_records(&config)?;

    out_dir(&args.out)?;
    let mut files = Vec::new();
    for (name, recs) in [
        ("asv_scores.txt", &records.asv),
        ("cm_scores.txt", &records.cm),
    ] {
        let mut text = String::with_capacity(recs.len() * 32);
        for r in recs {
            let _ = writeln!(text, "{r}");
        }
        write(&args.out.join(name), &text)?;
        files.push(name.to_string());
    }

    if let Some(n) = args.surface {
        let s = gaussian_sim::analytic_surface(&params, &model, n)?;
        write(
            &args.out.join("analytic_surface.csv"),
            &surface_csv(&s.tau_asv, &s.tau_cm, &s.values),
        )?;
        files.push("analytic_surface.csv".into());
    }

    let asv0 = params.asv_rates(0.0);
    let coeffs = TdcfCoefficients::new(&model, &asv0);
    let (min_normalized, argmin_tau_cm) =
        analytic_min_constrained(&params, &model, 0.0, &cm_grid(&params, ANALYTIC_GRID))?;
    let details = SimulateDetails {
        config,
        params,
        sigma_asv: params.sigma_asv(),
        sigma_cm: params.sigma_cm(),
        analytic: AnalyticSummary {
            eer_asv: asv0.p_miss,
            eer_cm: params.cm_rates(0.0).p_miss,
            p_fa_spoof: asv0.p_fa_spoof,
            coefficients: Coefficients::from(&coeffs),
            min_normalized,
            argmin_tau_cm,
        },
        files,
    };
    let manifest = ManifestDoc {
        manifest: RunManifest::new("simulate", model_doc, inputs, Some(args.seed)),
        details,
    };
    write(&args.out.join("simulation.json"), &to_json(&manifest))
}

pub fn select_thresholds(args: &SelectArgs) -> Result<()> {
    let (dev_asv, d0) = load_asv(&args.dev_asv, "dev_asv")?;
    let (dev_cm, d1) = load_cm(&args.dev_cm, "dev_cm")?;
    let (eval_asv, d2) = load_asv(&args.eval_asv, "eval_asv")?;
    let (eval_cm, d3) = load_cm(&args.eval_cm, "eval_cm")?;
    let mut inputs = vec![d0, d1, d2, d3];
    let (model, model_doc) = cost_model(&args.cost, &mut inputs)?;

    let tau_asv = select_asv_threshold(&model, &dev_asv);
    let dev_coeffs = TdcfCoefficients::new(&model, &asv_error_rates(&dev_asv, tau_asv));
    // surfaces a degenerate dev default as exit code 2 rather than silently
    // falling back to the raw cost
    min_tdcf_constrained(&dev_coeffs, &dev_cm)?;
    let tau_cm = select_cm_threshold(&dev_coeffs, &dev_cm);
    let actual = actual_tdcf(&model, &eval_asv, &eval_cm, tau_asv, tau_cm)?;
    let comparison = compare_threshold_policies(&model, &dev_asv, &dev_cm, &eval_asv, &eval_cm)?;

    let doc = SelectReport {
        manifest: RunManifest::new("select-thresholds", model_doc, inputs, None),
        cost_model: model_doc,
        dev: DevThresholds { tau_asv, tau_cm },
        tdcf: TdcfDoc::from(&actual),
        coefficients: actual.coefficients.as_ref().map(Coefficients::from),
        flags: actual.flags.clone(),
        comparison: comparison.columns,
    };
    emit(args.out.as_ref(), "report.json", &to_json(&doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_csv_is_rectangular() {
        let csv = surface_csv(
            &[f64::NEG_INFINITY, 0.5, f64::INFINITY],
            &[f64::NEG_INFINITY, f64::INFINITY],
            &[vec![1.0, 2.0], vec![0.25, 1.0], vec![1.0, 1.0]],
        );
        let rows: Vec<_> = csv.lines().collect();
        assert_eq!(rows[0], "tau_asv,-inf,inf");
        assert_eq!(rows[2], "0.5,0.25,1");
        assert!(rows.iter().all(|r| r.split(',').count() == 3));
    }
}
