use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tdcf_core::gaussian_sim::sample_scores;
use tdcf_core::score_data::{asv_error_rates, asv_error_sweep, cm_error_sweep};
use tdcf_core::tdcf::{min_tdcf_constrained, min_tdcf_unconstrained};
use tdcf_core::{CostModel, SimConfig, TdcfCoefficients};

fn config(n: usize) -> SimConfig {
    SimConfig {
        p_e_asv: 0.01,
        p_e_cm: 0.02,
        xi: 0.85,
        n_tar: n,
        n_non: n,
        n_spoof: n,
        seed: 1,
    }
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_scores");
    for n in [1_000, 100_000] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sample_scores(black_box(&config(n))).unwrap())
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("error_sweep");
    for n in [1_000, 100_000] {
        let (asv, cm) = sample_scores(&config(n)).unwrap();
        g.bench_with_input(BenchmarkId::new("asv", n), &asv, |b, s| {
            b.iter(|| asv_error_sweep(s))
        });
        g.bench_with_input(BenchmarkId::new("cm", n), &cm, |b, s| {
            b.iter(|| cm_error_sweep(s))
        });
    }
    g.finish();
}

fn minima(c: &mut Criterion) {
    let model = CostModel::asvspoof19(0.05).unwrap();
    let mut g = c.benchmark_group("min_tdcf");
    g.sample_size(10);
    // 300 trials per system are searched exhaustively, the larger sets go
    // through the CM hull
    for n in [100, 1_000, 10_000] {
        let (asv, cm) = sample_scores(&config(n)).unwrap();
        let coeffs = TdcfCoefficients::new(&model, &asv_error_rates(&asv, asv.eer().threshold));
        g.bench_with_input(BenchmarkId::new("constrained", n), &n, |b, _| {
            b.iter(|| min_tdcf_constrained(&coeffs, &cm).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("joint", n), &n, |b, _| {
            b.iter(|| min_tdcf_unconstrained(&model, &asv, &cm).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, sampling, sweeps, minima);
criterion_main!(benches);
