//! Criterion benchmarks for `tdcf-core`; see `benches/`.
