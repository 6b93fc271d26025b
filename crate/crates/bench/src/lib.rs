//! Benchmarks for reslat-core live under `benches/`.
