//! Criterion benchmarks for the `qlambda` crate live under `benches/`.
