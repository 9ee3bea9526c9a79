//! Criterion benchmarks for `lzsm-core` live under `benches/`.
