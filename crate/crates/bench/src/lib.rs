//! Criterion benchmarks for the imbedding-sum engine live under `benches/`.
