//! Benchmarks for the decomposition engine live in `benches/`.
