//! Benchmarks for the symbol evaluators live in `benches/`.
