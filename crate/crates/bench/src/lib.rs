//! Criterion benchmarks for `gnomon`; see `benches/`.
