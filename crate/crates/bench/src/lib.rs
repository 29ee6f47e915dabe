//! Criterion benchmarks for `bracket-core`; see `benches/`.
