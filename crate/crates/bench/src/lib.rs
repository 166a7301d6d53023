//! Criterion benchmarks for `smoothquot-core`; see `benches/`.
