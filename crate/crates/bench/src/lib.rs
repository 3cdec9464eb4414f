//! Criterion benchmarks for `hurwitz-core`; see `benches/`.
