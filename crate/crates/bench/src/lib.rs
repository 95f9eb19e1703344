//! Criterion benchmarks for the hankelforge constructions; see `benches/`.
