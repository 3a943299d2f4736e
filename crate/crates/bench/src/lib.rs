//! Criterion benchmarks for `lrtree`; see `benches/`.
