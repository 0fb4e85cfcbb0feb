//! Criterion benchmarks for `ncrel-core`; see `benches/`.
