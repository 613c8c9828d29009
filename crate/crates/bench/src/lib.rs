//! Criterion benchmarks for the oneplace workspace; see `benches/`.
