//! Benchmarks for barannikov-core; see `benches/`.
