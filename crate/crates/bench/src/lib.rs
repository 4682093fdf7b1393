//! Criterion benchmarks for the core crate; see `benches/abel.rs`.
