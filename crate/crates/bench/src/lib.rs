//! Benchmark-only crate; see `benches/gates.rs`.
