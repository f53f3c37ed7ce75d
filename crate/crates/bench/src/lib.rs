//! Benchmark-only crate; the measured paths live in `benches/main.rs`.
//! Run with `cargo bench -p trisq-bench`.
