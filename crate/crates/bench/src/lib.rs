//! Criterion benchmarks for the eigencone kernels live under `benches/`.
