//! Criterion benchmarks for `cyclosynth`; run with `cargo bench -p cyclosynth-bench`.
