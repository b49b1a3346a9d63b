// SPDX-License-Identifier: Apache-2.0

//! Throughput of segment rewriting against the array round trip.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::apply::{apply_move, ApplyOptions};
use crate::fuzz::Walker;
use crate::oracle::oracle_apply;

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub iterations: usize,
    pub segment_time: Duration,
    pub array_time: Duration,
}

impl BenchReport {
    pub fn segment_ops_per_sec(&self) -> f64 {
        self.iterations as f64 / self.segment_time.as_secs_f64().max(f64::MIN_POSITIVE)
    }

    pub fn array_ops_per_sec(&self) -> f64 {
        self.iterations as f64 / self.array_time.as_secs_f64().max(f64::MIN_POSITIVE)
    }

    /// Array throughput divided by segment throughput.
    pub fn ratio(&self) -> f64 {
        self.array_ops_per_sec() / self.segment_ops_per_sec()
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(
            f,
            "segment rewrite: {:.3} ms total, {:.0} ops/sec",
            self.segment_time.as_secs_f64() * 1e3,
            self.segment_ops_per_sec()
        )?;
        writeln!(
            f,
            "array round trip: {:.3} ms total, {:.0} ops/sec",
            self.array_time.as_secs_f64() * 1e3,
            self.array_ops_per_sec()
        )?;
        write!(f, "ratio (array/segment throughput): {:.3}", self.ratio())
    }
}

/// Times both paths over the same fuzzed workload. Each array-path call
/// includes its FEN to array and array to FEN conversions.
pub fn run(seed: u64, iterations: usize, opts: ApplyOptions) -> BenchReport {
    let workload: Vec<(String, String)> = Walker::new(seed, opts).take(iterations).collect();

    let start = Instant::now();
    for (fen, mv) in &workload {
        let _ = black_box(apply_move(black_box(fen), black_box(mv), opts));
    }
    let segment_time = start.elapsed();

    let start = Instant::now();
    for (fen, mv) in &workload {
        let _ = black_box(oracle_apply(black_box(fen), black_box(mv), opts));
    }
    let array_time = start.elapsed();

    BenchReport {
        iterations,
        segment_time,
        array_time,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_format() {
        let r = run(1, 200, ApplyOptions::default());
        assert_eq!(r.iterations, 200);
        assert!(r.segment_ops_per_sec() > 0.0 && r.array_ops_per_sec() > 0.0);
        let text = r.to_string();
        assert!(text.contains("iterations: 200"));
        assert!(text.contains("segment rewrite:"));
        assert!(text.contains("array round trip:"));
        assert!(text.contains("ratio"));
    }
}
