//! Floating-point reductions with a fixed evaluation order, and the worker
//! pool used by parallel scans.

use rayon::{ThreadPool, ThreadPoolBuilder};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.carry += (self.sum - t) + term;
        } else {
            self.carry += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Pairwise (cascade) summation over a fixed binary tree. The split points
/// depend only on the slice length, so the result does not depend on how the
/// values were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().copied().collect::<CompensatedSum>().value();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Resolve the worker count: `RESIDUE_WORKERS` wins over the requested value,
/// and zero means "one per available core".
pub fn resolve_workers(requested: Option<usize>) -> usize {
    let from_env = std::env::var("RESIDUE_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok());
    match from_env.or(requested) {
        Some(0) | None => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
        Some(n) => n,
    }
}

pub fn worker_pool(workers: usize) -> ThreadPool {
    ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build worker pool")
}
