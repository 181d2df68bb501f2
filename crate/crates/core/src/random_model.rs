//! Independent Frobenius classes drawn with Chebotarev weights.
//!
//! Draws are keyed by `(seed, stream, prime)`: the ChaCha8 stream is the
//! sample number and the word position is the global index of the prime, so
//! every assignment is reproducible regardless of iteration order.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin_euler::{estimate_from_log, log_local_factor, TruncatedEstimate, MIN_HEIGHT};
use crate::field_catalog::FrobeniusClass;
use crate::numeric::pairwise_sum;
use crate::prime_poly::sieve::primes_through;
use crate::prime_poly::{is_prime, partitions, primes_below, CycleType};
use crate::{Error, Result};

pub const MIN_MOMENT_SAMPLES: usize = 1000;
pub const MAX_MOMENT_R: u32 = 8;

const TWO_32: f64 = 4294967296.0;

/// Probability mass moved to the ramified bucket at `p` is `f(p) / (1 + f(p))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deformation {
    #[default]
    None,
    /// `f(p) = 1/p`.
    InverseP,
}

impl Deformation {
    pub fn f(self, p: u64) -> f64 {
        match self {
            Deformation::None => 0.0,
            Deformation::InverseP => 1.0 / p as f64,
        }
    }

    pub fn ramified_weight(self, p: u64) -> f64 {
        let f = self.f(p);
        f / (1.0 + f)
    }
}

impl std::str::FromStr for Deformation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "0" | "none" | "zero" => Ok(Deformation::None),
            "1/p" | "inverse-p" => Ok(Deformation::InverseP),
            other => Err(format!("unknown deformation {other:?}; use 0 or 1/p")),
        }
    }
}

/// Number of conjugacy classes of `S_5`.
const MAX_CLASSES: usize = 7;

/// Class weights of `S_n` before deformation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebotarevDistribution {
    n: u32,
    classes: Vec<CycleType>,
    weights: Vec<f64>,
    /// Upper end of each class's slice of `[0, 2^32)`, last one saturating.
    #[serde(skip)]
    cut: Vec<u64>,
    /// `a_rho` of each class.
    #[serde(skip)]
    trace: Vec<f64>,
    deformation: Deformation,
}

impl ChebotarevDistribution {
    /// The Chebotarev weights `|C| / n!`.
    pub fn new(n: u32, deformation: Deformation) -> Result<Self> {
        if !(2..=5).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        let classes = partitions(n)?;
        let order: u64 = (1..=n as u64).product();
        let weights = classes
            .iter()
            .map(|c| c.class_size() as f64 / order as f64)
            .collect();
        Self::build(n, classes, weights, deformation)
    }

    /// Custom unramified class weights; every class of `S_n` must appear once
    /// and the weights must be nonnegative with sum 1.
    pub fn with_weights(
        n: u32,
        weights: Vec<(CycleType, f64)>,
        deformation: Deformation,
    ) -> Result<Self> {
        if !(2..=5).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        let classes = partitions(n)?;
        let mut w = vec![f64::NAN; classes.len()];
        for (c, v) in weights {
            let i = classes
                .iter()
                .position(|k| *k == c)
                .ok_or_else(|| Error::InvalidWeights(format!("{c} is not a class of S_{n}")))?;
            if !w[i].is_nan() {
                return Err(Error::InvalidWeights(format!("class {c} given twice")));
            }
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidWeights(format!("weight {v} for {c}")));
            }
            w[i] = v;
        }
        if let Some(i) = w.iter().position(|v| v.is_nan()) {
            return Err(Error::InvalidWeights(format!(
                "no weight for {}",
                classes[i]
            )));
        }
        let total: f64 = w.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Self::build(n, classes, w, deformation)
    }

    fn build(
        n: u32,
        classes: Vec<CycleType>,
        weights: Vec<f64>,
        deformation: Deformation,
    ) -> Result<Self> {
        let mut cut = Vec::with_capacity(classes.len());
        let mut acc = 0.0;
        for w in &weights {
            acc += w;
            cut.push((acc * TWO_32).round() as u64);
        }
        *cut.last_mut().unwrap() = 1u64 << 32;
        let trace = classes
            .iter()
            .map(|c| c.fixed_points() as f64 - 1.0)
            .collect();
        Ok(ChebotarevDistribution {
            n,
            classes,
            weights,
            cut,
            trace,
            deformation,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.n - 1
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    /// Unramified class weights at `p`, each scaled by `1 / (1 + f(p))`.
    pub fn weights_at(&self, p: u64) -> Vec<(CycleType, f64)> {
        let scale = 1.0 / (1.0 + self.deformation.f(p));
        self.classes
            .iter()
            .cloned()
            .zip(self.weights.iter().map(|w| w * scale))
            .collect()
    }

    pub fn ramified_weight(&self, p: u64) -> f64 {
        self.deformation.ramified_weight(p)
    }

    fn class_index(&self, u: u32) -> usize {
        // Branchless: cuts are nondecreasing and the last one exceeds every word.
        let u = u as u64;
        self.cut[..self.cut.len() - 1]
            .iter()
            .map(|&c| (u >= c) as usize)
            .sum()
    }

    /// Map one uniform 32-bit word to a class at `p`. The ramified bucket
    /// takes the bottom of the range; the rest is rescaled onto the classes.
    fn classify(&self, u: u32, p: u64) -> Option<usize> {
        match self.deformation {
            Deformation::None => Some(self.class_index(u)),
            d => {
                let r = d.ramified_weight(p);
                let v = u as f64 / TWO_32;
                if v < r {
                    return None;
                }
                let w = ((v - r) / (1.0 - r) * TWO_32).min(TWO_32 - 1.0);
                Some(self.class_index(w as u32))
            }
        }
    }

    fn class_of(&self, idx: Option<usize>) -> FrobeniusClass {
        match idx {
            Some(i) => FrobeniusClass::Unramified(self.classes[i].clone()),
            None => FrobeniusClass::Ramified { surviving: vec![1] },
        }
    }
}

/// Frobenius assignments over a list of primes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSample {
    pub seed: u64,
    pub stream: u64,
    pub n: u32,
    /// `(p, class)` in increasing `p`. Ramified draws carry degrees `[1]`,
    /// which makes the local factor 1 and the trace 0.
    pub assignments: Vec<(u64, FrobeniusClass)>,
}

impl ModelSample {
    /// Every prime below `x` gets the class `c`.
    pub fn forced(c: &CycleType, x: f64) -> Self {
        ModelSample {
            seed: 0,
            stream: 0,
            n: c.n(),
            assignments: primes_below(x)
                .into_iter()
                .map(|p| (p, FrobeniusClass::Unramified(c.clone())))
                .collect(),
        }
    }

    pub fn from_assignments(n: u32, assignments: Vec<(u64, FrobeniusClass)>) -> Self {
        ModelSample {
            seed: 0,
            stream: 0,
            n,
            assignments,
        }
    }
}

/// Zero-based positions of `primes` in the sequence of all primes.
fn prime_positions(primes: &[u64]) -> Result<Vec<u64>> {
    let Some(&max) = primes.iter().max() else {
        return Ok(Vec::new());
    };
    let all = primes_through(max);
    primes
        .iter()
        .map(|&p| {
            all.binary_search(&p)
                .map(|i| i as u64)
                .map_err(|_| Error::NotPrime(p))
        })
        .collect()
}

fn keyed_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Independent draws at each of `primes` from stream `stream`.
pub fn sample_frobenius_stream(
    dist: &ChebotarevDistribution,
    primes: &[u64],
    seed: u64,
    stream: u64,
) -> Result<ModelSample> {
    let pos = prime_positions(primes)?;
    let mut rng = keyed_rng(seed, stream);
    let mut assignments = Vec::with_capacity(primes.len());
    let mut next: Option<u64> = None;
    for (&p, &i) in primes.iter().zip(&pos) {
        if next != Some(i) {
            rng.set_word_pos(i as u128);
        }
        let u = rng.next_u32();
        next = Some(i + 1);
        assignments.push((p, dist.class_of(dist.classify(u, p))));
    }
    assignments.sort_by_key(|a| a.0);
    Ok(ModelSample {
        seed,
        stream,
        n: dist.n,
        assignments,
    })
}

pub fn sample_frobenius_sequence(
    dist: &ChebotarevDistribution,
    primes: &[u64],
    seed: u64,
) -> Result<ModelSample> {
    sample_frobenius_stream(dist, primes, seed, 0)
}

/// Truncated `L(1, rho)` over the classes of a sample.
pub fn l1_of_sample(sample: &ModelSample, x: f64) -> Result<TruncatedEstimate> {
    if !(x >= MIN_HEIGHT) {
        return Err(Error::OutOfRange(format!(
            "truncation height x = {x}; need x >= 10"
        )));
    }
    let mut logs = Vec::new();
    let mut ramified = Vec::new();
    for (p, c) in &sample.assignments {
        if (*p as f64) >= x {
            continue;
        }
        if c.is_ramified() {
            ramified.push(*p);
        }
        logs.push(log_local_factor(c.degrees(), *p));
    }
    Ok(estimate_from_log(
        pairwise_sum(&logs),
        x,
        sample.n - 1,
        ramified,
        Vec::new(),
    ))
}

pub fn model_l1(dist: &ChebotarevDistribution, x: f64, seed: u64) -> Result<TruncatedEstimate> {
    if !(x >= MIN_HEIGHT) {
        return Err(Error::OutOfRange(format!(
            "truncation height x = {x}; need x >= 10"
        )));
    }
    let sample = sample_frobenius_sequence(dist, &primes_below(x), seed)?;
    l1_of_sample(&sample, x)
}

/// `sum_{y < p < x} a_rho(p) / p` for samples `0..samples`, in sample order.
pub fn model_small_sums(
    dist: &ChebotarevDistribution,
    y: f64,
    x: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if !(y <= x) {
        return Err(Error::Precondition(format!(
            "need y <= x, got y = {y}, x = {x}"
        )));
    }
    let all = primes_below(x);
    let start = all.partition_point(|&p| p as f64 <= y);
    let primes = &all[start..];
    let inv: Vec<f64> = primes.iter().map(|&p| 1.0 / p as f64).collect();
    let first = start as u128;
    // Fixed-size copies for the unweighted hot loop; padding cuts are never reached.
    let mut cuts = [u64::MAX; MAX_CLASSES - 1];
    let mut traces = [0.0; MAX_CLASSES];
    let k = dist.cut.len();
    cuts[..k - 1].copy_from_slice(&dist.cut[..k - 1]);
    traces[..k].copy_from_slice(&dist.trace);
    Ok((0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = keyed_rng(seed, s);
            rng.set_word_pos(first);
            let mut acc = 0.0;
            if dist.deformation == Deformation::None {
                for &ip in &inv {
                    let u = rng.next_u32() as u64;
                    let i: usize = cuts.iter().map(|&c| (u >= c) as usize).sum();
                    acc += traces[i] * ip;
                }
            } else {
                for (&p, &ip) in primes.iter().zip(&inv) {
                    if let Some(i) = dist.classify(rng.next_u32(), p) {
                        acc += dist.trace[i] * ip;
                    }
                }
            }
            acc
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub r: u32,
    pub mean: f64,
    /// Standard error of the mean, `sd / sqrt(samples)`.
    pub std_error: f64,
    pub samples: usize,
}

/// Mean of `s^{2r}` over `values` with its standard error.
pub fn moment_of(values: &[f64], r: u32) -> MomentEstimate {
    let powers: Vec<f64> = values.iter().map(|v| v.powi(2 * r as i32)).collect();
    let n = powers.len().max(1) as f64;
    let mean = pairwise_sum(&powers) / n;
    let dev: Vec<f64> = powers.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = if powers.len() > 1 {
        pairwise_sum(&dev) / (n - 1.0)
    } else {
        0.0
    };
    MomentEstimate {
        r,
        mean,
        std_error: (var / n).sqrt(),
        samples: powers.len(),
    }
}

/// Empirical `E[(sum_{y<p<x} a_rho(p)/p)^{2r}]` for each `r` in `rs`, from
/// one shared set of draws.
pub fn model_moments(
    dist: &ChebotarevDistribution,
    y: f64,
    x: f64,
    rs: &[u32],
    samples: usize,
    seed: u64,
) -> Result<Vec<MomentEstimate>> {
    if samples < MIN_MOMENT_SAMPLES {
        return Err(Error::Precondition(format!(
            "{samples} samples; need at least {MIN_MOMENT_SAMPLES}"
        )));
    }
    if let Some(r) = rs.iter().find(|&&r| r > MAX_MOMENT_R) {
        return Err(Error::OutOfRange(format!(
            "r = {r}; need r <= {MAX_MOMENT_R}"
        )));
    }
    let sums = model_small_sums(dist, y, x, samples, seed)?;
    Ok(rs.iter().map(|&r| moment_of(&sums, r)).collect())
}

pub fn model_moment(
    dist: &ChebotarevDistribution,
    y: f64,
    x: f64,
    r: u32,
    samples: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    Ok(model_moments(dist, y, x, &[r], samples, seed)?.remove(0))
}

/// Class counts at `p` over streams `0..draws`.
pub fn class_frequencies(
    dist: &ChebotarevDistribution,
    p: u64,
    draws: u64,
    seed: u64,
) -> Result<(Vec<u64>, u64)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pos = prime_positions(&[p])?[0] as u128;
    let mut counts = vec![0u64; dist.classes.len()];
    let mut ramified = 0;
    for s in 0..draws {
        let mut rng = keyed_rng(seed, s);
        rng.set_word_pos(pos);
        match dist.classify(rng.next_u32(), p) {
            Some(i) => counts[i] += 1,
            None => ramified += 1,
        }
    }
    Ok((counts, ramified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin_euler::envelope_products;

    #[test]
    fn weights_are_class_sizes() {
        let d = ChebotarevDistribution::new(3, Deformation::None).unwrap();
        let w: Vec<f64> = d.weights_at(5).iter().map(|x| x.1).collect();
        assert_eq!(w, vec![1.0 / 3.0, 0.5, 1.0 / 6.0]);
        let d = ChebotarevDistribution::new(4, Deformation::InverseP).unwrap();
        let total: f64 = d.weights_at(7).iter().map(|x| x.1).sum();
        assert!((total + d.ramified_weight(7) - 1.0).abs() < 1e-15);
        assert!((total - 7.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn bad_weights() {
        let c = |p: &[u32]| CycleType::new(p.to_vec()).unwrap();
        assert!(ChebotarevDistribution::with_weights(
            3,
            vec![(c(&[3]), 0.5), (c(&[2, 1]), 0.5)],
            Deformation::None
        )
        .is_err());
        assert!(ChebotarevDistribution::with_weights(
            3,
            vec![(c(&[3]), 0.5), (c(&[2, 1]), 0.6), (c(&[1, 1, 1]), -0.1)],
            Deformation::None
        )
        .is_err());
        assert!(ChebotarevDistribution::with_weights(
            3,
            vec![(c(&[3]), 0.2), (c(&[2, 1]), 0.2), (c(&[1, 1, 1]), 0.6)],
            Deformation::None
        )
        .is_ok());
    }

    #[test]
    fn class_frequencies_match_chebotarev() {
        let d = ChebotarevDistribution::new(3, Deformation::None).unwrap();
        let n = 100_000u64;
        for p in [2u64, 101] {
            let (counts, ram) = class_frequencies(&d, p, n, 7).unwrap();
            assert_eq!(ram, 0);
            for (c, k) in d.classes().iter().zip(&counts) {
                let prob = c.class_size() as f64 / 6.0;
                let sigma = (prob * (1.0 - prob) / n as f64).sqrt();
                assert!(
                    (*k as f64 / n as f64 - prob).abs() <= 3.0 * sigma,
                    "{c} at {p}: {k}"
                );
            }
        }
    }

    #[test]
    fn sampling_is_keyed_by_prime() {
        let d = ChebotarevDistribution::new(4, Deformation::None).unwrap();
        let primes = primes_below(500.0);
        let a = sample_frobenius_sequence(&d, &primes, 11).unwrap();
        assert_eq!(a, sample_frobenius_sequence(&d, &primes, 11).unwrap());
        let odd: Vec<u64> = primes.iter().copied().filter(|p| p % 4 == 1).collect();
        let b = sample_frobenius_sequence(&d, &odd, 11).unwrap();
        for (p, c) in &b.assignments {
            assert_eq!(a.assignments.iter().find(|x| x.0 == *p).unwrap().1, *c);
        }
        assert_ne!(a, sample_frobenius_sequence(&d, &primes, 12).unwrap());
        assert!(sample_frobenius_sequence(&d, &[9], 1).is_err());
    }

    #[test]
    fn forced_samples_hit_the_envelopes() {
        for n in 3..=5u32 {
            let x = 1e4;
            let (lo, hi) = envelope_products(n - 1, x);
            let top = l1_of_sample(&ModelSample::forced(&CycleType::identity(n), x), x).unwrap();
            let bottom =
                l1_of_sample(&ModelSample::forced(&CycleType::full_cycle(n), x), x).unwrap();
            assert!((top.value / hi - 1.0).abs() < 1e-12);
            assert!((bottom.value / lo - 1.0).abs() < 1e-12);
            let d = ChebotarevDistribution::new(n, Deformation::InverseP).unwrap();
            let v = model_l1(&d, x, 3).unwrap().value;
            assert!(v > bottom.value && v < top.value);
        }
    }

    #[test]
    fn empty_range_gives_zero() {
        let d = ChebotarevDistribution::new(3, Deformation::None).unwrap();
        let m = model_moment(&d, 1e3, 1e3, 1, 1000, 0).unwrap();
        assert_eq!(m.mean, 0.0);
        assert!(model_moment(&d, 1e3, 1e4, 9, 1000, 0).is_err());
        assert!(model_moment(&d, 1e3, 1e4, 1, 999, 0).is_err());
    }

    #[test]
    fn deformation_moves_mass_to_ramified() {
        let d = ChebotarevDistribution::new(3, Deformation::InverseP).unwrap();
        let n = 100_000u64;
        let (_, ram) = class_frequencies(&d, 3, n, 1).unwrap();
        let prob = 0.25;
        let sigma = (prob * (1.0 - prob) / n as f64).sqrt();
        assert!((ram as f64 / n as f64 - prob).abs() < 4.0 * sigma);
    }
}
