use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scan::common_degree;
use crate::field_catalog::{frobenius_class, NumberFieldRecord};
use crate::numeric::CompensatedSum;
use crate::prime_poly::primes_between;
use crate::random_model::{
    model_small_sums, moment_of, ChebotarevDistribution, ModelSample, MAX_MOMENT_R,
};
use crate::{Error, Result};

/// Below this many values a moment report carries a low-power warning.
pub const LOW_POWER_SIZE: usize = 30;

pub enum SmallSumSource<'a> {
    Field(&'a NumberFieldRecord),
    Sample(&'a ModelSample),
}

/// `sum_{y < p < x} a_rho(p) / p`. At ramified primes the trace is taken over
/// the degrees of the squarefree part of the factorization.
pub fn small_prime_sum(source: SmallSumSource<'_>, y: f64, x: f64) -> Result<f64> {
    if !(y <= x) {
        return Err(Error::Precondition(format!(
            "need y <= x, got y = {y}, x = {x}"
        )));
    }
    let mut acc = CompensatedSum::new();
    match source {
        SmallSumSource::Field(f) => {
            for p in primes_between(y, x) {
                let a = frobenius_class(f, p)?.class.trace();
                if a != 0 {
                    acc.add(a as f64 / p as f64);
                }
            }
        }
        SmallSumSource::Sample(s) => {
            for (p, c) in &s.assignments {
                let pf = *p as f64;
                if pf > y && pf < x {
                    let a = c.trace();
                    if a != 0 {
                        acc.add(a as f64 / pf);
                    }
                }
            }
        }
    }
    Ok(acc.value())
}

/// `2^{2r-1} d^{2r} ((2r)!/r!) 2^{2r} / (y log y)^r`.
pub fn moment_bound_rhs(d: u32, r: u32, y: f64) -> Result<f64> {
    if r < 1 {
        return Err(Error::OutOfRange("moment bound needs r >= 1".into()));
    }
    if !(y >= 3.0) {
        return Err(Error::OutOfRange(format!(
            "moment bound needs y >= 3, got {y}"
        )));
    }
    let ri = r as i32;
    let ratio: f64 = (r + 1..=2 * r).map(|k| k as f64).product();
    Ok(
        2f64.powi(2 * ri - 1) * (d as f64).powi(2 * ri) * ratio * 2f64.powi(2 * ri)
            / (y * y.ln()).powi(ri),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub source: String,
    pub d: u32,
    pub y: f64,
    pub x: f64,
    pub r: u32,
    pub sample_size: usize,
    pub statistic: f64,
    pub std_error: f64,
    pub bound: Option<f64>,
    /// `bound / statistic`.
    pub slack: Option<f64>,
    pub status: MomentStatus,
    pub low_power: bool,
}

pub enum MomentSource<'a> {
    Catalog(&'a [NumberFieldRecord]),
    Model {
        dist: &'a ChebotarevDistribution,
        samples: usize,
        seed: u64,
    },
}

fn report(source: String, d: u32, y: f64, x: f64, r: u32, sums: &[f64]) -> Result<MomentReport> {
    let n = sums.len();
    if r == 0 {
        return Ok(MomentReport {
            source,
            d,
            y,
            x,
            r,
            sample_size: n,
            statistic: 1.0,
            std_error: 0.0,
            bound: None,
            slack: None,
            status: MomentStatus::NotApplicable,
            low_power: n < LOW_POWER_SIZE,
        });
    }
    let m = moment_of(sums, r);
    let bound = moment_bound_rhs(d, r, y)?;
    Ok(MomentReport {
        source,
        d,
        y,
        x,
        r,
        sample_size: n,
        statistic: m.mean,
        std_error: m.std_error,
        bound: Some(bound),
        slack: Some(bound / m.mean),
        status: if m.mean <= bound {
            MomentStatus::Pass
        } else {
            MomentStatus::Fail
        },
        low_power: n < LOW_POWER_SIZE,
    })
}

/// Mean of `small_prime_sum^{2r}` for each `r` in `rs`, over a catalog or
/// model draws, compared with [`moment_bound_rhs`].
pub fn empirical_moments(
    source: MomentSource<'_>,
    y: f64,
    x: f64,
    rs: &[u32],
) -> Result<Vec<MomentReport>> {
    if let Some(r) = rs.iter().find(|&&r| r > MAX_MOMENT_R) {
        return Err(Error::OutOfRange(format!(
            "r = {r}; need r <= {MAX_MOMENT_R}"
        )));
    }
    let (label, d, sums) = match source {
        MomentSource::Catalog(cat) => {
            let d = common_degree(cat)? as u32 - 1;
            let sums = cat
                .par_iter()
                .map(|f| small_prime_sum(SmallSumSource::Field(f), y, x))
                .collect::<Result<Vec<f64>>>()?;
            ("catalog".to_string(), d, sums)
        }
        MomentSource::Model {
            dist,
            samples,
            seed,
        } => {
            let sums = model_small_sums(dist, y, x, samples, seed)?;
            (
                format!("model(n={}, f={:?})", dist.n(), dist.deformation()),
                dist.d(),
                sums,
            )
        }
    };
    if sums.len() < LOW_POWER_SIZE {
        log::warn!("moment statistic over {} values has low power", sums.len());
    }
    rs.iter()
        .map(|&r| report(label.clone(), d, y, x, r, &sums))
        .collect()
}

pub fn empirical_moment(source: MomentSource<'_>, y: f64, x: f64, r: u32) -> Result<MomentReport> {
    Ok(empirical_moments(source, y, x, &[r])?.remove(0))
}
