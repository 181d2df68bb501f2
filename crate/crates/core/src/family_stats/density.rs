use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scan::common_degree;
use crate::field_catalog::{frobenius_class, FrobeniusClass, NumberFieldRecord};
use crate::prime_poly::{partitions, CycleType};
use crate::{Error, Result};

pub const MIN_UNRAMIFIED: usize = 30;
pub const DEFAULT_SIGMA_THRESHOLD: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassFrequency {
    pub class: CycleType,
    pub count: usize,
    pub frequency: f64,
    pub expected: f64,
    /// Binomial standard deviation of the frequency under the expectation.
    pub sigma: f64,
    pub z: f64,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub p: u64,
    pub n: u32,
    pub unramified: usize,
    pub ramified_excluded: usize,
    pub sigma_threshold: f64,
    pub classes: Vec<ClassFrequency>,
    pub pass: bool,
}

/// Frobenius class frequencies at `p` among records unramified at `p`,
/// against `|C| / n!`.
pub fn chebotarev_densities(
    catalog: &[NumberFieldRecord],
    p: u64,
    sigma_threshold: f64,
) -> Result<DensityReport> {
    let n = common_degree(catalog)? as u32;
    let observed: Vec<FrobeniusClass> = catalog
        .par_iter()
        .map(|r| frobenius_class(r, p).map(|o| o.class))
        .collect::<Result<_>>()?;
    let classes = partitions(n)?;
    let mut counts = vec![0usize; classes.len()];
    let mut ramified = 0;
    for c in &observed {
        match c {
            FrobeniusClass::Unramified(t) => {
                counts[classes
                    .iter()
                    .position(|k| k == t)
                    .expect("cycle type of degree n")] += 1;
            }
            FrobeniusClass::Ramified { .. } => ramified += 1,
        }
    }
    let total: usize = counts.iter().sum();
    if total < MIN_UNRAMIFIED {
        return Err(Error::TooFewUnramified {
            p,
            found: total,
            needed: MIN_UNRAMIFIED,
        });
    }
    let order: u64 = (1..=n as u64).product();
    let rows: Vec<ClassFrequency> = classes
        .into_iter()
        .zip(counts)
        .map(|(class, count)| {
            let expected = class.class_size() as f64 / order as f64;
            let frequency = count as f64 / total as f64;
            let sigma = (expected * (1.0 - expected) / total as f64).sqrt();
            let z = (frequency - expected) / sigma;
            ClassFrequency {
                class,
                count,
                frequency,
                expected,
                sigma,
                z,
                within: z.abs() <= sigma_threshold,
            }
        })
        .collect();
    Ok(DensityReport {
        p,
        n,
        unramified: total,
        ramified_excluded: ramified,
        sigma_threshold,
        pass: rows.iter().all(|r| r.within),
        classes: rows,
    })
}
