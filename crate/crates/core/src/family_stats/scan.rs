use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin_euler::{
    envelope_products, predicted_target, truncated_product_l1, TargetKind, TruncationHeight,
};
use crate::field_catalog::NumberFieldRecord;
use crate::{Error, Result};

pub const HISTOGRAM_BINS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub poly: String,
    pub disc: i128,
    pub signature: (usize, usize),
    pub truncation_height: f64,
    pub estimate: f64,
    pub heuristic_error: f64,
    /// `None` when the target is undefined (degree 2, or `|D|` too small).
    pub ratio_to_max_target: Option<f64>,
    pub ratio_to_min_target: Option<f64>,
    pub index_warned: bool,
    pub within_envelope: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub degree: usize,
    pub d: u32,
    pub height: TruncationHeight,
    pub rows: Vec<ScanRow>,
    /// Row index of the largest and smallest estimate (first on ties).
    pub argmax: usize,
    pub argmin: usize,
    pub max_estimate: f64,
    pub min_estimate: f64,
    pub mean_estimate: f64,
    pub histogram: Vec<HistogramBin>,
    pub index_warned_count: usize,
    pub envelope_violations: usize,
}

pub(crate) fn common_degree(catalog: &[NumberFieldRecord]) -> Result<usize> {
    let first = catalog.first().ok_or(Error::EmptyFamily)?.degree();
    match catalog.iter().find(|r| r.degree() != first) {
        Some(r) => Err(Error::MixedDegrees(first, r.degree())),
        None => Ok(first),
    }
}

fn envelope_cache(d: u32, heights: &[f64]) -> BTreeMap<u64, (f64, f64)> {
    let mut keys: Vec<u64> = heights.iter().map(|x| x.to_bits()).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_par_iter()
        .map(|k| (k, envelope_products(d, f64::from_bits(k))))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Log-spaced bins over `[lo, hi]`.
fn histogram(values: &[f64], lo: f64, hi: f64) -> Vec<HistogramBin> {
    let (ll, lh) = (lo.ln(), hi.ln());
    let step = (lh - ll) / HISTOGRAM_BINS as f64;
    let mut bins: Vec<HistogramBin> = (0..HISTOGRAM_BINS)
        .map(|i| HistogramBin {
            lower: (ll + step * i as f64).exp(),
            upper: (ll + step * (i + 1) as f64).exp(),
            count: 0,
        })
        .collect();
    for v in values {
        let i = ((v.ln() - ll) / step).floor();
        let i = if i.is_finite() {
            i.clamp(0.0, (HISTOGRAM_BINS - 1) as f64) as usize
        } else {
            0
        };
        bins[i].count += 1;
    }
    bins
}

/// Truncated `L(1, rho)` for every record of a single-degree catalog.
pub fn scan_residues(
    catalog: &[NumberFieldRecord],
    height: TruncationHeight,
) -> Result<ScanReport> {
    let degree = common_degree(catalog)?;
    let d = degree as u32 - 1;
    let heights: Vec<f64> = catalog
        .iter()
        .map(|r| height.resolve(r.abs_disc()))
        .collect();
    let envelopes = envelope_cache(d, &heights);
    let rows: Vec<ScanRow> = catalog
        .par_iter()
        .zip(heights.par_iter())
        .map(|(r, &x)| {
            let est = truncated_product_l1(r, x)?;
            let (lo, hi) = envelopes[&x.to_bits()];
            let slack = 1e-12;
            let ratio = |kind| {
                predicted_target(d, kind, r.abs_disc())
                    .ok()
                    .map(|t| est.value / t)
            };
            Ok(ScanRow {
                poly: r.poly.to_string(),
                disc: r.disc,
                signature: r.signature,
                truncation_height: x,
                estimate: est.value,
                heuristic_error: est.heuristic_error,
                ratio_to_max_target: ratio(TargetKind::Max),
                ratio_to_min_target: ratio(TargetKind::Min),
                index_warned: !est.index_warning_primes.is_empty(),
                within_envelope: est.value >= lo * (1.0 - slack) && est.value <= hi * (1.0 + slack),
            })
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = rows.iter().map(|r| r.estimate).collect();
    let mut argmax = 0;
    let mut argmin = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[argmax] {
            argmax = i;
        }
        if *v < values[argmin] {
            argmin = i;
        }
    }
    let lo = envelopes
        .values()
        .map(|e| e.0)
        .fold(f64::INFINITY, f64::min);
    let hi = envelopes.values().map(|e| e.1).fold(0.0, f64::max);
    Ok(ScanReport {
        degree,
        d,
        height,
        argmax,
        argmin,
        max_estimate: values[argmax],
        min_estimate: values[argmin],
        mean_estimate: crate::numeric::pairwise_sum(&values) / values.len() as f64,
        histogram: histogram(&values, lo, hi),
        index_warned_count: rows.iter().filter(|r| r.index_warned).count(),
        envelope_violations: rows.iter().filter(|r| !r.within_envelope).count(),
        rows,
    })
}
