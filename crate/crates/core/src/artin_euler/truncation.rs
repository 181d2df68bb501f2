use serde::{Deserialize, Serialize};

use super::group::trace_on_degrees;
use super::local_factor::log_local_factor;
use crate::field_catalog::{frobenius_class, NumberFieldRecord};
use crate::numeric::CompensatedSum;
use crate::prime_poly::primes_below;
use crate::{Error, Result};

/// Exponent of `log |D|` in the default truncation height.
pub const DEFAULT_HEIGHT_EXPONENT: f64 = 2.5;
pub const MIN_HEIGHT: f64 = 10.0;

/// How far to run the Euler product: a fixed `x`, or `(log |D|)^{2.5}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum TruncationHeight {
    Auto,
    Fixed(f64),
}

impl TruncationHeight {
    pub fn resolve(self, abs_disc: f64) -> f64 {
        match self {
            TruncationHeight::Fixed(x) => x,
            TruncationHeight::Auto => default_height(abs_disc),
        }
    }
}

impl std::str::FromStr for TruncationHeight {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(TruncationHeight::Auto);
        }
        s.parse::<f64>()
            .map(TruncationHeight::Fixed)
            .map_err(|_| format!("expected a number or \"auto\", got {s:?}"))
    }
}

impl TryFrom<String> for TruncationHeight {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<TruncationHeight> for String {
    fn from(h: TruncationHeight) -> String {
        h.to_string()
    }
}

impl std::fmt::Display for TruncationHeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TruncationHeight::Auto => write!(f, "auto"),
            TruncationHeight::Fixed(x) => write!(f, "{x}"),
        }
    }
}

/// `(log |D|)^{2.5}`, floored at 10.
pub fn default_height(abs_disc: f64) -> f64 {
    abs_disc.ln().powf(DEFAULT_HEIGHT_EXPONENT).max(MIN_HEIGHT)
}

/// A truncated value of `L(1, rho)` with its tail-model error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedEstimate {
    pub value: f64,
    pub log_value: f64,
    pub truncation_height: f64,
    /// `2d / log x`, the bound on `d * sum_{p<x} |A_p|`.
    pub heuristic_error: f64,
    pub d: u32,
    pub ramified_primes_used: Vec<u64>,
    /// Ramified primes where the polynomial index may distort the factor.
    pub index_warning_primes: Vec<u64>,
}

pub fn heuristic_error(d: u32, x: f64) -> f64 {
    2.0 * d as f64 / x.ln()
}

fn check_inputs(field: &NumberFieldRecord, x: f64) -> Result<u32> {
    if !(x >= MIN_HEIGHT) {
        return Err(Error::OutOfRange(format!(
            "truncation height x = {x}; need x >= 10"
        )));
    }
    let n = field.degree();
    if !(2..=5).contains(&n) {
        return Err(Error::UnsupportedDegree(n as u32));
    }
    Ok(n as u32 - 1)
}

/// `prod_{p < x} prod_i (1 - alpha_i(p)/p)^{-1}` from the Frobenius data of
/// `field`. Ramified primes use the degrees of the squarefree part.
pub fn truncated_product_l1(field: &NumberFieldRecord, x: f64) -> Result<TruncatedEstimate> {
    let d = check_inputs(field, x)?;
    let mut log = CompensatedSum::new();
    let mut ramified = Vec::new();
    let mut warned = Vec::new();
    for p in primes_below(x) {
        let obs = frobenius_class(field, p)?;
        if obs.class.is_ramified() {
            ramified.push(p);
            if obs.index_warning {
                warned.push(p);
            }
        }
        log.add(log_local_factor(obs.class.degrees(), p));
    }
    if !warned.is_empty() {
        log::warn!(
            "{}: ramified primes {:?} may divide the polynomial index; factors use squarefree-part degrees",
            field.poly,
            warned
        );
    }
    Ok(estimate_from_log(log.value(), x, d, ramified, warned))
}

/// `exp(sum_{p^k < x} a(p^k) / (k p^k))`, the prime-power sum of the
/// logarithm truncated at `x`.
pub fn log_sum_l1(field: &NumberFieldRecord, x: f64) -> Result<TruncatedEstimate> {
    let d = check_inputs(field, x)?;
    let mut log = CompensatedSum::new();
    let mut ramified = Vec::new();
    let mut warned = Vec::new();
    for p in primes_below(x) {
        let obs = frobenius_class(field, p)?;
        if obs.class.is_ramified() {
            ramified.push(p);
            if obs.index_warning {
                warned.push(p);
            }
        }
        let pf = p as f64;
        let mut pk = pf;
        let mut k = 1u32;
        while pk < x {
            let a = trace_on_degrees(obs.class.degrees(), k);
            if a != 0 {
                log.add(a as f64 / (k as f64 * pk));
            }
            k += 1;
            pk *= pf;
        }
    }
    Ok(estimate_from_log(log.value(), x, d, ramified, warned))
}

pub(crate) fn estimate_from_log(
    log_value: f64,
    x: f64,
    d: u32,
    ramified: Vec<u64>,
    warned: Vec<u64>,
) -> TruncatedEstimate {
    TruncatedEstimate {
        value: log_value.exp(),
        log_value,
        truncation_height: x,
        heuristic_error: heuristic_error(d, x),
        d,
        ramified_primes_used: ramified,
        index_warning_primes: warned,
    }
}

/// Products over `p < x` of the lower and upper local envelopes
/// `(1-1/p)(1-p^{-d-1})^{-1}` and `(1-1/p)^{-d}`.
pub fn envelope_products(d: u32, x: f64) -> (f64, f64) {
    let full = [d + 1];
    let ones = vec![1u32; d as usize + 1];
    let mut lo = CompensatedSum::new();
    let mut hi = CompensatedSum::new();
    for p in primes_below(x) {
        lo.add(log_local_factor(&full, p));
        hi.add(log_local_factor(&ones, p));
    }
    (lo.value().exp(), hi.value().exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_poly::IntPolynomial;

    fn field(c: &[i64]) -> NumberFieldRecord {
        NumberFieldRecord::from_polynomial(IntPolynomial::new(c.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn gaussian_field_approaches_pi_over_four() {
        let est = truncated_product_l1(&field(&[1, 0, 1]), 1e5).unwrap();
        let target = std::f64::consts::FRAC_PI_4;
        assert!((est.value / target - 1.0).abs() < 0.05);
        assert_eq!(est.ramified_primes_used, vec![2]);
        assert_eq!(est.d, 1);
        let logsum = log_sum_l1(&field(&[1, 0, 1]), 1e5).unwrap();
        assert!((est.log_value - logsum.log_value).abs() <= 2.0 / 1e5f64.ln());
    }

    #[test]
    fn heuristic_error_scales_with_log_height() {
        let f = field(&[-1, -1, 0, 1]);
        let a = truncated_product_l1(&f, 10.0).unwrap();
        let b = truncated_product_l1(&f, 1e4).unwrap();
        assert!((a.heuristic_error - 4.0 / 10f64.ln()).abs() < 1e-15);
        assert!((b.heuristic_error * 4.0 - a.heuristic_error).abs() < 1e-14);
    }

    #[test]
    fn extending_the_product_moves_by_at_most_the_envelope() {
        let f = field(&[-1, -1, 0, 1]);
        let a = truncated_product_l1(&f, 1e3).unwrap();
        let b = truncated_product_l1(&f, 3e3).unwrap();
        let mut budget = 0.0;
        for p in crate::prime_poly::primes_between(999.0, 3e3) {
            let lo = log_local_factor(&[3], p).abs();
            let hi = log_local_factor(&[1, 1, 1], p).abs();
            budget += lo.max(hi);
        }
        assert!((b.log_value - a.log_value).abs() <= budget);
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = field(&[-1, -1, 0, 1]);
        assert!(truncated_product_l1(&f, 5.0).is_err());
        assert!(log_sum_l1(&f, f64::NAN).is_err());
    }

    #[test]
    fn height_parsing() {
        assert_eq!(
            "auto".parse::<TruncationHeight>().unwrap(),
            TruncationHeight::Auto
        );
        assert_eq!(
            "1e4".parse::<TruncationHeight>().unwrap(),
            TruncationHeight::Fixed(1e4)
        );
        assert!("ten".parse::<TruncationHeight>().is_err());
        assert_eq!(default_height(4.0), 10.0);
        assert!((default_height(1e6) - 1e6f64.ln().powf(2.5)).abs() < 1e-9);
    }
}
