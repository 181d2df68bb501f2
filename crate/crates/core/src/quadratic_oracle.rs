//! Exact `L(1, chi_D)` for imaginary quadratic fields from class numbers.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin_euler::grh_window;
use crate::numeric::CompensatedSum;
use crate::prime_poly::primes_below;
use crate::{Error, Result};

/// Relative error allowed between the exact value and the product at `x = 1e5`.
pub const TRUNCATION_TOLERANCE: f64 = 0.05;
pub const MIN_COMPARISON_HEIGHT: f64 = 1000.0;

fn is_squarefree(mut m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= m {
        if m.is_multiple_of(q) {
            m /= q;
            if m.is_multiple_of(q) {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// Discriminant of a quadratic field: `D = 1 mod 4` squarefree, or `D = 4m`
/// with `m = 2, 3 mod 4` squarefree.
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Jacobi symbol `(a / m)` for odd positive `m`.
fn jacobi(a: i64, m: u64) -> i8 {
    debug_assert!(m % 2 == 1);
    let mut a = a.rem_euclid(m as i64) as u64;
    let mut m = m;
    let mut s = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            s = -s;
        }
        a %= m;
    }
    if m == 1 {
        s
    } else {
        0
    }
}

/// The Kronecker symbol `(d / n)` for `n >= 0`.
fn kronecker_unchecked(d: i64, n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let v = n.trailing_zeros();
    let odd = n >> v;
    let two = if v == 0 {
        1
    } else {
        match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => {
                if v.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            _ => 0,
        }
    };
    two * jacobi(d, odd)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct FundamentalDiscriminant(i64);

impl FundamentalDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::OutOfRange(format!(
                "D = {d}; only negative discriminants are supported"
            )));
        }
        if !is_fundamental(d) {
            return Err(Error::Precondition(format!(
                "{d} is not a fundamental discriminant"
            )));
        }
        Ok(FundamentalDiscriminant(d))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    pub fn chi(self, n: u64) -> i8 {
        kronecker_unchecked(self.0, n)
    }

    /// Number of roots of unity in the field.
    pub fn units(self) -> u32 {
        match self.0 {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

impl TryFrom<i64> for FundamentalDiscriminant {
    type Error = Error;

    fn try_from(d: i64) -> Result<Self> {
        Self::new(d)
    }
}

impl From<FundamentalDiscriminant> for i64 {
    fn from(d: FundamentalDiscriminant) -> i64 {
        d.0
    }
}

/// `chi_D(n)`; `D` must be a negative fundamental discriminant.
pub fn kronecker_chi(d: i64, n: u64) -> Result<i8> {
    Ok(FundamentalDiscriminant::new(d)?.chi(n))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassNumberResult {
    pub d: i64,
    pub h: u64,
    pub w: u32,
    pub exact_l1: f64,
}

/// Reduced forms `(a, b, c)` with `b^2 - 4ac = D`, `|b| <= a <= c` and
/// `b >= 0` when `|b| = a` or `a = c`.
pub fn reduced_forms(d: FundamentalDiscriminant) -> Vec<(i64, i64, i64)> {
    let dd = d.get();
    let amax = ((d.abs() / 3) as f64).sqrt() as i64 + 1;
    (1..=amax)
        .into_par_iter()
        .flat_map_iter(|a| {
            (-a + 1..=a).filter_map(move |b| {
                let num = b * b - dd;
                if num % (4 * a) != 0 {
                    return None;
                }
                let c = num / (4 * a);
                if c < a || (a == c && b < 0) {
                    return None;
                }
                Some((a, b, c))
            })
        })
        .collect()
}

pub fn class_number_imaginary(d: i64) -> Result<ClassNumberResult> {
    let fd = FundamentalDiscriminant::new(d)?;
    let h = reduced_forms(fd).len() as u64;
    let w = fd.units();
    Ok(ClassNumberResult {
        d,
        h,
        w,
        exact_l1: 2.0 * PI * h as f64 / (w as f64 * (fd.abs() as f64).sqrt()),
    })
}

/// `h = -(w / 2|D|) sum_{a=1}^{|D|-1} chi_D(a) a`, exact in integers.
pub fn class_number_by_character_sum(d: i64) -> Result<u64> {
    let fd = FundamentalDiscriminant::new(d)?;
    let n = fd.abs();
    let s: i64 = (1..n).map(|a| fd.chi(a) as i64 * a as i64).sum();
    let num = -(fd.units() as i64) * s;
    let den = 2 * n as i64;
    if num <= 0 || num % den != 0 {
        return Err(Error::Precondition(format!(
            "character sum {s} for D = {d} gives no class number"
        )));
    }
    Ok((num / den) as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationComparison {
    pub d: i64,
    pub x: f64,
    pub h: u64,
    pub exact: f64,
    pub truncated: f64,
    pub relative_error: f64,
    /// `2 / log x`.
    pub error_budget: f64,
    /// Whether `exact` lies in the GRH window; absent for `|D| < 16`.
    pub grh_window_ok: Option<bool>,
}

/// Truncated product `prod_{p<x} (1 - chi_D(p)/p)^{-1}` from a prime list.
pub fn truncated_l1_chi(d: FundamentalDiscriminant, primes: &[u64]) -> f64 {
    let mut log = CompensatedSum::new();
    for &p in primes {
        let c = d.chi(p);
        if c != 0 {
            log.add(-(-(c as f64) / p as f64).ln_1p());
        }
    }
    log.value().exp()
}

fn grh_soft_check(res: &ClassNumberResult) -> Option<bool> {
    let abs = res.d.unsigned_abs() as f64;
    if abs < 16.0 {
        return None;
    }
    let (lo, hi) = grh_window(1, abs).ok()?;
    let ok = res.exact_l1 >= lo && res.exact_l1 <= hi;
    if !ok {
        log::info!(
            "D = {}: L(1) = {} outside [{lo}, {hi}] with o(1) dropped",
            res.d,
            res.exact_l1
        );
    }
    Some(ok)
}

pub fn compare_truncation_with_primes(
    d: i64,
    x: f64,
    primes: &[u64],
) -> Result<TruncationComparison> {
    if !(x >= MIN_COMPARISON_HEIGHT) {
        return Err(Error::OutOfRange(format!(
            "x = {x}; need x >= {MIN_COMPARISON_HEIGHT}"
        )));
    }
    let res = class_number_imaginary(d)?;
    let fd = FundamentalDiscriminant::new(d)?;
    let end = primes.partition_point(|&p| (p as f64) < x);
    let truncated = truncated_l1_chi(fd, &primes[..end]);
    Ok(TruncationComparison {
        d,
        x,
        h: res.h,
        exact: res.exact_l1,
        truncated,
        relative_error: (truncated / res.exact_l1 - 1.0).abs(),
        error_budget: 2.0 / x.ln(),
        grh_window_ok: grh_soft_check(&res),
    })
}

pub fn compare_truncation(d: i64, x: f64) -> Result<TruncationComparison> {
    compare_truncation_with_primes(d, x, &primes_below(x))
}

/// Fundamental discriminants in `[dmin, -3]`, ascending.
pub fn fundamental_range(dmin: i64) -> Vec<i64> {
    (dmin..=-3).filter(|&d| is_fundamental(d)).collect()
}
