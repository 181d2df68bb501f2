use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::group::trace_on_degrees;
use crate::prime_poly::{is_prime, CycleType};
use crate::{Error, Result};

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow_big(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

pub(crate) fn serialize_rational<S: Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// An exact local factor `prod_i (1 - alpha_i / p)^{-1}` of `L(s, rho)` at `s = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EulerFactorValue {
    #[serde(serialize_with = "serialize_rational")]
    pub value: BigRational,
    pub p: u64,
    pub cycle_type: CycleType,
}

impl EulerFactorValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `prod_j (1 - p^{-d_j})^{-1}`.
pub fn zeta_local_factor(degrees: &[u32], p: u64) -> Result<BigRational> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::OutOfRange(
            "degree list must be nonempty and positive".into(),
        ));
    }
    check_prime(p)?;
    Ok(degrees.iter().fold(BigRational::one(), |acc, &d| {
        let q = pow_big(p, d);
        acc * ratio(q.clone(), q - 1)
    }))
}

/// `(1 - 1/p) prod_j (1 - p^{-d_j})^{-1}` for any (possibly partial) list of
/// factor degrees.
pub fn l_rho_factor_on_degrees(degrees: &[u32], p: u64) -> Result<BigRational> {
    Ok(ratio(p - 1, p) * zeta_local_factor(degrees, p)?)
}

pub fn l_rho_local_factor(c: &CycleType, p: u64) -> Result<EulerFactorValue> {
    super::group::a_rho(c)?;
    Ok(EulerFactorValue {
        value: l_rho_factor_on_degrees(c.parts(), p)?,
        p,
        cycle_type: c.clone(),
    })
}

/// The envelope `(1-1/p)(1-p^{-d-1})^{-1} <= factor <= (1-1/p)^{-d}`.
pub fn factor_bounds(p: u64, d: u32) -> Result<(BigRational, BigRational)> {
    if !(1..=4).contains(&d) {
        return Err(Error::OutOfRange(format!("d = {d}; need 1 <= d <= 4")));
    }
    check_prime(p)?;
    let lower = l_rho_factor_on_degrees(&[d + 1], p)?;
    let upper = num_traits::pow(ratio(p, p - 1), d as usize);
    Ok((lower, upper))
}

/// Natural log of the local factor in floating point, via `ln_1p` so that
/// large `p` keep full relative precision.
pub fn log_local_factor(degrees: &[u32], p: u64) -> f64 {
    let inv = 1.0 / p as f64;
    let mut acc = (-inv).ln_1p();
    for &d in degrees {
        acc -= (-inv.powi(d as i32)).ln_1p();
    }
    acc
}

/// Outcome of comparing the closed-form factor with the exponential of the
/// truncated character power-sum series `sum_{k <= K} a(p^k) / (k p^k)`.
#[derive(Debug, Clone, Serialize)]
pub struct PowerSumCheck {
    pub p: u64,
    pub degrees: Vec<u32>,
    pub terms: u32,
    /// The relative tolerance `p^{-terms}`, as a float for display.
    pub tolerance: f64,
    /// `|exp(series) / closed - 1|` upper bound, as a float for display.
    pub deviation_bound: f64,
    pub within: bool,
}

/// Bracket `exp(s)` for rational `s` between two rationals using a Taylor
/// polynomial of degree `n` and the Lagrange remainder.
pub fn exp_bracket(s: &BigRational, n: u32) -> (BigRational, BigRational) {
    let a = s.numer().clone();
    let b = s.denom().clone();
    // Horner: 1 + s/1 (1 + s/2 (1 + ... (1 + s/n)))
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in (1..=n).rev() {
        let jb = &b * BigInt::from(j);
        let new_num = &jb * &den + &a * &num;
        den *= &jb;
        num = new_num;
    }
    let taylor = BigRational::new(num, den);
    let abs_s = s.abs();
    let ceil = abs_s.ceil().to_integer().to_u32().unwrap_or(u32::MAX);
    let fact: BigInt = (1..=n + 1).map(BigInt::from).product();
    let remainder = num_traits::pow(abs_s, (n + 1) as usize) / BigRational::from_integer(fact)
        * BigRational::from_integer(num_traits::pow(BigInt::from(3), ceil as usize));
    (&taylor - &remainder, taylor + remainder)
}

/// Smallest Taylor degree whose remainder bound sits well below `p^{-terms}`.
fn taylor_degree(s: f64, terms: u32, p: u64) -> u32 {
    let s = s.abs().max(1e-300);
    let target = -(terms as f64) * (p as f64).ln() - 8.0;
    let ceil_term = s.ceil() * 3f64.ln();
    let mut log_rem = ceil_term;
    for n in 0..200u32 {
        // log of |s|^{n+1} 3^{ceil s} / (n+1)!
        log_rem += s.ln() - ((n + 1) as f64).ln();
        if log_rem < target {
            return n.max(1);
        }
    }
    200
}

/// Check the factor identity at `p` for a factor-degree list, in exact
/// arithmetic: the closed form must agree with the exponential of the
/// power-sum series truncated at `terms`, up to a relative `p^{-terms}`.
pub fn power_sum_identity(degrees: &[u32], p: u64, terms: u32) -> Result<PowerSumCheck> {
    let closed = l_rho_factor_on_degrees(degrees, p)?;
    let mut series = BigRational::zero();
    for k in 1..=terms {
        let a = trace_on_degrees(degrees, k);
        if a != 0 {
            series += ratio(a, BigInt::from(k) * pow_big(p, k));
        }
    }
    let (lo, hi) = exp_bracket(
        &series,
        taylor_degree(series.to_f64().unwrap_or(0.0), terms, p),
    );
    let tol = ratio(1, pow_big(p, terms));
    let one = BigRational::one();
    let within = lo >= &closed * (&one - &tol) && hi <= &closed * (&one + &tol);
    let dev_hi = (&hi / &closed - &one).abs();
    let dev_lo = (&lo / &closed - &one).abs();
    let dev = if dev_hi > dev_lo { dev_hi } else { dev_lo };
    Ok(PowerSumCheck {
        p,
        degrees: degrees.to_vec(),
        terms,
        tolerance: tol.to_f64().unwrap_or(0.0),
        deviation_bound: dev.to_f64().unwrap_or(f64::INFINITY),
        within,
    })
}
