//! Euler's constant, `zeta(n)` for `2 <= n <= 6`, and the Mertens product.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use std::sync::LazyLock;

use crate::prime_poly::primes_up_to;
use crate::{Error, Result};

/// Reference digits the runtime computation is checked against.
const GAMMA_REF: &str = "0.577215664901532860606512090082";
const ZETA_REF: [&str; 5] = [
    "1.644934066848226436472415166646",
    "1.202056903159594285399738161511",
    "1.082323233711138191516003696541",
    "1.036927755143369926331365486457",
    "1.017343061984449139714517929790",
];

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_16`.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

#[derive(Debug, Clone, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    /// `zeta(n)` at index `n - 2`.
    pub zeta_values: [f64; 5],
    /// Decimal digits guaranteed by the reference check.
    pub precision: u32,
}

impl Constants {
    fn compute() -> Self {
        let c = Constants {
            euler_gamma: gamma_euler_maclaurin(),
            zeta_values: [2u32, 3, 4, 5, 6].map(zeta_euler_maclaurin),
            precision: 13,
        };
        let tol = 10f64.powi(-(c.precision as i32));
        let check = |name: &str, got: f64, reference: &str| {
            let want: f64 = reference.parse().unwrap();
            assert!(
                (got - want).abs() <= tol * want.abs(),
                "constant {name} = {got:.17} disagrees with reference {reference}"
            );
        };
        check("gamma", c.euler_gamma, GAMMA_REF);
        for (i, r) in ZETA_REF.iter().enumerate() {
            check(&format!("zeta({})", i + 2), c.zeta_values[i], r);
        }
        c
    }

    pub fn zeta(&self, n: u32) -> Result<f64> {
        if !(2..=6).contains(&n) {
            return Err(Error::OutOfRange(format!(
                "zeta({n}); tabulated for 2 <= n <= 6"
            )));
        }
        Ok(self.zeta_values[(n - 2) as usize])
    }
}

static CONSTANTS: LazyLock<Constants> = LazyLock::new(Constants::compute);

pub fn constants() -> &'static Constants {
    &CONSTANTS
}

pub fn euler_gamma() -> f64 {
    CONSTANTS.euler_gamma
}

pub fn zeta_value(n: u32) -> Result<f64> {
    CONSTANTS.zeta(n)
}

/// `H_N - ln N - 1/(2N) + sum_k B_{2k} / (2k N^{2k})`.
fn gamma_euler_maclaurin() -> f64 {
    const N: u32 = 20;
    let nf = N as f64;
    let mut acc = 0.0;
    for k in (1..=N).rev() {
        acc += 1.0 / k as f64;
    }
    acc -= nf.ln() + 0.5 / nf;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_k = 2 * (k as i32 + 1);
        acc += b / (two_k as f64 * nf.powi(two_k));
    }
    acc
}

/// Partial sum below `N` plus the Euler-Maclaurin tail at `N`.
fn zeta_euler_maclaurin(s: u32) -> f64 {
    const N: u32 = 12;
    let sf = s as f64;
    let nf = N as f64;
    let mut tail = nf.powf(1.0 - sf) / (sf - 1.0) + 0.5 * nf.powf(-sf);
    // B_{2j}/(2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
    let mut rising = sf;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let j = j as i32 + 1;
        if j > 1 {
            rising *= (sf + 2.0 * j as f64 - 3.0) * (sf + 2.0 * j as f64 - 2.0);
            fact *= (2 * j - 1) as f64 * (2 * j) as f64;
        }
        tail += b / fact * rising * nf.powf(-sf - 2.0 * j as f64 + 1.0);
    }
    let mut head = 0.0;
    for k in (1..N).rev() {
        head += (k as f64).powf(-sf);
    }
    head + tail
}

/// `prod_{p <= y} (1 - 1/p)^{-1}`, formed exactly as `prod p / prod (p - 1)`
/// and rounded once.
pub fn mertens_product(y: f64) -> Result<f64> {
    if !(y >= 3.0) {
        return Err(Error::OutOfRange(format!(
            "mertens_product needs y >= 3, got {y}"
        )));
    }
    let primes = primes_up_to(y);
    let num = product_tree(primes.iter().map(|&p| BigUint::from(p)).collect());
    let den = product_tree(primes.iter().map(|&p| BigUint::from(p - 1)).collect());
    Ok(big_ratio_to_f64(&num, &den))
}

fn product_tree(mut v: Vec<BigUint>) -> BigUint {
    if v.is_empty() {
        return BigUint::one();
    }
    while v.len() > 1 {
        v = v
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    v.pop().unwrap()
}

/// `num / den` to double precision for arbitrarily large operands.
pub(crate) fn big_ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    let keep = 128u64;
    let nb = num.bits();
    let db = den.bits();
    let ns = nb.saturating_sub(keep);
    let ds = db.saturating_sub(keep);
    let n_top = (num >> ns).to_f64().unwrap();
    let d_top = (den >> ds).to_f64().unwrap();
    let shift = ns as i64 - ds as i64;
    n_top / d_top * 2f64.powi(shift as i32)
}
