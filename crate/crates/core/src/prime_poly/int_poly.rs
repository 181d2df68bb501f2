use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Monic polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    /// `coeffs` runs from the constant term up to the leading 1.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient must be 1, got {}",
                coeffs.last().unwrap()
            )));
        }
        Ok(IntPolynomial { coeffs })
    }

    /// Build from the non-leading coefficients; the leading 1 is implied.
    pub fn from_lower(lower: &[i64]) -> Result<Self> {
        let mut coeffs = lower.to_vec();
        coeffs.push(1);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i64)
            .collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * x + BigInt::from(c))
    }

    /// True if some integer (hence rational, f being monic) is a root.
    pub fn has_rational_root(&self) -> bool {
        let c0 = self.coeffs[0];
        if c0 == 0 {
            return true;
        }
        let bound = c0.unsigned_abs();
        let mut d = 1u64;
        while d <= bound {
            if bound.is_multiple_of(d) {
                for cand in [d as i64, -(d as i64)] {
                    if self.eval(&BigInt::from(cand)).is_zero() {
                        return true;
                    }
                }
            }
            d += 1;
        }
        false
    }

    /// Exact discriminant `(-1)^{n(n-1)/2} Res(f, f')` for monic `f`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        if n == 1 {
            return BigInt::one();
        }
        let res = resultant(&self.coeffs, &self.derivative());
        if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        }
    }
}

impl TryFrom<Vec<i64>> for IntPolynomial {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        IntPolynomial::new(v)
    }
}

impl From<IntPolynomial> for Vec<i64> {
    fn from(p: IntPolynomial) -> Vec<i64> {
        p.coeffs
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let coef = if mag == 1 && i > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            write!(f, "{sign}{coef}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// Resultant of two integer polynomials (low-to-high coefficients) as the
/// determinant of their Sylvester matrix.
pub fn resultant(f: &[i64], g: &[i64]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (k, &c) in f.iter().rev().enumerate() {
            mat[row][row + k] = BigInt::from(c);
        }
    }
    for row in 0..m {
        for (k, &c) in g.iter().rev().enumerate() {
            mat[n + row][row + k] = BigInt::from(c);
        }
    }
    bareiss_determinant(mat)
}

/// Fraction-free Gaussian elimination.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact square test for integers (negative numbers are never squares).
pub fn is_perfect_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &(&r * &r) == v
}
